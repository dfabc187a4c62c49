#ifndef TWOCENTERS_IO_HPP
#define TWOCENTERS_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "twocenters/bifurcation.hpp"
#include "twocenters/dynamics.hpp"
#include "twocenters/homoclinic.hpp"
#include "twocenters/knots.hpp"
#include "twocenters/quadrature.hpp"

namespace twocenters {

std::string region_name(Region region);
std::string curve_name(Curve curve);
std::string orbit_kind_name(OrbitKind kind);
std::string atom_name(Atom atom);
std::string component_name(Component component);

/// Grid classification of a (g, c) window.
struct DiagramGrid {
    double mu;
    double g_min, g_max, c_min, c_max;
    int res_g, res_c;
    std::vector<RegionLabel> labels; ///< row-major, c varying slowest
};

DiagramGrid classify_grid(const SystemParams& params, double g_min, double g_max,
                          double c_min, double c_max, int res_g, int res_c,
                          double curve_tol = 1e-9);

/// CSV rows (mu, g, c, label), one per grid cell center.
void write_diagram_csv(std::ostream& os, const DiagramGrid& grid);

/// SVG of the window: region cells color-sampled, the five critical curves
/// drawn parametrically over their validity windows.
void write_diagram_svg(std::ostream& os, const DiagramGrid& grid, const SystemParams& params,
                       int size = 1000);

/// JSON lines, one sample per line with fields
/// s, lambda, nu_wrapped, nu_unwrapped, p_lambda, p_nu, Q, Q_lambda.
void write_trajectory_jsonl(std::ostream& os, const Trajectory& traj);

/// SVG of the Cartesian projection of a trajectory.
void write_orbit_svg(std::ostream& os, const Trajectory& traj, int size = 1000);

/// CSV rows (k, l, c, g, residual).
void write_family_csv(std::ostream& os, const TorusFamily& family);

nlohmann::json molecule_to_json(const MoleculeGraph& graph);
std::string molecule_to_text(const MoleculeGraph& graph);

nlohmann::json homoclinic_report_to_json(const HomoclinicReport& report);
nlohmann::json knot_certificate_to_json(const KnotCertificate& cert);
nlohmann::json rotation_to_json(const RotationNumber& rot);

} // namespace twocenters

#endif
