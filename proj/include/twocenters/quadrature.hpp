#ifndef TWOCENTERS_QUADRATURE_HPP
#define TWOCENTERS_QUADRATURE_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twocenters/bifurcation.hpp"
#include "twocenters/params.hpp"

namespace twocenters {

enum class Subsystem { Lambda, Nu };

enum class CellKind {
    LibrationThroughAxis, ///< cell crosses a cover branch point (lam = 0, or nu at a collision axis)
    LibrationOnArc,       ///< one-sided cell between two simple turning points
    FullRotation,         ///< nu circulates; no real turning point
};

/// One oscillation cell of a decoupled subsystem. Endpoints are in the
/// subsystem coordinate (lam or nu); for the Earth nu cell they straddle pi,
/// i.e. [arccos(eta1), 2*pi - arccos(eta1)].
struct SubsystemCell {
    Subsystem which;
    CellKind kind;
    double lo;
    double hi;
    Component component = Component::Both; ///< which arc a nu libration belongs to
    double period = -1.0; ///< full (q, p) cycle period in s; negative until computed
};

/// Turning cells of both subsystems at a regular point. Throws
/// InadmissiblePoint off the classical region and CriticalPointError on a
/// critical curve (where a cell degenerates).
std::pair<SubsystemCell, SubsystemCell> subsystem_cells(const EnergyMomentum& pt,
                                                        const SystemParams& params,
                                                        Component component);

/// Full-cycle period of one cell by adaptive Gauss-Legendre quadrature after
/// the sine substitution that removes the square-root turning singularities.
/// Throws DegenerateCell when an endpoint is a double root.
double cell_period(const SubsystemCell& cell, const EnergyMomentum& pt,
                   const SystemParams& params, double rel_tol = 1e-12);

/// Rotation number of the Liouville torus through (g, c): the ratio
/// T_lambda / T_nu of the full-cycle periods, i.e. nu cycles completed per
/// lambda cycle. A closed orbit with k nu-cycles and l lambda-cycles has
/// R = k/l.
struct RotationNumber {
    double value;
    EnergyMomentum point;
    double t_lambda;
    double t_nu;
};

RotationNumber rotation_number(const EnergyMomentum& pt, const SystemParams& params,
                               Component component = Component::Earth, double rel_tol = 1e-12);

struct FamilySample {
    double c;
    double g;
    double residual; ///< |R(g,c) - k/l| at the solved g
};

struct FamilySkip {
    double c;
    std::string reason;
};

/// The locus R(g,c) = k/l, sampled over a grid of energies.
struct TorusFamily {
    int k; ///< nu cycles
    int l; ///< lambda cycles
    std::vector<FamilySample> samples;
    std::vector<FamilySkip> skipped; ///< energies where no root exists
};

/// Solves R(g, c) = k/l in g for every c in the grid, bisecting inside the
/// component's admissible g interval. Grid points without a root are
/// recorded as skipped, never fatal. Requires gcd(k, l) = 1.
TorusFamily solve_family(int k, int l, const SystemParams& params,
                         std::span<const double> c_grid,
                         Component component = Component::Earth);

} // namespace twocenters

#endif
