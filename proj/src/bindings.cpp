#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "twocenters/errors.hpp"
#include "twocenters/homoclinic.hpp"
#include "twocenters/io.hpp"
#include "twocenters/knots.hpp"
#include "twocenters/quadrature.hpp"

namespace py = pybind11;
using namespace twocenters;

namespace {

Component component_from_name(const std::string& name) {
    if (name == "earth") return Component::Earth;
    if (name == "moon") return Component::Moon;
    if (name == "whole" || name == "both") return Component::Both;
    throw DomainError("unknown component '" + name + "'");
}

py::dict trajectory_columns(const Trajectory& traj) {
    std::vector<double> s, lam, nu_wrapped, nu_unwrapped, p_lam, p_nu, q, q_lam;
    s.reserve(traj.samples.size());
    for (const auto& sm : traj.samples) {
        s.push_back(sm.s);
        lam.push_back(sm.state.lam);
        nu_wrapped.push_back(sm.nu_wrapped);
        nu_unwrapped.push_back(sm.state.nu);
        p_lam.push_back(sm.state.p_lam);
        p_nu.push_back(sm.state.p_nu);
        q.push_back(sm.Q);
        q_lam.push_back(sm.Q_lambda);
    }
    py::dict out;
    out["s"] = std::move(s);
    out["lambda"] = std::move(lam);
    out["nu_wrapped"] = std::move(nu_wrapped);
    out["nu_unwrapped"] = std::move(nu_unwrapped);
    out["p_lambda"] = std::move(p_lam);
    out["p_nu"] = std::move(p_nu);
    out["Q"] = std::move(q);
    out["Q_lambda"] = std::move(q_lam);
    return out;
}

py::object json_loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Planar two-center problem: integral-plane classification, regularized dynamics, "
              "rotation numbers, homoclinic and torus-knot certification";

    py::register_exception<Error>(m, "TwocentersError");

    py::class_<SystemParams>(m, "SystemParams")
        .def_readonly("mu", &SystemParams::mu)
        .def_readonly("delta", &SystemParams::delta)
        .def_readonly("cJ", &SystemParams::cJ)
        .def_readonly("cE", &SystemParams::cE)
        .def_readonly("cH", &SystemParams::cH)
        .def_readonly("saddle_q1", &SystemParams::saddle_q1)
        .def_readonly("mirrored", &SystemParams::mirrored)
        .def("__repr__", [](const SystemParams& p) {
            return "SystemParams(mu=" + std::to_string(p.mu) + ", cJ=" + std::to_string(p.cJ) +
                   ", cH=" + std::to_string(p.cH) + ")";
        });

    m.def("make_params", &make_params, py::arg("mu"),
          "Derived critical constants for a mass ratio in (0, 1).");

    m.def(
        "hamiltonian",
        [](const SystemParams& params, double q1, double q2, double p1, double p2) {
            return hamiltonian_cartesian(params, {q1, q2, p1, p2});
        },
        py::arg("params"), py::arg("q1"), py::arg("q2"), py::arg("p1") = 0.0, py::arg("p2") = 0.0,
        "Total energy of a Cartesian state.");

    m.def(
        "classify",
        [](const SystemParams& params, double g, double c) {
            const RegionLabel label = classify(energy_momentum(g, c), params);
            py::dict out;
            out["kind"] = region_name(label.kind);
            out["component_hint"] = component_name(label.component_hint);
            if (label.curve) out["curve"] = curve_name(*label.curve);
            return out;
        },
        py::arg("params"), py::arg("g"), py::arg("c"),
        "Region of the integral plane at (g, c).");

    m.def(
        "solve_roots",
        [](const SystemParams& params, double g, double c) {
            const RootData roots = solve_roots(energy_momentum(g, c), params);
            py::dict out;
            out["xi_roots"] = roots.xi_roots;
            out["eta_roots"] = roots.eta_roots;
            if (roots.xi_range) {
                out["xi_range"] = py::make_tuple(roots.xi_range->lo, roots.xi_range->hi);
            } else {
                out["xi_range"] = py::none();
            }
            py::list eta_ranges;
            for (const auto& iv : roots.eta_ranges) {
                eta_ranges.append(py::make_tuple(iv.lo, iv.hi));
            }
            out["eta_ranges"] = eta_ranges;
            return out;
        },
        py::arg("params"), py::arg("g"), py::arg("c"),
        "Turning values and admissible position ranges.");

    m.def(
        "critical_orbits",
        [](const SystemParams& params, double c) {
            py::list out;
            for (const auto& orbit : critical_orbits_at_energy(c, params)) {
                py::dict entry;
                entry["kind"] = orbit_kind_name(orbit.kind);
                entry["g"] = orbit.g_at_c;
                entry["atom"] = atom_name(orbit.atom);
                out.append(entry);
            }
            return out;
        },
        py::arg("params"), py::arg("c"));

    m.def(
        "molecule",
        [](const SystemParams& params, double c) {
            py::list out;
            for (const auto& graph : molecule(c, params)) {
                out.append(json_loads(molecule_to_json(graph).dump()));
            }
            return out;
        },
        py::arg("params"), py::arg("c"),
        "Atom graphs of the energy hypersurface, one per connected component.");

    m.def(
        "rotation_number",
        [](const SystemParams& params, double g, double c, const std::string& component) {
            const RotationNumber rot =
                rotation_number(energy_momentum(g, c), params, component_from_name(component));
            py::dict out;
            out["R"] = rot.value;
            out["T_lambda"] = rot.t_lambda;
            out["T_nu"] = rot.t_nu;
            return out;
        },
        py::arg("params"), py::arg("g"), py::arg("c"), py::arg("component") = "earth");

    m.def(
        "solve_family",
        [](const SystemParams& params, int k, int l, const std::vector<double>& c_grid,
           const std::string& component) {
            const TorusFamily family =
                solve_family(k, l, params, c_grid, component_from_name(component));
            py::list samples, skipped;
            for (const auto& sm : family.samples) {
                py::dict entry;
                entry["c"] = sm.c;
                entry["g"] = sm.g;
                entry["residual"] = sm.residual;
                samples.append(entry);
            }
            for (const auto& skip : family.skipped) {
                skipped.append(py::make_tuple(skip.c, skip.reason));
            }
            py::dict out;
            out["k"] = family.k;
            out["l"] = family.l;
            out["samples"] = samples;
            out["skipped"] = skipped;
            return out;
        },
        py::arg("params"), py::arg("k"), py::arg("l"), py::arg("c_grid"),
        py::arg("component") = "earth", "Solve R(g, c) = k/l over an energy grid.");

    m.def(
        "orbit",
        [](const SystemParams& params, double g, double c, const std::string& component,
           double span, double lambda_frac, double nu_frac, int lambda_sign, int nu_sign,
           double tol) {
            PhaseChoice phase{lambda_frac, nu_frac, lambda_sign, nu_sign};
            const DoubledState y0 = initial_state(energy_momentum(g, c), params,
                                                  component_from_name(component), phase);
            IntegrateOptions opts;
            opts.tol = tol;
            return trajectory_columns(integrate(y0, params, c, span, opts));
        },
        py::arg("params"), py::arg("g"), py::arg("c"), py::arg("component") = "earth",
        py::arg("span") = 50.0, py::arg("lambda_frac") = 0.5, py::arg("nu_frac") = 0.5,
        py::arg("lambda_sign") = 1, py::arg("nu_sign") = 1, py::arg("tol") = 1e-12,
        "Integrate the regularized flow from a leaf state; returns sample columns.");

    m.def(
        "lyapunov_orbit",
        [](const SystemParams& params, double c) {
            const LyapunovOrbit orbit = lyapunov_orbit(c, params);
            py::dict out;
            out["c"] = orbit.c;
            out["g_c"] = orbit.g_c;
            out["nu_star"] = orbit.nu_star;
            out["lambda_period"] = orbit.lambda_period;
            out["trajectory"] = trajectory_columns(orbit.trajectory);
            return out;
        },
        py::arg("params"), py::arg("c"), "The unstable periodic orbit at energy c in (cJ, cH).");

    m.def(
        "collision_momenta",
        [](const SystemParams& params, double c) {
            const CollisionMomenta momenta = collision_momenta(c, params);
            py::dict out;
            out["p_lambda_sq"] = momenta.p_lambda_sq;
            out["p_nu_sq_moon"] = momenta.p_nu_sq_moon;
            out["p_nu_sq_earth"] = momenta.p_nu_sq_earth;
            return out;
        },
        py::arg("params"), py::arg("c"));

    m.def(
        "verify_homoclinic",
        [](const SystemParams& params, double c, const std::string& component, int n_orbits,
           std::uint64_t seed) {
            VerifyOptions opts;
            opts.n_orbits = n_orbits;
            opts.seed = seed;
            const HomoclinicReport report =
                verify_homoclinic(c, params, component_from_name(component), opts);
            return json_loads(homoclinic_report_to_json(report).dump());
        },
        py::arg("params"), py::arg("c"), py::arg("component") = "earth", py::arg("n_orbits") = 20,
        py::arg("seed") = 0x5eed2c3d1ULL,
        "Certify two-sided convergence of leaf orbits to the unstable orbit.");

    m.def(
        "certify_knot",
        [](const SystemParams& params, double g, double c, const std::string& component) {
            const KnotCertificate cert =
                certify_knot(energy_momentum(g, c), params, component_from_name(component));
            return json_loads(knot_certificate_to_json(cert).dump());
        },
        py::arg("params"), py::arg("g"), py::arg("c"), py::arg("component") = "earth",
        "Winding counts and closure residual of the periodic orbit through (g, c).");
}
