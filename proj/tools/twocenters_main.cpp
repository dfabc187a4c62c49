#include <cstdlib>
#include <cxxabi.h>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twocenters/errors.hpp"
#include "twocenters/io.hpp"
#include "twocenters/params.hpp"
#include "twocenters/quadrature.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace twocenters;

namespace {

struct GlobalConfig {
    std::string out_dir = ".";
    std::uint64_t seed = 0x7c2025ULL;
    double tol = 1e-12;       // integrator
    double quad_tol = 1e-12;  // period quadrature, relative
    double class_eps = 1e-9;  // on-curve classification distance
};

fs::path resolve_out(const GlobalConfig& cfg) {
    // the environment override wins over the flag
    if (const char* env = std::getenv("TWOCENTERS_OUT")) return fs::path(env);
    return fs::path(cfg.out_dir);
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << content;
    if (!os.good()) throw Error("short write to " + path.string());
    std::cerr << "wrote " << path.string() << '\n';
}

Component parse_component(const std::string& name) {
    if (name == "earth") return Component::Earth;
    if (name == "moon") return Component::Moon;
    if (name == "whole" || name == "both") return Component::Both;
    throw DomainError("unknown component '" + name + "'");
}

int fail_with_json(const Error& err) {
    int status = 0;
    std::unique_ptr<char, void (*)(void*)> name(
        abi::__cxa_demangle(typeid(err).name(), nullptr, nullptr, &status), std::free);
    json obj = {{"error", status == 0 ? name.get() : typeid(err).name()},
                {"message", err.what()}};
    std::cerr << obj.dump() << '\n';
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral-plane classification, regularized dynamics, rotation numbers and "
                 "certification runs for the planar two-center problem"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalConfig cfg;
    app.add_option("--out", cfg.out_dir, "output directory (env TWOCENTERS_OUT overrides)");
    app.add_option("--seed", cfg.seed, "seed for randomized phases");
    app.add_option("--tol", cfg.tol, "integrator tolerance");
    app.add_option("--quad-tol", cfg.quad_tol, "relative tolerance of the period quadrature");
    app.add_option("--class-eps", cfg.class_eps, "on-curve classification distance");

    // ---- diagram ----
    auto* cmd_diagram = app.add_subcommand("diagram", "classify a (g,c) window to CSV and SVG");
    double mu = 0.25, g_min = -3.0, g_max = 3.0, c_min = -3.0, c_max = -0.05;
    int resolution = 600;
    std::string format = "both";
    cmd_diagram->add_option("--mu", mu, "mass ratio")->required();
    cmd_diagram->add_option("--g-min", g_min, "window lower g");
    cmd_diagram->add_option("--g-max", g_max, "window upper g");
    cmd_diagram->add_option("--c-min", c_min, "window lower c");
    cmd_diagram->add_option("--c-max", c_max, "window upper c (< 0)");
    cmd_diagram->add_option("--resolution", resolution, "grid cells per axis");
    cmd_diagram->add_option("--format", format, "csv, svg or both")
        ->check(CLI::IsMember({"csv", "svg", "both"}));

    // ---- orbit ----
    auto* cmd_orbit = app.add_subcommand("orbit", "integrate one orbit to JSON lines");
    double og = 0.3, oc = -2.2, span = 50.0, lambda_frac = 0.5, nu_frac = 0.5;
    int sign_lambda = 1, sign_nu = 1;
    bool lyapunov = false, with_svg = false;
    std::string component_name_flag = "earth";
    cmd_orbit->add_option("--mu", mu, "mass ratio")->required();
    cmd_orbit->add_option("--g", og, "integral value");
    cmd_orbit->add_option("--c", oc, "energy")->required();
    cmd_orbit->add_option("--span", span, "time span");
    cmd_orbit->add_option("--component", component_name_flag, "earth|moon|whole");
    cmd_orbit->add_option("--lambda-frac", lambda_frac, "phase inside the lambda cell [0,1]");
    cmd_orbit->add_option("--nu-frac", nu_frac, "phase inside the nu cell [0,1]");
    cmd_orbit->add_option("--sign-lambda", sign_lambda, "+1 or -1");
    cmd_orbit->add_option("--sign-nu", sign_nu, "+1 or -1");
    cmd_orbit->add_flag("--lyapunov", lyapunov, "integrate the unstable periodic orbit at c");
    cmd_orbit->add_flag("--svg", with_svg, "also write the Cartesian projection");
    std::string orbit_format = "json";
    cmd_orbit->add_option("--format", orbit_format, "json, svg or both")
        ->check(CLI::IsMember({"json", "svg", "both"}));

    // ---- rotation ----
    auto* cmd_rotation = app.add_subcommand("rotation", "rotation number of the torus at (g,c)");
    cmd_rotation->add_option("--mu", mu, "mass ratio")->required();
    cmd_rotation->add_option("--g", og, "integral value")->required();
    cmd_rotation->add_option("--c", oc, "energy")->required();
    cmd_rotation->add_option("--component", component_name_flag, "earth|moon|whole");

    // ---- family ----
    auto* cmd_family = app.add_subcommand("family", "solve a rational torus family over energies");
    int fam_k = 1, fam_l = 1, steps = 11;
    double fc_min = -1.5, fc_max = -1.1;
    cmd_family->add_option("--mu", mu, "mass ratio")->required();
    cmd_family->add_option("--k", fam_k, "nu winding")->required();
    cmd_family->add_option("--l", fam_l, "lambda winding")->required();
    cmd_family->add_option("--c-min", fc_min, "grid lower energy")->required();
    cmd_family->add_option("--c-max", fc_max, "grid upper energy")->required();
    cmd_family->add_option("--steps", steps, "grid size");
    cmd_family->add_option("--component", component_name_flag, "earth|moon|whole");

    // ---- homoclinic ----
    auto* cmd_homoclinic = app.add_subcommand("homoclinic", "certify doubly asymptotic orbits");
    int n_orbits = 20;
    cmd_homoclinic->add_option("--mu", mu, "mass ratio")->required();
    cmd_homoclinic->add_option("--c", oc, "energy inside (cJ, cH)")->required();
    cmd_homoclinic->add_option("--component", component_name_flag, "earth|moon")->required();
    cmd_homoclinic->add_option("--orbits", n_orbits, "number of random leaf orbits");

    // ---- molecule ----
    auto* cmd_molecule = app.add_subcommand("molecule", "atom graph of the energy hypersurface");
    cmd_molecule->add_option("--mu", mu, "mass ratio")->required();
    cmd_molecule->add_option("--c", oc, "energy")->required();

    // ---- knot ----
    auto* cmd_knot = app.add_subcommand("knot", "certify the torus knot type of a rational torus");
    cmd_knot->add_option("--mu", mu, "mass ratio")->required();
    cmd_knot->add_option("--c", oc, "energy below cJ")->required();
    cmd_knot->add_option("--k", fam_k, "nu winding")->required();
    cmd_knot->add_option("--l", fam_l, "lambda winding")->required();
    cmd_knot->add_option("--component", component_name_flag, "earth|moon");

    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path out = resolve_out(cfg);

        if (cmd_diagram->parsed()) {
            const SystemParams params = make_params(mu);
            const DiagramGrid grid = classify_grid(params, g_min, g_max, c_min, c_max,
                                                   resolution, resolution, cfg.class_eps);
            if (format != "svg") {
                std::ostringstream csv;
                write_diagram_csv(csv, grid);
                write_file(out, "diagram.csv", csv.str());
            }
            if (format != "csv") {
                std::ostringstream svg;
                write_diagram_svg(svg, grid, params);
                write_file(out, "diagram.svg", svg.str());
            }
            return 0;
        }

        if (cmd_orbit->parsed()) {
            const SystemParams params = make_params(mu);
            Trajectory traj;
            if (lyapunov) {
                traj = lyapunov_orbit(oc, params).trajectory;
            } else {
                const EnergyMomentum pt = energy_momentum(og, oc);
                const RegionLabel label = classify(pt, params);
                if (label.kind == Region::Forbidden) {
                    throw InadmissiblePoint("(g,c) lies in the forbidden region");
                }
                PhaseChoice phase{lambda_frac, nu_frac, sign_lambda, sign_nu};
                const DoubledState start =
                    initial_state(pt, params, parse_component(component_name_flag), phase);
                IntegrateOptions opts;
                opts.tol = cfg.tol;
                traj = integrate(start, params, oc, span, opts);
            }
            if (orbit_format != "svg") {
                std::ostringstream jsonl;
                write_trajectory_jsonl(jsonl, traj);
                write_file(out, "orbit.jsonl", jsonl.str());
            }
            if (with_svg || orbit_format != "json") {
                std::ostringstream svg;
                write_orbit_svg(svg, traj);
                write_file(out, "orbit.svg", svg.str());
            }
            return 0;
        }

        if (cmd_rotation->parsed()) {
            const SystemParams params = make_params(mu);
            const RotationNumber rot =
                rotation_number(energy_momentum(og, oc), params,
                                parse_component(component_name_flag), cfg.quad_tol);
            std::cout << rotation_to_json(rot).dump(2) << '\n';
            return 0;
        }

        if (cmd_family->parsed()) {
            const SystemParams params = make_params(mu);
            if (!(fc_min <= fc_max) || steps < 1) throw DomainError("bad energy grid");
            std::vector<double> c_grid(steps);
            for (int i = 0; i < steps; ++i) {
                c_grid[i] = steps == 1 ? fc_min : fc_min + (fc_max - fc_min) * i / (steps - 1);
            }
            const TorusFamily family =
                solve_family(fam_k, fam_l, params, c_grid, parse_component(component_name_flag));
            std::ostringstream csv;
            write_family_csv(csv, family);
            write_file(out, "family.csv", csv.str());
            for (const auto& skip : family.skipped) {
                std::cerr << "skipped c=" << skip.c << ": " << skip.reason << '\n';
            }
            return 0;
        }

        if (cmd_homoclinic->parsed()) {
            const SystemParams params = make_params(mu);
            VerifyOptions opts;
            opts.n_orbits = n_orbits;
            opts.seed = cfg.seed;
            const HomoclinicReport report =
                verify_homoclinic(oc, params, parse_component(component_name_flag), opts);
            const json doc = homoclinic_report_to_json(report);
            write_file(out, "homoclinic_report.json", doc.dump(2) + "\n");
            std::cout << doc.dump(2) << '\n';
            return report.verdict ? 0 : 1;
        }

        if (cmd_molecule->parsed()) {
            const SystemParams params = make_params(mu);
            const auto graphs = molecule(oc, params);
            json doc = json::array();
            for (const auto& graph : graphs) {
                doc.push_back(molecule_to_json(graph));
                std::cout << molecule_to_text(graph) << '\n';
            }
            write_file(out, "molecule.json", doc.dump(2) + "\n");
            return 0;
        }

        if (cmd_knot->parsed()) {
            const SystemParams params = make_params(mu);
            const Component component = parse_component(component_name_flag);
            const std::vector<double> c_grid = {oc};
            const TorusFamily family = solve_family(fam_k, fam_l, params, c_grid, component);
            if (family.samples.empty()) {
                throw InadmissiblePoint("no torus with rotation number " + std::to_string(fam_k) +
                                        "/" + std::to_string(fam_l) + " at this energy: " +
                                        (family.skipped.empty() ? "" : family.skipped[0].reason));
            }
            const EnergyMomentum pt{family.samples[0].g, oc};
            const KnotCertificate cert = certify_knot(pt, params, component);
            const json doc = knot_certificate_to_json(cert);
            write_file(out, "knot_certificate.json", doc.dump(2) + "\n");
            std::cout << doc.dump(2) << '\n';
            return cert.pass ? 0 : 1;
        }
    } catch (const Error& err) {
        return fail_with_json(err);
    } catch (const std::exception& err) {
        json obj = {{"error", "unexpected"}, {"message", err.what()}};
        std::cerr << obj.dump() << '\n';
        return 3;
    }
    return 0;
}
