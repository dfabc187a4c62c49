#include "twocenters/io.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "twocenters/errors.hpp"

namespace twocenters {

std::string region_name(Region region) {
    switch (region) {
    case Region::Forbidden: return "forbidden";
    case Region::SPrime: return "S'";
    case Region::Satellite: return "S";
    case Region::Lemniscate: return "L";
    case Region::Planetary: return "P";
    case Region::OnCurve: return "on-curve";
    case Region::SaddleValue: return "saddle-value";
    }
    return "?";
}

std::string curve_name(Curve curve) {
    switch (curve) {
    case Curve::L1: return "l1";
    case Curve::L2: return "l2";
    case Curve::L3: return "l3";
    case Curve::L4: return "l4";
    case Curve::L5: return "l5";
    }
    return "?";
}

std::string orbit_kind_name(OrbitKind kind) {
    switch (kind) {
    case OrbitKind::InteriorCollisionEarth: return "interior-collision-earth";
    case OrbitKind::InteriorCollisionMoon: return "interior-collision-moon";
    case OrbitKind::ExteriorCollisionEarth: return "exterior-collision-earth";
    case OrbitKind::ExteriorCollisionMoon: return "exterior-collision-moon";
    case OrbitKind::DoubleCollision: return "double-collision";
    case OrbitKind::Hyperbolic: return "hyperbolic";
    case OrbitKind::Elliptic: return "elliptic";
    }
    return "?";
}

std::string atom_name(Atom atom) {
    switch (atom) {
    case Atom::A: return "A";
    case Atom::B: return "B";
    case Atom::AStar: return "A*";
    }
    return "?";
}

std::string component_name(Component component) {
    switch (component) {
    case Component::Earth: return "earth";
    case Component::Moon: return "moon";
    case Component::Both: return "both";
    }
    return "?";
}

namespace {

std::string label_string(const RegionLabel& label) {
    if (label.kind == Region::OnCurve && label.curve) {
        return "on-curve(" + curve_name(*label.curve) + ")";
    }
    if (label.kind == Region::Satellite && label.component_hint != Component::Both) {
        return "S," + component_name(label.component_hint);
    }
    return region_name(label.kind);
}

const char* region_color(Region region) {
    switch (region) {
    case Region::Forbidden: return "#bdbdbd";
    case Region::SPrime: return "#ffd54f";
    case Region::Satellite: return "#81c784";
    case Region::Lemniscate: return "#64b5f6";
    case Region::Planetary: return "#e57373";
    default: return "#333333";
    }
}

} // namespace

DiagramGrid classify_grid(const SystemParams& params, double g_min, double g_max, double c_min,
                          double c_max, int res_g, int res_c, double curve_tol) {
    if (!(g_min < g_max) || !(c_min < c_max)) throw DomainError("empty diagram window");
    if (!(c_max < 0.0)) throw DomainError("diagram window must satisfy c < 0");
    if (res_g < 2 || res_c < 2) throw DomainError("diagram resolution must be at least 2x2");
    if (!(curve_tol > 0.0)) throw DomainError("classification tolerance must be positive");
    DiagramGrid grid;
    grid.mu = params.mu;
    grid.g_min = g_min;
    grid.g_max = g_max;
    grid.c_min = c_min;
    grid.c_max = c_max;
    grid.res_g = res_g;
    grid.res_c = res_c;
    grid.labels.reserve(static_cast<std::size_t>(res_g) * res_c);
    for (int j = 0; j < res_c; ++j) {
        const double c = c_min + (c_max - c_min) * (j + 0.5) / res_c;
        for (int i = 0; i < res_g; ++i) {
            const double g = g_min + (g_max - g_min) * (i + 0.5) / res_g;
            grid.labels.push_back(classify(EnergyMomentum{g, c}, params, curve_tol));
        }
    }
    return grid;
}

void write_diagram_csv(std::ostream& os, const DiagramGrid& grid) {
    os << "mu,g,c,label\n";
    os << std::setprecision(17);
    for (int j = 0; j < grid.res_c; ++j) {
        const double c = grid.c_min + (grid.c_max - grid.c_min) * (j + 0.5) / grid.res_c;
        for (int i = 0; i < grid.res_g; ++i) {
            const double g = grid.g_min + (grid.g_max - grid.g_min) * (i + 0.5) / grid.res_g;
            os << grid.mu << ',' << g << ',' << c << ','
               << label_string(grid.labels[static_cast<std::size_t>(j) * grid.res_g + i]) << '\n';
        }
    }
}

void write_diagram_svg(std::ostream& os, const DiagramGrid& grid, const SystemParams& params,
                       int size) {
    const double w = size, h = size;
    auto x_of = [&](double g) { return (g - grid.g_min) / (grid.g_max - grid.g_min) * w; };
    auto y_of = [&](double c) { return h - (c - grid.c_min) / (grid.c_max - grid.c_min) * h; };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size << "' height='" << size
       << "' viewBox='0 0 " << size << ' ' << size << "'>\n";
    // region cells
    const double cw = w / grid.res_g, ch = h / grid.res_c;
    for (int j = 0; j < grid.res_c; ++j) {
        for (int i = 0; i < grid.res_g; ++i) {
            const RegionLabel& lab = grid.labels[static_cast<std::size_t>(j) * grid.res_g + i];
            if (lab.kind == Region::OnCurve || lab.kind == Region::SaddleValue) continue;
            os << "<rect x='" << i * cw << "' y='" << h - (j + 1) * ch << "' width='" << cw + 0.5
               << "' height='" << ch + 0.5 << "' fill='" << region_color(lab.kind) << "'/>\n";
        }
    }
    // critical curves drawn parametrically over their validity windows
    auto draw_curve = [&](Curve curve, const char* color) {
        std::ostringstream path;
        bool open = false;
        const int n = 600;
        for (int j = 0; j <= n; ++j) {
            const double c = grid.c_min + (grid.c_max - grid.c_min) * j / n;
            if (c >= 0.0) continue;
            if (curve == Curve::L4 && !(c > params.cJ && c < params.cH)) { open = false; continue; }
            if (curve == Curve::L5 && !(c > params.cE)) { open = false; continue; }
            const double g = curve_g_at_energy(curve, c, params);
            if (g < grid.g_min || g > grid.g_max) { open = false; continue; }
            path << (open ? " L " : " M ") << x_of(g) << ' ' << y_of(c);
            open = true;
        }
        os << "<path d='" << path.str() << "' fill='none' stroke='" << color
           << "' stroke-width='2'/>\n";
    };
    draw_curve(Curve::L1, "#1a237e");
    draw_curve(Curve::L2, "#4a148c");
    draw_curve(Curve::L3, "#b71c1c");
    draw_curve(Curve::L4, "#004d40");
    draw_curve(Curve::L5, "#e65100");
    os << "</svg>\n";
}

void write_trajectory_jsonl(std::ostream& os, const Trajectory& traj) {
    os << std::setprecision(17);
    for (const auto& sm : traj.samples) {
        nlohmann::json line = {
            {"s", sm.s},
            {"lambda", sm.state.lam},
            {"nu_wrapped", sm.nu_wrapped},
            {"nu_unwrapped", sm.state.nu},
            {"p_lambda", sm.state.p_lam},
            {"p_nu", sm.state.p_nu},
            {"Q", sm.Q},
            {"Q_lambda", sm.Q_lambda},
        };
        os << line.dump() << '\n';
    }
}

void write_orbit_svg(std::ostream& os, const Trajectory& traj, int size) {
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(traj.samples.size());
    for (const auto& sm : traj.samples) {
        const double x = 0.5 * std::cosh(sm.state.lam) * std::cos(sm.state.nu);
        const double y = 0.5 * std::sinh(sm.state.lam) * std::sin(sm.state.nu);
        pts.emplace_back(x, y);
        x_min = std::min(x_min, x); x_max = std::max(x_max, x);
        y_min = std::min(y_min, y); y_max = std::max(y_max, y);
    }
    const double pad = 0.1 * std::max({x_max - x_min, y_max - y_min, 1e-6});
    x_min -= pad; x_max += pad; y_min -= pad; y_max += pad;
    const double scale = size / std::max(x_max - x_min, y_max - y_min);
    auto X = [&](double x) { return (x - x_min) * scale; };
    auto Y = [&](double y) { return size - (y - y_min) * scale; };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size << "' height='" << size
       << "'>\n<path d='";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << (i == 0 ? "M " : " L ") << X(pts[i].first) << ' ' << Y(pts[i].second);
    }
    os << "' fill='none' stroke='#1565c0' stroke-width='1'/>\n";
    os << "<circle cx='" << X(-0.5) << "' cy='" << Y(0) << "' r='5' fill='#2e7d32'/>\n";
    os << "<circle cx='" << X(0.5) << "' cy='" << Y(0) << "' r='4' fill='#c62828'/>\n";
    os << "</svg>\n";
}

void write_family_csv(std::ostream& os, const TorusFamily& family) {
    os << "k,l,c,g,residual\n";
    os << std::setprecision(17);
    for (const auto& s : family.samples) {
        os << family.k << ',' << family.l << ',' << s.c << ',' << s.g << ',' << s.residual << '\n';
    }
}

nlohmann::json molecule_to_json(const MoleculeGraph& graph) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : graph.nodes) {
        nodes.push_back({{"kind", orbit_kind_name(node.kind)},
                         {"g", node.g_at_c},
                         {"atom", atom_name(node.atom)}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : graph.edges) edges.push_back({a, b});
    const char* comp = graph.component == HypersurfaceComponent::Earth   ? "earth"
                       : graph.component == HypersurfaceComponent::Moon ? "moon"
                                                                         : "whole";
    return {{"component", comp}, {"nodes", nodes}, {"edges", edges}};
}

std::string molecule_to_text(const MoleculeGraph& graph) {
    std::ostringstream out;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        if (i) out << " - ";
        out << atom_name(graph.nodes[i].atom) << '(' << orbit_kind_name(graph.nodes[i].kind)
            << ", g=" << std::setprecision(7) << graph.nodes[i].g_at_c << ')';
    }
    out << "\n  edges:";
    for (const auto& [a, b] : graph.edges) out << ' ' << a << '-' << b;
    return out.str();
}

nlohmann::json homoclinic_report_to_json(const HomoclinicReport& report) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto& v : report.orbits) {
        orbits.push_back({{"phase", v.lambda_frac},
                          {"sign", nlohmann::json::array({v.lambda_sign, v.nu_sign})},
                          {"checkpoints_s", v.checkpoint_s},
                          {"checkpoints_fwd", v.dist_forward},
                          {"checkpoints_bwd", v.dist_backward},
                          {"rotation_count", v.rotation_count},
                          {"collision_flag", v.collision},
                          {"pass", v.pass}});
    }
    return {{"mu", report.mu},
            {"c", report.c},
            {"component", component_name(report.component)},
            {"orbits", orbits},
            {"verdict", report.verdict ? "pass" : "fail"}};
}

nlohmann::json knot_certificate_to_json(const KnotCertificate& cert) {
    return {{"g", cert.point.g},
            {"c", cert.point.c},
            {"k_observed", cert.k_observed},
            {"l_observed", cert.l_observed},
            {"closure_residual", cert.closure_residual},
            {"rotation_residual", cert.rotation_residual},
            {"pass", cert.pass}};
}

nlohmann::json rotation_to_json(const RotationNumber& rot) {
    return {{"g", rot.point.g},
            {"c", rot.point.c},
            {"R", rot.value},
            {"T_lambda", rot.t_lambda},
            {"T_nu", rot.t_nu}};
}

} // namespace twocenters
