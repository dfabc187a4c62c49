#include "twocenters/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "twocenters/errors.hpp"

namespace twocenters {

EnergyMomentum energy_momentum(double g, double c) {
    if (!(c < 0.0)) throw DomainError("energy must be negative: got c = " + std::to_string(c));
    return EnergyMomentum{g, c};
}

double poly_f(const EnergyMomentum& pt, double xi) {
    return (pt.c * xi * xi + 2.0 * xi + pt.g) * (xi * xi - 1.0);
}

double poly_h(const EnergyMomentum& pt, const SystemParams& params, double eta) {
    return (pt.c * eta * eta + 2.0 * params.delta * eta + pt.g) * (eta * eta - 1.0);
}

std::pair<double, double> discriminants(const EnergyMomentum& pt, const SystemParams& params) {
    const double g = pt.g, c = pt.c, d = params.delta;
    auto sq = [](double x) { return x * x; };
    const double disc_f = 16.0 * sq(c + g + 2.0) * sq(c + g - 2.0) * sq(g * c - 1.0);
    const double disc_h = 16.0 * sq(c + g + 2.0 * d) * sq(c + g - 2.0 * d) * sq(g * c - d * d);
    return {disc_f, disc_h};
}

RootData solve_roots(const EnergyMomentum& pt, const SystemParams& params) {
    if (!(pt.c < 0.0)) throw DomainError("solve_roots requires c < 0");
    const double g = pt.g, c = pt.c, d = params.delta;
    RootData out;
    // absorbs rounding of roots that sit exactly on a chart boundary
    constexpr double snap = 1e-12;

    const double disc_xi = 1.0 - g * c;
    if (disc_xi >= 0.0) {
        const double s = std::sqrt(disc_xi);
        double r1 = (-1.0 + s) / c, r2 = (-1.0 - s) / c;
        if (r1 > r2) std::swap(r1, r2);
        out.xi_roots = {r1, r2};
        // quadratic part is >= 0 exactly on [r1, r2]; admissible xi needs >= 1
        if (r2 >= 1.0 - snap) {
            out.xi_range = Interval{std::max(r1, 1.0), std::max(r2, 1.0)};
        }
    }

    const double disc_eta = d * d - g * c;
    if (disc_eta >= 0.0) {
        const double s = std::sqrt(disc_eta);
        double r1 = (-d + s) / c, r2 = (-d - s) / c;
        if (r1 > r2) std::swap(r1, r2);
        out.eta_roots = {r1, r2};
        // quadratic part is <= 0 outside (r1, r2); admissible eta = [-1,1] \ (r1, r2)
        if (r1 >= 1.0 - snap || r2 <= -1.0 + snap) {
            out.eta_ranges.push_back(Interval{-1.0, 1.0});
        } else {
            if (r1 >= -1.0 - snap) {
                out.eta_ranges.push_back(Interval{-1.0, std::clamp(r1, -1.0, 1.0)});
            }
            if (r2 <= 1.0 + snap) {
                out.eta_ranges.push_back(Interval{std::clamp(r2, -1.0, 1.0), 1.0});
            }
        }
    } else {
        // complex pair: quadratic negative everywhere, whole interval admissible
        out.eta_ranges.push_back(Interval{-1.0, 1.0});
    }
    return out;
}

double curve_g_at_energy(Curve curve, double c, const SystemParams& params) {
    const double d = params.delta;
    switch (curve) {
    case Curve::L1: return 2.0 * d - c;
    case Curve::L2: return -2.0 * d - c;
    case Curve::L3: return -2.0 - c;
    case Curve::L4: return d * d / c;
    case Curve::L5: return 1.0 / c;
    }
    throw DomainError("unknown curve");
}

namespace {

bool curve_active_at(Curve curve, double c, const SystemParams& params, double slack) {
    switch (curve) {
    case Curve::L1:
    case Curve::L2:
    case Curve::L3: return c < 0.0;
    case Curve::L4: return c > params.cJ - slack && c < params.cH + slack;
    case Curve::L5: return c > params.cE - slack && c < 0.0;
    }
    return false;
}

} // namespace

double curve_distance(const EnergyMomentum& pt, const SystemParams& params, Curve curve) {
    const double g = pt.g, c = pt.c, d = params.delta;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!curve_active_at(curve, c, params, 1e-9)) return inf;
    switch (curve) {
    case Curve::L1: return std::abs(c + g - 2.0 * d) / std::sqrt(2.0);
    case Curve::L2: return std::abs(c + g + 2.0 * d) / std::sqrt(2.0);
    case Curve::L3: return std::abs(c + g + 2.0) / std::sqrt(2.0);
    case Curve::L4: {
        if (d == 0.0) return std::abs(g); // degenerates to the axis g = 0
        return std::abs(g * c - d * d) / std::hypot(g, c);
    }
    case Curve::L5: return std::abs(g * c - 1.0) / std::hypot(g, c);
    }
    return inf;
}

RegionLabel classify(const EnergyMomentum& pt, const SystemParams& params, double curve_tol,
                     Component request) {
    if (!(pt.c < 0.0)) throw DomainError("classification requires c < 0");

    // the l3/l4 corner is the saddle's critical value
    const double corner_g = -2.0 - params.cJ;
    if (std::hypot(pt.g - corner_g, pt.c - params.cJ) <= curve_tol) {
        return RegionLabel{Region::SaddleValue, std::nullopt, Component::Both};
    }

    for (Curve curve : {Curve::L1, Curve::L2, Curve::L3, Curve::L4, Curve::L5}) {
        if (curve_distance(pt, params, curve) <= curve_tol) {
            return RegionLabel{Region::OnCurve, curve, Component::Both};
        }
    }

    const RootData roots = solve_roots(pt, params);
    const bool xi_empty = !roots.xi_range.has_value() || roots.xi_range->width() <= 0.0;
    if (xi_empty || roots.eta_ranges.empty()) {
        return RegionLabel{Region::Forbidden, std::nullopt, Component::Both};
    }

    const bool xi_through_axis = roots.xi_range->lo <= 1.0;
    const bool eta_full =
        roots.eta_ranges.size() == 1 && roots.eta_ranges[0].lo == -1.0 && roots.eta_ranges[0].hi == 1.0;

    if (xi_through_axis) {
        if (roots.eta_ranges.size() == 2) {
            return RegionLabel{Region::Satellite, std::nullopt, request};
        }
        if (eta_full) return RegionLabel{Region::Lemniscate, std::nullopt, Component::Both};
        // single interval touching eta = -1 only: Earth-only motion
        return RegionLabel{Region::SPrime, std::nullopt, Component::Earth};
    }
    if (eta_full) return RegionLabel{Region::Planetary, std::nullopt, Component::Both};
    // a ring in xi with restricted eta cannot occur: the curve bounding the
    // ring (l3 side) lies below the eta restriction curves
    throw Error("inconsistent root pattern; unreachable for c < 0");
}

EnergyBand energy_band(double c, const SystemParams& params, double edge_tol) {
    if (!(c < 0.0)) throw DomainError("energy bands are defined for c < 0");
    const double scale = 1.0 + std::abs(c);
    for (double edge : {params.cJ, params.cE, params.cH}) {
        if (std::abs(c - edge) <= edge_tol * scale) {
            throw BandEdgeError("energy lies on a band transition: c = " + std::to_string(c));
        }
    }
    if (c < params.cJ) return EnergyBand::BelowSaddle;
    if (c < params.cE) return EnergyBand::SaddleToElliptic;
    if (c < params.cH) return EnergyBand::EllipticToHyperbolic;
    return EnergyBand::AboveHyperbolic;
}

std::vector<CriticalOrbitDescriptor> critical_orbits_at_energy(double c, const SystemParams& params) {
    const EnergyBand band = energy_band(c, params);
    if (params.delta == 0.0 && band != EnergyBand::BelowSaddle) {
        throw ExplicitlyDegenerate("equal masses: critical g values coincide for c > cJ");
    }
    const double d = params.delta;
    const double g_l1 = 2.0 * d - c;
    const double g_l2 = -2.0 * d - c;
    const double g_l3 = -2.0 - c;
    std::vector<CriticalOrbitDescriptor> orbits;
    switch (band) {
    case EnergyBand::BelowSaddle:
        orbits.push_back({OrbitKind::InteriorCollisionEarth, g_l3, Atom::A});
        orbits.push_back({OrbitKind::InteriorCollisionMoon, g_l3, Atom::A});
        orbits.push_back({OrbitKind::ExteriorCollisionMoon, g_l2, Atom::A});
        orbits.push_back({OrbitKind::ExteriorCollisionEarth, g_l1, Atom::A});
        break;
    case EnergyBand::SaddleToElliptic:
        orbits.push_back({OrbitKind::DoubleCollision, g_l3, Atom::A});
        orbits.push_back({OrbitKind::Hyperbolic, d * d / c, Atom::B});
        orbits.push_back({OrbitKind::ExteriorCollisionMoon, g_l2, Atom::A});
        orbits.push_back({OrbitKind::ExteriorCollisionEarth, g_l1, Atom::A});
        break;
    case EnergyBand::EllipticToHyperbolic:
        orbits.push_back({OrbitKind::Elliptic, 1.0 / c, Atom::A});
        orbits.push_back({OrbitKind::DoubleCollision, g_l3, Atom::B});
        orbits.push_back({OrbitKind::Hyperbolic, d * d / c, Atom::B});
        orbits.push_back({OrbitKind::ExteriorCollisionMoon, g_l2, Atom::A});
        orbits.push_back({OrbitKind::ExteriorCollisionEarth, g_l1, Atom::A});
        break;
    case EnergyBand::AboveHyperbolic:
        orbits.push_back({OrbitKind::Elliptic, 1.0 / c, Atom::A});
        orbits.push_back({OrbitKind::DoubleCollision, g_l3, Atom::B});
        orbits.push_back({OrbitKind::ExteriorCollisionMoon, g_l2, Atom::AStar});
        orbits.push_back({OrbitKind::ExteriorCollisionEarth, g_l1, Atom::A});
        break;
    }
    std::stable_sort(orbits.begin(), orbits.end(),
                     [](const auto& a, const auto& b) { return a.g_at_c < b.g_at_c; });
    return orbits;
}

std::vector<MoleculeGraph> molecule(double c, const SystemParams& params) {
    const EnergyBand band = energy_band(c, params);
    const auto orbits = critical_orbits_at_energy(c, params);

    auto find = [&](OrbitKind kind) {
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            if (orbits[i].kind == kind) return static_cast<int>(i);
        }
        throw Error("critical orbit missing from catalogue");
    };

    std::vector<MoleculeGraph> graphs;
    if (band == EnergyBand::BelowSaddle) {
        MoleculeGraph earth;
        earth.component = HypersurfaceComponent::Earth;
        earth.nodes = {orbits[find(OrbitKind::InteriorCollisionEarth)],
                       orbits[find(OrbitKind::ExteriorCollisionEarth)]};
        earth.edges = {{0, 1}};
        MoleculeGraph moon;
        moon.component = HypersurfaceComponent::Moon;
        moon.nodes = {orbits[find(OrbitKind::InteriorCollisionMoon)],
                      orbits[find(OrbitKind::ExteriorCollisionMoon)]};
        moon.edges = {{0, 1}};
        graphs.push_back(std::move(earth));
        graphs.push_back(std::move(moon));
        return graphs;
    }

    MoleculeGraph whole;
    whole.component = HypersurfaceComponent::Whole;
    if (band == EnergyBand::SaddleToElliptic) {
        whole.nodes = orbits; // DC(A), hyp(B), extM(A), extE(A) by g
        const int dc = find(OrbitKind::DoubleCollision), hy = find(OrbitKind::Hyperbolic);
        const int em = find(OrbitKind::ExteriorCollisionMoon), ee = find(OrbitKind::ExteriorCollisionEarth);
        whole.edges = {{dc, hy}, {hy, em}, {hy, ee}};
    } else if (band == EnergyBand::EllipticToHyperbolic) {
        // the elliptic orbit appears with both orientations: two A nodes at equal g
        whole.nodes.push_back(orbits[find(OrbitKind::Elliptic)]);
        whole.nodes.push_back(orbits[find(OrbitKind::Elliptic)]);
        whole.nodes.push_back(orbits[find(OrbitKind::DoubleCollision)]);
        whole.nodes.push_back(orbits[find(OrbitKind::Hyperbolic)]);
        whole.nodes.push_back(orbits[find(OrbitKind::ExteriorCollisionMoon)]);
        whole.nodes.push_back(orbits[find(OrbitKind::ExteriorCollisionEarth)]);
        whole.edges = {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}};
    } else {
        whole.nodes.push_back(orbits[find(OrbitKind::Elliptic)]);
        whole.nodes.push_back(orbits[find(OrbitKind::Elliptic)]);
        whole.nodes.push_back(orbits[find(OrbitKind::DoubleCollision)]);
        whole.nodes.push_back(orbits[find(OrbitKind::ExteriorCollisionMoon)]);
        whole.nodes.push_back(orbits[find(OrbitKind::ExteriorCollisionEarth)]);
        whole.edges = {{0, 2}, {1, 2}, {2, 3}, {3, 4}};
    }
    graphs.push_back(std::move(whole));
    return graphs;
}

Interval component_g_interval(double c, const SystemParams& params, Component component) {
    const EnergyBand band = energy_band(c, params);
    const double d = params.delta;
    double lower = 0.0, upper = 0.0;
    if (component == Component::Both) {
        // tori filling the whole hypersurface (nu circulates): the band
        // between the double-collision curve and the next critical g
        switch (band) {
        case EnergyBand::BelowSaddle:
            throw InadmissiblePoint("below the saddle energy all tori are component-bound");
        case EnergyBand::SaddleToElliptic:
        case EnergyBand::EllipticToHyperbolic:
            lower = -2.0 - c;
            upper = d * d / c;
            break;
        case EnergyBand::AboveHyperbolic:
            lower = -2.0 - c;
            upper = -2.0 * d - c;
            break;
        }
    } else {
        upper = component == Component::Moon ? -2.0 * d - c : 2.0 * d - c;
        if (band == EnergyBand::BelowSaddle) {
            lower = -2.0 - c; // interior collision curve
        } else if (band == EnergyBand::SaddleToElliptic ||
                   band == EnergyBand::EllipticToHyperbolic) {
            lower = d * d / c; // hyperbolic orbit bounds the component arcs
        } else {
            throw InadmissiblePoint("no separated component tori above the hyperbolic transition");
        }
    }
    if (!(lower < upper)) throw InadmissiblePoint("component carries no tori at this energy");
    return Interval{lower, upper};
}

} // namespace twocenters
