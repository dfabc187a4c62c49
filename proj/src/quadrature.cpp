#include "twocenters/quadrature.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "twocenters/errors.hpp"

namespace twocenters {

namespace {

struct GaussRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Legendre nodes by Newton iteration on the three-term recurrence.
GaussRule make_gauss(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[k] = -x;
        rule.nodes[n - 1 - k] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[k] = w;
        rule.weights[n - 1 - k] = w;
    }
    return rule;
}

const GaussRule& gauss32() {
    static const GaussRule rule = make_gauss(32);
    return rule;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& rule = gauss32();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b, double whole,
                    double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_panel(f, a, mid);
    const double right = gauss_panel(f, mid, b);
    const double delta = left + right - whole;
    if (std::abs(delta) <= tol || depth >= 40) return left + right;
    return adaptive_rec(f, a, mid, left, 0.5 * tol, depth + 1) +
           adaptive_rec(f, mid, b, right, 0.5 * tol, depth + 1);
}

double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    const double first = gauss_panel(f, a, b);
    const double tol = std::max(rel_tol * std::abs(first), 1e-300);
    return adaptive_rec(f, a, b, first, tol, 0);
}

constexpr double degenerate_tol = 1e-12;

} // namespace

std::pair<SubsystemCell, SubsystemCell> subsystem_cells(const EnergyMomentum& pt,
                                                        const SystemParams& params,
                                                        Component component) {
    const RegionLabel label = classify(pt, params);
    if (label.kind == Region::Forbidden) {
        throw InadmissiblePoint("point lies in the forbidden region");
    }
    if (label.kind == Region::OnCurve || label.kind == Region::SaddleValue) {
        throw CriticalPointError("point lies on a critical curve; a cell degenerates");
    }

    const RootData roots = solve_roots(pt, params);
    const Interval xr = *roots.xi_range;

    SubsystemCell lam_cell;
    lam_cell.which = Subsystem::Lambda;
    if (xr.lo <= 1.0) {
        const double lam2 = std::acosh(xr.hi);
        lam_cell.kind = CellKind::LibrationThroughAxis;
        lam_cell.lo = -lam2;
        lam_cell.hi = lam2;
    } else {
        lam_cell.kind = CellKind::LibrationOnArc;
        lam_cell.lo = std::acosh(xr.lo);
        lam_cell.hi = std::acosh(xr.hi);
    }

    SubsystemCell nu_cell;
    nu_cell.which = Subsystem::Nu;
    const bool eta_full = roots.eta_ranges.size() == 1 && roots.eta_ranges[0].lo == -1.0 &&
                          roots.eta_ranges[0].hi == 1.0;
    if (eta_full) {
        nu_cell.kind = CellKind::FullRotation;
        nu_cell.lo = -std::numbers::pi;
        nu_cell.hi = std::numbers::pi;
        nu_cell.component = Component::Both;
    } else if (component == Component::Moon) {
        if (roots.eta_ranges.size() < 2) {
            throw InadmissiblePoint("no Moon-side motion at this point");
        }
        const double nu_b = std::acos(roots.eta_ranges[1].lo);
        nu_cell.kind = CellKind::LibrationThroughAxis; // through nu = 0
        nu_cell.lo = -nu_b;
        nu_cell.hi = nu_b;
        nu_cell.component = Component::Moon;
    } else {
        const double nu_a = std::acos(roots.eta_ranges[0].hi);
        nu_cell.kind = CellKind::LibrationThroughAxis; // through nu = pi
        nu_cell.lo = nu_a;
        nu_cell.hi = 2.0 * std::numbers::pi - nu_a;
        nu_cell.component = Component::Earth;
    }
    return {lam_cell, nu_cell};
}

double cell_period(const SubsystemCell& cell, const EnergyMomentum& pt,
                   const SystemParams& params, double rel_tol) {
    const double g = pt.g, c = pt.c, d = params.delta;
    const RootData roots = solve_roots(pt, params);
    const double half_pi = 0.5 * std::numbers::pi;

    if (cell.which == Subsystem::Lambda) {
        if (!roots.xi_roots) throw DegenerateCell("no real turning values in xi");
        const auto [xi1, xi2] = *roots.xi_roots;
        if (cell.kind == CellKind::LibrationThroughAxis) {
            // T = int_1^xi2 dxi / (sqrt(xi^2-1) |p_lam|); the sine substitution
            // absorbs the simple zeros at xi = 1 and xi = xi2
            if (xi2 - 1.0 < degenerate_tol * (1.0 + std::abs(xi2))) {
                throw DegenerateCell("lambda cell collapsed onto the interior collision locus");
            }
            if (xi2 - xi1 < degenerate_tol * (1.0 + std::abs(xi2))) {
                throw DegenerateCell("double root in xi; lambda period diverges");
            }
            const double m = 0.5 * (1.0 + xi2), w = 0.5 * (xi2 - 1.0);
            auto f = [&](double th) {
                const double xi = m + w * std::sin(th);
                return 1.0 / std::sqrt(std::max(1e-300, (-c / 2.0) * (xi + 1.0) * (xi - xi1)));
            };
            return adaptive_gauss(f, -half_pi, half_pi, rel_tol);
        }
        // one-sided ring cell [xi1, xi2], both endpoints simple roots
        if (xi2 - xi1 < degenerate_tol * (1.0 + std::abs(xi2))) {
            throw DegenerateCell("double root in xi; cell has zero width");
        }
        const double m = 0.5 * (xi1 + xi2), w = 0.5 * (xi2 - xi1);
        auto f = [&](double th) {
            const double xi = m + w * std::sin(th);
            return 0.5 / std::sqrt(std::max(1e-300, (-c / 2.0) * (xi * xi - 1.0)));
        };
        return adaptive_gauss(f, -half_pi, half_pi, rel_tol);
    }

    // nu subsystem
    if (cell.kind == CellKind::FullRotation) {
        // T = (1/2) int_{-1}^{1} de / (sqrt(1-e^2) |p_nu|); quadratic factor has
        // no root inside [-1, 1]
        if (roots.eta_roots) {
            const auto [e1, e2] = *roots.eta_roots;
            if (std::min(std::abs(e1 - 1.0), std::abs(e1 + 1.0)) < degenerate_tol ||
                std::min(std::abs(e2 - 1.0), std::abs(e2 + 1.0)) < degenerate_tol) {
                throw DegenerateCell("rotation cell touches an axis equilibrium");
            }
        }
        auto quad = [&](double e) {
            if (roots.eta_roots) {
                const auto [e1, e2] = *roots.eta_roots;
                return (e1 - e) * (e2 - e);
            }
            // complex pair: (e - a)^2 + b^2
            const double a = -d / c;
            const double b2 = (g * c - d * d) / (c * c);
            return (e - a) * (e - a) + b2;
        };
        auto f = [&](double th) {
            const double e = std::sin(th);
            return 0.5 / std::sqrt(std::max(1e-300, (-c / 2.0) * quad(e)));
        };
        return adaptive_gauss(f, -half_pi, half_pi, rel_tol);
    }

    if (!roots.eta_roots) throw DegenerateCell("no real turning values in eta");
    const auto [e1, e2] = *roots.eta_roots;
    if (e2 - e1 < degenerate_tol * (1.0 + std::abs(e2))) {
        throw DegenerateCell("double root in eta; nu period diverges");
    }
    if (cell.component == Component::Moon) {
        // eta in [e2, 1]; simple zeros at both endpoints
        if (1.0 - e2 < degenerate_tol) throw DegenerateCell("Moon arc collapsed onto the axis");
        const double m = 0.5 * (e2 + 1.0), w = 0.5 * (1.0 - e2);
        auto f = [&](double th) {
            const double e = m + w * std::sin(th);
            return 1.0 / std::sqrt(std::max(1e-300, (-c / 2.0) * (1.0 + e) * (e - e1)));
        };
        return adaptive_gauss(f, -half_pi, half_pi, rel_tol);
    }
    // Earth arc: eta in [-1, e1]
    if (e1 + 1.0 < degenerate_tol) throw DegenerateCell("Earth arc collapsed onto the axis");
    const double m = 0.5 * (-1.0 + e1), w = 0.5 * (e1 + 1.0);
    auto f = [&](double th) {
        const double e = m + w * std::sin(th);
        return 1.0 / std::sqrt(std::max(1e-300, (-c / 2.0) * (1.0 - e) * (e2 - e)));
    };
    return adaptive_gauss(f, -half_pi, half_pi, rel_tol);
}

RotationNumber rotation_number(const EnergyMomentum& pt, const SystemParams& params,
                               Component component, double rel_tol) {
    if (!(rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    auto [lam_cell, nu_cell] = subsystem_cells(pt, params, component);
    const double t_lam = cell_period(lam_cell, pt, params, rel_tol);
    const double t_nu = cell_period(nu_cell, pt, params, rel_tol);
    return RotationNumber{t_lam / t_nu, pt, t_lam, t_nu};
}

TorusFamily solve_family(int k, int l, const SystemParams& params,
                         std::span<const double> c_grid, Component component) {
    if (k <= 0 || l <= 0) throw DomainError("winding integers must be positive");
    if (std::gcd(k, l) != 1) throw DomainError("winding integers must be coprime");
    const double target = static_cast<double>(k) / static_cast<double>(l);

    TorusFamily family;
    family.k = k;
    family.l = l;
    for (double c : c_grid) {
        try {
            const Interval window = component_g_interval(c, params, component);
            const double margin = 1e-7 * (1.0 + std::abs(window.lo) + std::abs(window.hi));
            double lo = window.lo + margin, hi = window.hi - margin;
            if (!(lo < hi)) {
                family.skipped.push_back({c, "admissible g interval empty"});
                continue;
            }
            auto ratio = [&](double g) {
                return rotation_number(EnergyMomentum{g, c}, params, component).value - target;
            };
            // locate a sign change on a coarse scan, then bisect
            constexpr int coarse = 32;
            double g_prev = lo, f_prev = ratio(lo);
            double a = 0.0, b = 0.0;
            bool bracketed = false;
            for (int i = 1; i <= coarse && !bracketed; ++i) {
                const double g_i = lo + (hi - lo) * i / coarse;
                const double f_i = ratio(g_i);
                if (f_prev == 0.0 || f_prev * f_i <= 0.0) {
                    a = g_prev;
                    b = g_i;
                    bracketed = f_prev * f_i <= 0.0;
                }
                g_prev = g_i;
                f_prev = f_i;
            }
            if (!bracketed) {
                family.skipped.push_back({c, "no root: R never equals the target on this energy"});
                continue;
            }
            double fa = ratio(a);
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (a + b);
                const double fm = ratio(mid);
                if (std::abs(fm) <= 1e-12 || b - a < 1e-15 * (1.0 + std::abs(mid))) {
                    a = b = mid;
                    break;
                }
                if (fa * fm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            const double g_root = 0.5 * (a + b);
            const double residual = std::abs(ratio(g_root));
            if (residual <= 1e-10) {
                family.samples.push_back({c, g_root, residual});
            } else {
                family.skipped.push_back({c, "root refinement stalled; residual " +
                                                 std::to_string(residual)});
            }
        } catch (const Error& err) {
            family.skipped.push_back({c, err.what()});
        }
    }
    return family;
}

} // namespace twocenters
