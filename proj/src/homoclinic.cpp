#include "twocenters/homoclinic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "twocenters/errors.hpp"
#include "twocenters/quadrature.hpp"
#include "twocenters/rng.hpp"

namespace twocenters {

namespace {

constexpr double pi = std::numbers::pi;

void require_lyapunov_band(double c, const SystemParams& params) {
    if (params.delta == 0.0) {
        throw ExplicitlyDegenerate("equal masses: the unstable orbit family is empty by convention");
    }
    if (!(c > params.cJ) || !(c < params.cH)) {
        throw BandError("no unstable periodic orbit at c = " + std::to_string(c) +
                        "; band is (" + std::to_string(params.cJ) + ", " + std::to_string(params.cH) + ")");
    }
}

/// Leaf values and nu equilibrium for energy c.
struct LeafData {
    double g_c;
    double nu_star;
};

LeafData leaf_data(double c, const SystemParams& params) {
    require_lyapunov_band(c, params);
    return {params.delta * params.delta / c, std::acos(-params.delta / c)};
}

/// Count of levels {offset + 2 pi k} strictly inside (lo, hi).
int axis_crossings(double lo, double hi, double offset) {
    if (lo > hi) std::swap(lo, hi);
    const double first = std::ceil((lo - offset) / (2.0 * pi));
    const double last = std::floor((hi - offset) / (2.0 * pi));
    int count = static_cast<int>(last - first) + 1;
    // exclude grazing endpoints
    if (count > 0 && std::abs(offset + 2.0 * pi * first - lo) < 1e-12) --count;
    if (count > 0 && std::abs(offset + 2.0 * pi * last - hi) < 1e-12) --count;
    return std::max(count, 0);
}

OrbitVerification verify_one(const Trajectory& traj, double c, const SystemParams& params,
                             Component component, const std::vector<double>& checkpoints,
                             const VerifyOptions& opts, double lambda_frac, int lambda_sign,
                             int nu_sign) {
    const LeafData leaf = leaf_data(c, params);
    OrbitVerification v;
    v.lambda_frac = lambda_frac;
    v.lambda_sign = lambda_sign;
    v.nu_sign = nu_sign;
    v.checkpoint_s = checkpoints;
    v.collision = false;
    v.pass = true;

    for (double s : checkpoints) {
        v.dist_forward.push_back(distance_to_nu_locus(traj.state_at(s).nu, leaf.nu_star));
        v.dist_backward.push_back(distance_to_nu_locus(traj.state_at(-s).nu, leaf.nu_star));
    }
    auto monotone_below = [&](const std::vector<double>& d, const char* dir) {
        for (std::size_t i = 1; i + 1 < d.size(); ++i) {
            if (d[i + 1] > d[i] + 1e-9) {
                v.pass = false;
                v.failure = std::string("distance not monotone ") + dir + " after first checkpoint";
            }
        }
        if (d.back() > opts.final_bound) {
            v.pass = false;
            v.failure = std::string("final distance ") + std::to_string(d.back()) + " " + dir +
                        " exceeds bound";
        }
    };
    monotone_below(v.dist_forward, "forward");
    monotone_below(v.dist_backward, "backward");

    // flag passage through a center
    const double offset = component == Component::Earth ? pi : 0.0;
    for (const auto& sm : traj.samples) {
        const double axis_dist = std::abs(std::remainder(sm.state.nu - offset, 2.0 * pi));
        if (std::hypot(sm.state.lam, axis_dist) < 1e-6) {
            v.collision = true;
            break;
        }
    }

    // the collision axis of the component must be crossed exactly once
    const double nu_lo = traj.samples.front().state.nu;
    const double nu_hi = traj.samples.back().state.nu;
    v.rotation_count = axis_crossings(nu_lo, nu_hi, offset);
    if (!v.collision && v.rotation_count != 1) {
        v.pass = false;
        v.failure = "rotation count " + std::to_string(v.rotation_count) + " != 1";
    }
    return v;
}

std::vector<double> make_checkpoints(double c, const SystemParams& params, Component component,
                                     const VerifyOptions& opts) {
    const LeafData leaf = leaf_data(c, params);
    const double d0 = component == Component::Earth ? pi - leaf.nu_star : leaf.nu_star;
    double horizon = opts.horizon;
    if (horizon <= 0.0) {
        // the approach is exponential at the saddle rate; stop where the
        // predicted distance reaches the target, which keeps the whole run
        // inside the span a double-precision integration can shadow
        const double rate = lyapunov_saddle_rate(c, params);
        horizon = std::log(d0 / opts.target_distance) / rate;
    }
    std::vector<double> cps(opts.n_checkpoints);
    for (int i = 0; i < opts.n_checkpoints; ++i) {
        cps[i] = horizon / static_cast<double>(1 << (opts.n_checkpoints - 1 - i));
    }
    return cps;
}

} // namespace

double distance_to_nu_locus(double nu, double nu_star) {
    const double d_plus = std::abs(std::remainder(nu - nu_star, 2.0 * pi));
    const double d_minus = std::abs(std::remainder(nu + nu_star, 2.0 * pi));
    return std::min(d_plus, d_minus);
}

double lyapunov_saddle_rate(double c, const SystemParams& params) {
    const LeafData leaf = leaf_data(c, params);
    // linearized nu subsystem at the equilibrium: rate^2 = 4 |V''| = 8|c| sin^2(nu*)
    const double sin_star = std::sin(leaf.nu_star);
    return 2.0 * std::sqrt(2.0 * std::abs(c)) * sin_star;
}

LyapunovOrbit lyapunov_orbit(double c, const SystemParams& params) {
    const LeafData leaf = leaf_data(c, params);
    const EnergyMomentum pt{leaf.g_c, c};
    const RootData roots = solve_roots(pt, params);
    const double lam2 = std::acosh(roots.xi_range->hi);

    SubsystemCell lam_cell;
    lam_cell.which = Subsystem::Lambda;
    lam_cell.kind = CellKind::LibrationThroughAxis;
    lam_cell.lo = -lam2;
    lam_cell.hi = lam2;
    const double period = cell_period(lam_cell, pt, params);

    DoubledState start;
    start.lam = 0.0;
    start.nu = leaf.nu_star;
    start.p_lam = std::sqrt(0.5 * (c + 2.0 + leaf.g_c));
    start.p_nu = 0.0;

    LyapunovOrbit orbit;
    orbit.c = c;
    orbit.g_c = leaf.g_c;
    orbit.nu_star = leaf.nu_star;
    orbit.lambda_period = period;
    orbit.trajectory = integrate(start, params, c, period);

    double max_dev = 0.0;
    for (const auto& sm : orbit.trajectory.samples) {
        max_dev = std::max(max_dev, std::abs(sm.state.nu - leaf.nu_star));
    }
    if (max_dev > 1e-8) {
        throw VerificationFailure("orbit left the nu equilibrium by " + std::to_string(max_dev));
    }
    return orbit;
}

CollisionMomenta collision_momenta(double c, const SystemParams& params) {
    require_lyapunov_band(c, params);
    const double d = params.delta;
    CollisionMomenta m;
    m.p_lambda_sq = (c * c + 2.0 * c + d * d) / (2.0 * c);
    m.p_nu_sq_moon = (c + d) * (c + d) / (-2.0 * c);
    m.p_nu_sq_earth = (c - d) * (c - d) / (-2.0 * c);
    return m;
}

Trajectory leaf_orbit(double c, const SystemParams& params, Component component,
                      double lambda_frac, int lambda_sign, int nu_sign, double s_span) {
    const LeafData leaf = leaf_data(c, params);
    if (component == Component::Both) throw DomainError("pick one leaf component");
    const EnergyMomentum pt{leaf.g_c, c};
    const RootData roots = solve_roots(pt, params);
    const double lam2 = std::acosh(roots.xi_range->hi);

    DoubledState start;
    start.lam = -lam2 + lambda_frac * 2.0 * lam2;
    start.nu = component == Component::Earth ? pi : 0.0;
    const double ch = std::cosh(start.lam), cn = std::cos(start.nu);
    start.p_lam = lambda_sign * std::sqrt(std::max(0.0, 0.5 * (c * ch * ch + 2.0 * ch + leaf.g_c)));
    start.p_nu =
        nu_sign * std::sqrt(std::max(0.0, 0.5 * (-c * cn * cn - 2.0 * params.delta * cn - leaf.g_c)));
    return integrate_bidirectional(start, params, c, s_span);
}

HomoclinicReport verify_homoclinic(double c, const SystemParams& params, Component component,
                                   VerifyOptions opts) {
    const std::vector<double> cps = make_checkpoints(c, params, component, opts);
    const double span = cps.back();

    HomoclinicReport report;
    report.mu = params.mu;
    report.c = c;
    report.component = component;
    report.verdict = true;

    SplitMix64 rng(opts.seed);
    for (int i = 0; i < opts.n_orbits; ++i) {
        const double lambda_frac = rng.uniform(0.05, 0.95);
        const int lambda_sign = rng.next_u64() & 1 ? +1 : -1;
        const int nu_sign = rng.next_u64() & 1 ? +1 : -1;
        const Trajectory traj = leaf_orbit(c, params, component, lambda_frac, lambda_sign,
                                           nu_sign, span);
        OrbitVerification v =
            verify_one(traj, c, params, component, cps, opts, lambda_frac, lambda_sign, nu_sign);
        report.verdict = report.verdict && v.pass;
        report.orbits.push_back(std::move(v));
    }
    return report;
}

CollisionHomoclinic collision_homoclinic(double c, const SystemParams& params, Component focus,
                                         VerifyOptions opts) {
    if (focus == Component::Both) throw DomainError("pick one center");
    const CollisionMomenta m = collision_momenta(c, params);

    DoubledState start;
    start.lam = 0.0;
    start.nu = focus == Component::Earth ? pi : 0.0;
    start.p_lam = std::sqrt(m.p_lambda_sq);
    start.p_nu = std::sqrt(focus == Component::Earth ? m.p_nu_sq_earth : m.p_nu_sq_moon);

    const std::vector<double> cps = make_checkpoints(c, params, focus, opts);
    Trajectory traj = integrate_bidirectional(start, params, c, cps.back());

    CollisionHomoclinic out;
    OrbitVerification v = verify_one(traj, c, params, focus, cps, opts, 0.5, +1, +1);
    v.collision = true;
    out.report.mu = params.mu;
    out.report.c = c;
    out.report.component = focus;
    out.report.verdict = v.pass;
    out.report.orbits.push_back(std::move(v));
    out.trajectory = std::move(traj);
    return out;
}

} // namespace twocenters
