#include "twocenters/knots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "twocenters/errors.hpp"

namespace twocenters {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double circle_dist(double a, double b) { return std::abs(std::remainder(a - b, two_pi)); }

/// Max-norm distance between states, nu compared on the circle.
double state_distance(const DoubledState& a, const DoubledState& b) {
    return std::max({std::abs(a.lam - b.lam), circle_dist(a.nu, b.nu),
                     std::abs(a.p_lam - b.p_lam), std::abs(a.p_nu - b.p_nu)});
}

/// Squared euclidean variant used for smooth refinement.
double state_distance_sq(const DoubledState& a, const DoubledState& b) {
    const double d0 = a.lam - b.lam;
    const double d1 = std::remainder(a.nu - b.nu, two_pi);
    const double d2 = a.p_lam - b.p_lam;
    const double d3 = a.p_nu - b.p_nu;
    return d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3;
}

/// Continued-fraction reconstruction of a rational near x.
std::pair<int, int> rational_approx(double x, int max_den, double tol) {
    int best_num = 1, best_den = 1;
    double best_err = std::abs(x - 1.0);
    for (int den = 1; den <= max_den; ++den) {
        const int num = static_cast<int>(std::lround(x * den));
        if (num <= 0) continue;
        const double err = std::abs(x - static_cast<double>(num) / den);
        if (err < best_err) {
            best_err = err;
            best_num = num;
            best_den = den;
        }
        if (best_err <= tol) break;
    }
    const int q = std::gcd(best_num, best_den);
    return {best_num / q, best_den / q};
}

/// Times where fn changes sign from positive to non-positive, refined by
/// bisection on the dense output.
template <typename F>
std::vector<double> descending_zeros(const Trajectory& traj, double s_lo, double s_hi, F fn) {
    std::vector<double> zeros;
    const int n_probe = static_cast<int>(std::max(256.0, 48.0 * (s_hi - s_lo)));
    double s_prev = s_lo, f_prev = fn(traj.state_at(s_lo));
    for (int i = 1; i <= n_probe; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / n_probe;
        const double f = fn(traj.state_at(s));
        if (f_prev > 0.0 && f <= 0.0) {
            double a = s_prev, b = s;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                if (fn(traj.state_at(m)) > 0.0) a = m; else b = m;
            }
            zeros.push_back(0.5 * (a + b));
        }
        s_prev = s;
        f_prev = f;
    }
    return zeros;
}

} // namespace

ClosureResult detect_closure(const Trajectory& traj, double predicted_time, double tol) {
    if (!(predicted_time > 0.0)) throw DomainError("predicted closure time must be positive");
    const DoubledState start = traj.state_at(traj.s_begin() >= 0.0 ? traj.s_begin() : 0.0);
    const double lo = std::max(0.95 * predicted_time, traj.s_begin());
    const double hi = std::min(1.05 * predicted_time, traj.s_end());
    if (!(lo < hi)) throw DomainError("trajectory does not cover the predicted closure window");

    // coarse scan for the nearest return, then ternary refinement
    const int n = 4000;
    double best_s = lo, best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double s = lo + (hi - lo) * i / n;
        const double d = state_distance_sq(traj.state_at(s), start);
        if (d < best_d) {
            best_d = d;
            best_s = s;
        }
    }
    double a = std::max(lo, best_s - (hi - lo) / n);
    double b = std::min(hi, best_s + (hi - lo) / n);
    for (int it = 0; it < 200 && b - a > 1e-14 * predicted_time; ++it) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (state_distance_sq(traj.state_at(m1), start) <
            state_distance_sq(traj.state_at(m2), start)) {
            b = m2;
        } else {
            a = m1;
        }
    }
    const double s_star = 0.5 * (a + b);
    const double residual = state_distance(traj.state_at(s_star), start);
    if (residual > tol) {
        throw NoClosure("best return residual " + std::to_string(residual) + " at s = " +
                        std::to_string(s_star) + " exceeds tolerance");
    }
    return ClosureResult{s_star, residual};
}

WindingCounts winding_counts(const Trajectory& traj, double closure_time) {
    const double s0 = 1e-9 * closure_time; // nudge off the start to avoid the closing event
    const double s1 = closure_time - 1e-9 * closure_time;

    // scales and centers for phase-angle normalization, from the samples
    double lam_min = traj.samples.front().state.lam, lam_max = lam_min;
    double eta_min = 1.0, eta_max = -1.0;
    double p_lam_max = 0.0, p_nu_max = 0.0;
    for (const auto& sm : traj.samples) {
        if (sm.s < 0.0 || sm.s > closure_time) continue;
        lam_min = std::min(lam_min, sm.state.lam);
        lam_max = std::max(lam_max, sm.state.lam);
        eta_min = std::min(eta_min, std::cos(sm.state.nu));
        eta_max = std::max(eta_max, std::cos(sm.state.nu));
        p_lam_max = std::max(p_lam_max, std::abs(sm.state.p_lam));
        p_nu_max = std::max(p_nu_max, std::abs(sm.state.p_nu));
    }

    auto winding_of = [&](auto coord, auto mom, double center, double x_scale, double p_scale) {
        const int n = static_cast<int>(std::max(2048.0, 384.0 * closure_time));
        double angle_prev = 0.0, total = 0.0;
        for (int i = 0; i <= n; ++i) {
            const DoubledState y = traj.state_at(s0 + (s1 - s0) * i / n);
            const double angle = std::atan2(mom(y) / p_scale, (coord(y) - center) / x_scale);
            if (i > 0) total += std::remainder(angle - angle_prev, two_pi);
            angle_prev = angle;
        }
        return static_cast<int>(std::lround(std::abs(total) / two_pi));
    };

    // lambda cycles two ways: descending momentum zeros, and winding of the
    // normalized phase angle around the cell center
    const auto lam_zeros =
        descending_zeros(traj, s0, s1, [](const DoubledState& y) { return y.p_lam; });
    const int l_zero_count = static_cast<int>(lam_zeros.size());
    const int l_winding = winding_of(
        [](const DoubledState& y) { return y.lam; },
        [](const DoubledState& y) { return y.p_lam; }, 0.5 * (lam_min + lam_max),
        std::max(0.5 * (lam_max - lam_min), 1e-12), std::max(p_lam_max, 1e-12));
    if (l_zero_count != l_winding) {
        throw InconsistentCounts("lambda cycle counts disagree: " + std::to_string(l_zero_count) +
                                 " vs " + std::to_string(l_winding));
    }

    // nu cycles: rotations by unwrapped angle cross-checked against crossings
    // of the antipodal circle level; librations by momentum sign pairs
    // cross-checked against the phase winding
    const DoubledState y_begin = traj.state_at(s0), y_end = traj.state_at(s1);
    const bool rotation = std::abs(y_end.nu - y_begin.nu) > std::numbers::pi;
    int k_primary, k_secondary;
    if (rotation) {
        k_primary = static_cast<int>(std::lround(std::abs(y_end.nu - y_begin.nu) / two_pi));
        const double level = y_begin.nu + std::numbers::pi;
        const double lo = std::min(y_begin.nu, y_end.nu), hi = std::max(y_begin.nu, y_end.nu);
        int crossings = 0;
        for (double m = std::ceil((lo - level) / two_pi); level + two_pi * m < hi; ++m) {
            if (level + two_pi * m > lo) ++crossings;
        }
        k_secondary = crossings;
    } else {
        const auto nu_zeros =
            descending_zeros(traj, s0, s1, [](const DoubledState& y) { return y.p_nu; });
        k_primary = static_cast<int>(nu_zeros.size());
        // the libration straddles exactly one collision axis; its side shows
        // in the sign of the sampled eta midpoint
        const double nu_center = eta_min + eta_max < 0.0 ? std::numbers::pi : 0.0;
        k_secondary = winding_of(
            [&](const DoubledState& y) { return std::remainder(y.nu - nu_center, two_pi); },
            [](const DoubledState& y) { return y.p_nu; }, 0.0, std::numbers::pi,
            std::max(p_nu_max, 1e-12));
    }
    if (k_primary != k_secondary) {
        throw InconsistentCounts("nu cycle counts disagree: " + std::to_string(k_primary) +
                                 " vs " + std::to_string(k_secondary));
    }
    return WindingCounts{k_primary, l_zero_count};
}

KnotCertificate certify_knot(const EnergyMomentum& pt, const SystemParams& params,
                             Component component, double lambda_frac, double nu_frac,
                             int lambda_sign, int nu_sign) {
    if (!(pt.c < params.cJ)) {
        throw BandError("knot certification is restricted to c < cJ where each regularized "
                        "component is a three-sphere");
    }
    const RegionLabel label = classify(pt, params);
    if (label.kind != Region::Satellite && label.kind != Region::SPrime) {
        throw BandError("point must carry satellite-type tori");
    }

    const RotationNumber rot = rotation_number(pt, params, component);
    const auto [k, l] = rational_approx(rot.value, 200, 1e-9);

    PhaseChoice phase;
    phase.lambda_frac = lambda_frac;
    phase.nu_frac = nu_frac;
    phase.lambda_sign = lambda_sign;
    phase.nu_sign = nu_sign;
    const DoubledState start = initial_state(pt, params, component, phase);

    const double predicted = l * rot.t_lambda;
    Trajectory traj = integrate(start, params, pt.c, 1.07 * predicted);

    const ClosureResult closure = detect_closure(traj, predicted, 1e-6);
    const WindingCounts counts = winding_counts(traj, closure.time);

    KnotCertificate cert;
    cert.point = pt;
    cert.k_observed = counts.k_nu;
    cert.l_observed = counts.l_lambda;
    cert.closure_residual = closure.residual;
    if (counts.k_nu <= 0 || counts.l_lambda <= 0) {
        cert.rotation_residual = std::numeric_limits<double>::infinity();
        cert.pass = false;
        return cert;
    }
    cert.rotation_residual = std::abs(static_cast<double>(counts.k_nu) / counts.l_lambda - rot.value);
    cert.pass = std::gcd(counts.k_nu, counts.l_lambda) == 1 && closure.residual <= 1e-6 &&
                cert.rotation_residual <= 1e-8 && counts.k_nu == k && counts.l_lambda == l;
    return cert;
}

} // namespace twocenters
