#include "twocenters/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "twocenters/errors.hpp"

namespace twocenters {

RegularizedEnergy regularized_energy(const DoubledState& state, const SystemParams& params, double c) {
    const double ch = std::cosh(state.lam);
    const double cn = std::cos(state.nu);
    RegularizedEnergy out;
    out.c = c;
    out.q_lambda = 2.0 * state.p_lam * state.p_lam - 2.0 * ch - c * ch * ch;
    out.q_nu = 2.0 * state.p_nu * state.p_nu + 2.0 * params.delta * cn + c * cn * cn;
    return out;
}

std::array<double, 4> vector_field(const DoubledState& state, const SystemParams& params, double c) {
    const double ch = std::cosh(state.lam), sh = std::sinh(state.lam);
    const double cn = std::cos(state.nu), sn = std::sin(state.nu);
    return {
        4.0 * state.p_lam,
        4.0 * state.p_nu,
        2.0 * sh * (1.0 + c * ch),
        2.0 * sn * (params.delta + c * cn),
    };
}

namespace {

using Vec4 = std::array<double, 4>;

Vec4 axpy(const Vec4& y, double h, const Vec4& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

Vec4 field(const Vec4& y, const SystemParams& params, double c) {
    return vector_field(DoubledState{y[0], y[1], y[2], y[3]}, params, c);
}

// Dormand-Prince 5(4) coefficients
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// difference between the 5th and 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights for the degree-4 interpolant
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

} // namespace

DoubledState Trajectory::state_at(double s) const {
    if (dense.empty()) throw Error("trajectory has no dense segments");
    // steps are kept sorted by their left edge regardless of time direction
    auto begin_of = [](const DenseStep& st) { return st.h > 0.0 ? st.s0 : st.s0 + st.h; };
    auto end_of = [](const DenseStep& st) { return st.h > 0.0 ? st.s0 + st.h : st.s0; };
    const double lo = begin_of(dense.front());
    const double hi = end_of(dense.back());
    const double slack = 1e-9 * (1.0 + hi - lo);
    if (s < lo - slack || s > hi + slack) {
        throw DomainError("dense evaluation outside the covered span");
    }
    std::size_t a = 0, b = dense.size() - 1;
    while (a < b) {
        const std::size_t mid = (a + b + 1) / 2;
        if (begin_of(dense[mid]) <= s) a = mid; else b = mid - 1;
    }
    const DenseStep& st = dense[a];
    const double theta = std::clamp((s - st.s0) / st.h, 0.0, 1.0);
    const double th1 = 1.0 - theta;
    DoubledState out;
    double* comp[4] = {&out.lam, &out.nu, &out.p_lam, &out.p_nu};
    for (int i = 0; i < 4; ++i) {
        const auto& r = st.rcont[i];
        *comp[i] = r[0] + theta * (r[1] + th1 * (r[2] + theta * (r[3] + th1 * r[4])));
    }
    return out;
}

double Trajectory::max_abs_Q() const {
    double m = 0.0;
    for (const auto& sm : samples) m = std::max(m, std::abs(sm.Q));
    return m;
}

double Trajectory::max_abs_Q_lambda_drift() const {
    double m = 0.0;
    for (const auto& sm : samples) m = std::max(m, std::abs(sm.Q_lambda - g));
    return m;
}

Trajectory integrate(const DoubledState& initial, const SystemParams& params, double c,
                     double s_span, IntegrateOptions opts) {
    if (s_span == 0.0) throw DomainError("integration span must be nonzero");
    if (!(opts.tol > 0.0)) throw DomainError("tolerance must be positive");

    const RegularizedEnergy q0 = regularized_energy(initial, params, c);
    if (std::abs(q0.total()) > 1e-10) {
        throw NonzeroQError("initial state off the zero level: Q = " + std::to_string(q0.total()));
    }

    Trajectory traj;
    traj.c = c;
    traj.g = q0.q_lambda; // the leaf integral value
    const double drift_bound = 10.0 * opts.tol * std::abs(s_span);

    const double dir = s_span > 0.0 ? 1.0 : -1.0;
    Vec4 y = {initial.lam, initial.nu, initial.p_lam, initial.p_nu};
    double s = 0.0;

    auto push_sample = [&](double at, const Vec4& v) {
        const DoubledState st{v[0], v[1], v[2], v[3]};
        const RegularizedEnergy q = regularized_energy(st, params, c);
        traj.samples.push_back({at, st, wrap_angle(v[1]), q.total(), q.q_lambda});
        if (opts.check_drift && std::abs(q.total()) > std::max(drift_bound, 1e-13)) {
            throw ToleranceExceeded("|Q| = " + std::to_string(std::abs(q.total())) +
                                    " exceeded the acceptance bound at s = " + std::to_string(at));
        }
    };
    push_sample(0.0, y);

    Vec4 k1 = field(y, params, c);
    double h = dir * std::min(opts.max_step, 1e-2);
    double err_prev = 1.0;
    std::size_t steps = 0;

    while (dir * (s_span - s) > 0.0) {
        if (++steps > opts.max_steps) throw ToleranceExceeded("step budget exhausted");
        if (dir * (s + h - s_span) > 0.0) h = s_span - s;

        const Vec4 k2 = field(axpy(y, h * a21, k1), params, c);
        const Vec4 k3 = field({y[0] + h * (a31 * k1[0] + a32 * k2[0]),
                               y[1] + h * (a31 * k1[1] + a32 * k2[1]),
                               y[2] + h * (a31 * k1[2] + a32 * k2[2]),
                               y[3] + h * (a31 * k1[3] + a32 * k2[3])},
                              params, c);
        Vec4 tmp;
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec4 k4 = field(tmp, params, c);
        for (int i = 0; i < 4; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec4 k5 = field(tmp, params, c);
        for (int i = 0; i < 4; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const Vec4 k6 = field(tmp, params, c);
        Vec4 y_new;
        for (int i = 0; i < 4; ++i)
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const Vec4 k7 = field(y_new, params, c); // FSAL

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                   e7 * k7[i]);
            const double sc = opts.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y_new[i])));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / 4.0);

        if (err <= 1.0) {
            // accept: record dense coefficients, advance
            Trajectory::DenseStep dstep;
            dstep.s0 = s;
            dstep.h = h;
            for (int i = 0; i < 4; ++i) {
                const double dy = y_new[i] - y[i];
                const double bspl = h * k1[i] - dy;
                dstep.rcont[i][0] = y[i];
                dstep.rcont[i][1] = dy;
                dstep.rcont[i][2] = bspl;
                dstep.rcont[i][3] = dy - h * k7[i] - bspl;
                dstep.rcont[i][4] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                         d6 * k6[i] + d7 * k7[i]);
            }
            traj.dense.push_back(dstep);
            s += h;
            y = y_new;
            k1 = k7;
            push_sample(s, y);

            const double fac =
                0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            h *= std::clamp(fac, 0.2, 5.0);
            if (std::abs(h) > opts.max_step) h = dir * opts.max_step;
            err_prev = std::max(err, 1e-10);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return traj;
}

Trajectory integrate_bidirectional(const DoubledState& initial, const SystemParams& params,
                                   double c, double s_span, IntegrateOptions opts) {
    if (!(s_span > 0.0)) throw DomainError("bidirectional span must be positive");
    Trajectory bwd = integrate(initial, params, c, -s_span, opts);
    Trajectory fwd = integrate(initial, params, c, s_span, opts);

    Trajectory out;
    out.c = fwd.c;
    out.g = fwd.g;
    out.samples.assign(bwd.samples.rbegin(), bwd.samples.rend());
    out.samples.insert(out.samples.end(), fwd.samples.begin() + 1, fwd.samples.end());
    out.dense.assign(bwd.dense.rbegin(), bwd.dense.rend());
    out.dense.insert(out.dense.end(), fwd.dense.begin(), fwd.dense.end());
    return out;
}

DoubledState initial_state(const EnergyMomentum& pt, const SystemParams& params,
                           Component component, PhaseChoice phase) {
    const RootData roots = solve_roots(pt, params);
    if (!roots.xi_range.has_value() || roots.eta_ranges.empty()) {
        throw InadmissiblePoint("point carries no motion (forbidden region)");
    }
    if (phase.lambda_frac < 0.0 || phase.lambda_frac > 1.0 || phase.nu_frac < 0.0 ||
        phase.nu_frac > 1.0) {
        throw DomainError("phase fractions must lie in [0, 1]");
    }

    // lambda placement from the admissible xi interval
    const Interval xr = *roots.xi_range;
    double lam;
    if (xr.lo <= 1.0) {
        // symmetric cell through lam = 0
        const double lam2 = std::acosh(xr.hi);
        lam = -lam2 + phase.lambda_frac * 2.0 * lam2;
    } else {
        const double lam1 = std::acosh(xr.lo), lam2 = std::acosh(xr.hi);
        lam = lam1 + phase.lambda_frac * (lam2 - lam1);
    }

    // nu placement inside the requested component's admissible arc
    double nu;
    const bool eta_full = roots.eta_ranges.size() == 1 && roots.eta_ranges[0].lo == -1.0 &&
                          roots.eta_ranges[0].hi == 1.0;
    if (eta_full) {
        nu = -std::numbers::pi + phase.nu_frac * 2.0 * std::numbers::pi;
    } else if (component == Component::Moon) {
        if (roots.eta_ranges.size() < 2) {
            throw InadmissiblePoint("no Moon-side motion at this point");
        }
        const double nu_b = std::acos(roots.eta_ranges[1].lo); // arc [-nu_b, nu_b] through 0
        nu = -nu_b + phase.nu_frac * 2.0 * nu_b;
    } else {
        // Earth arc [arccos(eta1), 2 pi - arccos(eta1)] through pi
        const double nu_a = std::acos(roots.eta_ranges[0].hi);
        nu = nu_a + phase.nu_frac * 2.0 * (std::numbers::pi - nu_a);
    }

    const double ch = std::cosh(lam), cn = std::cos(nu);
    const double p_lam_sq = 0.5 * (pt.c * ch * ch + 2.0 * ch + pt.g);
    const double p_nu_sq = 0.5 * (-pt.c * cn * cn - 2.0 * params.delta * cn - pt.g);
    DoubledState out;
    out.lam = lam;
    out.nu = nu;
    out.p_lam = phase.lambda_sign * std::sqrt(std::max(0.0, p_lam_sq));
    out.p_nu = phase.nu_sign * std::sqrt(std::max(0.0, p_nu_sq));
    // cell endpoints are turning points; pin the momentum there exactly
    const bool lam_turning = phase.lambda_frac == 0.0 || phase.lambda_frac == 1.0;
    const bool nu_turning = !eta_full && (phase.nu_frac == 0.0 || phase.nu_frac == 1.0);
    if (lam_turning && xr.width() > 0.0) out.p_lam = 0.0;
    if (nu_turning) out.p_nu = 0.0;
    return out;
}

} // namespace twocenters
