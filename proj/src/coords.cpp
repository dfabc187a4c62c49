#include "twocenters/coords.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "twocenters/errors.hpp"

namespace twocenters {

namespace {

constexpr double clip_tol = 1e-14;

double clip_to(double x, double lo, double hi, const char* what) {
    if (x < lo) {
        if (x < lo - clip_tol) throw ChartSingularity(std::string(what) + " outside chart domain");
        return lo;
    }
    if (x > hi) {
        if (x > hi + clip_tol) throw ChartSingularity(std::string(what) + " outside chart domain");
        return hi;
    }
    return x;
}

} // namespace

double wrap_angle(double nu) {
    double w = std::remainder(nu, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

std::array<double, 2> elliptic_positions(const CartesianState& state) {
    const double rE = std::hypot(state.q1 + 0.5, state.q2);
    const double rM = std::hypot(state.q1 - 0.5, state.q2);
    if (rE == 0.0 || rM == 0.0) throw SingularityError("position coincides with a center");
    return {rE + rM, rE - rM};
}

EllipticState to_elliptic(const CartesianState& state) {
    const double rE = std::hypot(state.q1 + 0.5, state.q2);
    const double rM = std::hypot(state.q1 - 0.5, state.q2);
    if (rE == 0.0 || rM == 0.0) throw SingularityError("position coincides with a center");
    const double xi = rE + rM;
    const double eta = rE - rM;

    // gradients of xi and eta are uE + uM and uE - uM (unit vectors from the centers)
    const double uEx = (state.q1 + 0.5) / rE, uEy = state.q2 / rE;
    const double uMx = (state.q1 - 0.5) / rM, uMy = state.q2 / rM;
    const double a11 = uEx + uMx, a21 = uEy + uMy; // grad xi
    const double a12 = uEx - uMx, a22 = uEy - uMy; // grad eta
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-12) {
        throw ChartSingularity("momentum transform singular on the focal axis (xi=1 or |eta|=1)");
    }
    // solve p = p_xi grad(xi) + p_eta grad(eta)
    EllipticState out;
    out.xi = xi;
    out.eta = eta;
    out.p_xi = (state.p1 * a22 - state.p2 * a12) / det;
    out.p_eta = (state.p2 * a11 - state.p1 * a21) / det;
    return out;
}

DoubledState to_doubled(const EllipticState& state, BranchSelector branch) {
    const double xi = state.xi < 1.0 ? clip_to(state.xi, 1.0, std::numeric_limits<double>::infinity(), "xi") : state.xi;
    const double eta = clip_to(state.eta, -1.0, 1.0, "eta");

    DoubledState out;
    out.lam = branch.lam_sign * std::acosh(xi);
    out.nu = branch.nu_sign * std::acos(eta);
    const double sh = std::sinh(out.lam);
    const double sn = std::sin(out.nu);
    // at a center both factors vanish; momenta pinned to zero by continuity
    out.p_lam = state.p_xi * sh;
    out.p_nu = -state.p_eta * sn;
    if (xi == 1.0 && std::abs(eta) == 1.0) {
        out.p_lam = 0.0;
        out.p_nu = 0.0;
    }
    return out;
}

CartesianState to_cartesian(const DoubledState& state) {
    const double ch = std::cosh(state.lam), sh = std::sinh(state.lam);
    const double cn = std::cos(state.nu), sn = std::sin(state.nu);
    CartesianState out;
    out.q1 = 0.5 * ch * cn;
    out.q2 = 0.5 * sh * sn;

    // p_q = J^{-T} (p_lam, p_nu), J = d(q1,q2)/d(lam,nu)
    const double j11 = 0.5 * sh * cn, j12 = -0.5 * ch * sn;
    const double j21 = 0.5 * ch * sn, j22 = 0.5 * sh * cn;
    const double det = j11 * j22 - j12 * j21; // (cosh^2 - cos^2)/4
    if (std::abs(det) < 1e-15) throw ChartSingularity("momentum transform singular at a center");
    out.p1 = (j22 * state.p_lam - j21 * state.p_nu) / det;
    out.p2 = (-j12 * state.p_lam + j11 * state.p_nu) / det;
    return out;
}

CartesianState to_cartesian(const EllipticState& state, int sheet) {
    BranchSelector branch;
    branch.lam_sign = +1;
    branch.nu_sign = sheet >= 0 ? +1 : -1;
    return to_cartesian(to_doubled(state, branch));
}

EllipticState to_elliptic(const DoubledState& state) {
    const double sh = std::sinh(state.lam);
    const double sn = std::sin(state.nu);
    if (std::abs(sh) < 1e-14 || std::abs(sn) < 1e-14) {
        throw ChartSingularity("single-cover momenta undefined on the axes");
    }
    EllipticState out;
    out.xi = std::cosh(state.lam);
    out.eta = std::cos(state.nu);
    out.p_xi = state.p_lam / sh;
    out.p_eta = -state.p_nu / sn;
    return out;
}

ConservedPair evaluate_H_G(const CartesianState& state, const SystemParams& params) {
    ConservedPair out;
    out.h_value = hamiltonian_cartesian(params, state);
    // evaluate G through the elliptic chart; off-axis states only
    const EllipticState es = to_elliptic(state);
    return ConservedPair{out.h_value, evaluate_H_G(es, params).g_value};
}

ConservedPair evaluate_H_G(const EllipticState& state, const SystemParams& params) {
    const double xi = state.xi, eta = state.eta;
    const double denom = xi * xi - eta * eta;
    if (denom < 1e-14) throw ChartSingularity("H and G undefined at the centers (xi = |eta|)");
    const double H_xi = 2.0 * (xi * xi - 1.0) * state.p_xi * state.p_xi - 2.0 * xi;
    const double H_eta = 2.0 * (1.0 - eta * eta) * state.p_eta * state.p_eta + 2.0 * params.delta * eta;
    ConservedPair out;
    out.h_value = (H_xi + H_eta) / denom;
    out.g_value = -(eta * eta * H_xi + xi * xi * H_eta) / denom;
    return out;
}

ConservedPair evaluate_H_G(const DoubledState& state, const SystemParams& params) {
    const double ch = std::cosh(state.lam), cn = std::cos(state.nu);
    const double denom = ch * ch - cn * cn;
    if (denom < 1e-14) throw ChartSingularity("H and G undefined at the centers");
    const double H_lam = 2.0 * state.p_lam * state.p_lam - 2.0 * ch;
    const double H_nu = 2.0 * state.p_nu * state.p_nu + 2.0 * params.delta * cn;
    ConservedPair out;
    out.h_value = (H_lam + H_nu) / denom;
    out.g_value = -(H_lam * cn * cn + H_nu * ch * ch) / denom;
    return out;
}

} // namespace twocenters
