#ifndef TWOCENTERS_COORDS_HPP
#define TWOCENTERS_COORDS_HPP

#include <array>

#include "twocenters/params.hpp"

namespace twocenters {

/// Confocal chart built from the two center distances:
/// xi = |q-E| + |q-M| >= 1, eta = |q-E| - |q-M| in [-1, 1].
/// Covers the closed upper half plane; positions are mirror-blind in q2.
struct EllipticState {
    double xi = 1.0;
    double eta = 0.0;
    double p_xi = 0.0;
    double p_eta = 0.0;
};

/// Double cover of the elliptic chart: xi = cosh(lam), eta = cos(nu),
/// (lam, nu) in R x [-pi, pi]. The regularized flow is smooth everywhere here.
struct DoubledState {
    double lam = 0.0;
    double nu = 0.0;
    double p_lam = 0.0;
    double p_nu = 0.0;
};

/// Energy and second integral evaluated on one state.
struct ConservedPair {
    double h_value = 0.0;
    double g_value = 0.0;
};

/// Sign choices for lifting to the double cover.
struct BranchSelector {
    int lam_sign = +1;
    int nu_sign = +1;
};

/// Position part of the elliptic chart; total on the plane minus the centers.
std::array<double, 2> elliptic_positions(const CartesianState& state);

/// Full chart change Cartesian -> elliptic. Momenta come from the inverse
/// transpose Jacobian so p.dq is preserved. Throws ChartSingularity on the
/// axis loci xi = 1 or |eta| = 1 where the Jacobian is singular.
EllipticState to_elliptic(const CartesianState& state);

/// Lift to the double cover with the requested sign branch. Domain clipping
/// of 1e-14 absorbs rounding at |eta| = 1, xi = 1; at an exact center the
/// momenta are pinned to zero by continuity.
DoubledState to_doubled(const EllipticState& state, BranchSelector branch = {});

/// Chart change doubled -> Cartesian; defined everywhere except the centers.
CartesianState to_cartesian(const DoubledState& state);

/// Elliptic -> Cartesian on the chosen half plane (sheet = sign of q2).
CartesianState to_cartesian(const EllipticState& state, int sheet = +1);

/// Projection of a doubled state back to the single cover. Throws
/// ChartSingularity where sinh(lam) or sin(nu) vanish (momenta undefined).
EllipticState to_elliptic(const DoubledState& state);

/// (H, G) in each chart. The three evaluations agree off the chart
/// singularities; the doubled form is regular everywhere except the centers.
ConservedPair evaluate_H_G(const CartesianState& state, const SystemParams& params);
ConservedPair evaluate_H_G(const EllipticState& state, const SystemParams& params);
ConservedPair evaluate_H_G(const DoubledState& state, const SystemParams& params);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double nu);

} // namespace twocenters

#endif
