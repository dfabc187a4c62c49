#ifndef TWOCENTERS_HOMOCLINIC_HPP
#define TWOCENTERS_HOMOCLINIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twocenters/dynamics.hpp"

namespace twocenters {

/// The unstable periodic orbit with nu frozen at the double root of the
/// angular quartic; exists for c in (cJ, cH) and mu != 1/2.
struct LyapunovOrbit {
    double c;
    double g_c;      ///< (1-2mu)^2 / c, the integral value of the orbit
    double nu_star;  ///< arccos(-(1-2mu)/c), in (0, pi/2)
    double lambda_period;
    Trajectory trajectory; ///< one lambda period, nu held at nu_star
};

/// Constructs the orbit and integrates one period to confirm nu stationarity.
/// Throws BandError outside (cJ, cH) and ExplicitlyDegenerate at mu = 1/2.
LyapunovOrbit lyapunov_orbit(double c, const SystemParams& params);

/// Exponential rate of approach to the nu equilibrium: 2*sqrt(|V''(nu*)|)
/// with V the angular potential 2(1-2mu)cos(nu) + c cos^2(nu).
double lyapunov_saddle_rate(double c, const SystemParams& params);

/// One orbit of the singular leaf (g_c, c): nu starts strictly inside the
/// component arc (default at the collision axis, the farthest point from the
/// equilibrium), lambda at the given cell fraction. Integrated over
/// [-s_span, s_span] when s_span > 0.
Trajectory leaf_orbit(double c, const SystemParams& params, Component component,
                      double lambda_frac, int lambda_sign, int nu_sign, double s_span);

/// Squared momenta of the leaf orbit through a center:
///   p_lam^2 = (c^2 + 2c + (1-2mu)^2) / (2c)
///   p_nu^2  = (c +- (1-2mu))^2 / (-2c)   (+ at the Moon, - at the Earth)
/// All strictly positive inside (cJ, cH).
struct CollisionMomenta {
    double p_lambda_sq;
    double p_nu_sq_moon;  ///< at cos(nu) = +1
    double p_nu_sq_earth; ///< at cos(nu) = -1
};

CollisionMomenta collision_momenta(double c, const SystemParams& params);

/// Distances to the Lyapunov nu locus at geometric checkpoints, in both time
/// directions, plus the crossing count of the component's collision axis.
struct OrbitVerification {
    double lambda_frac;
    int lambda_sign;
    int nu_sign;
    std::vector<double> checkpoint_s;
    std::vector<double> dist_forward;
    std::vector<double> dist_backward;
    int rotation_count;
    bool collision;
    bool pass;
    std::string failure;
};

struct HomoclinicReport {
    double mu;
    double c;
    Component component;
    std::vector<OrbitVerification> orbits;
    bool verdict;
};

struct VerifyOptions {
    int n_orbits = 20;
    std::uint64_t seed = 0x5eed2c3d1ULL;
    /// Final distance the run must reach; checkpoints end where the
    /// linearized approach predicts target_distance.
    double target_distance = 1e-6;
    double final_bound = 1e-4;   ///< pass requires final distance <= this
    int n_checkpoints = 5;
    /// Explicit final horizon; <= 0 selects it from the saddle rate so the
    /// run stays inside the span a binary64 integration can shadow.
    double horizon = 0.0;
};

/// Certifies that leaf orbits approach the Lyapunov nu locus in both time
/// directions (monotone distances after the first checkpoint, final distance
/// within bound) and cross the component's collision axis exactly once.
HomoclinicReport verify_homoclinic(double c, const SystemParams& params, Component component,
                                   VerifyOptions opts = {});

/// The leaf orbit launched exactly at a center with the closed-form momenta.
/// Returns the bidirectional trajectory plus a single-orbit report with the
/// collision flag set.
struct CollisionHomoclinic {
    Trajectory trajectory;
    HomoclinicReport report;
};

CollisionHomoclinic collision_homoclinic(double c, const SystemParams& params,
                                         Component focus, VerifyOptions opts = {});

/// Circle distance of an angle to the set {+nu_star, -nu_star}.
double distance_to_nu_locus(double nu, double nu_star);

} // namespace twocenters

#endif
