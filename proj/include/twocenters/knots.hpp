#ifndef TWOCENTERS_KNOTS_HPP
#define TWOCENTERS_KNOTS_HPP

#include "twocenters/dynamics.hpp"
#include "twocenters/quadrature.hpp"

namespace twocenters {

struct ClosureResult {
    double time;
    double residual; ///< max-norm over the four doubled coordinates, nu on the circle
};

/// Refines the return of a trajectory to its initial state near the
/// predicted closure time (searched within +-5%). Throws NoClosure when the
/// best residual exceeds tol.
ClosureResult detect_closure(const Trajectory& traj, double predicted_time, double tol = 1e-6);

struct WindingCounts {
    int k_nu;     ///< completed (nu, p_nu) cycles over one closure
    int l_lambda; ///< completed (lam, p_lam) cycles
};

/// Cycle counts over [s_begin, closure_time], each computed two ways
/// (momentum sign pairs and phase-angle winding; rotations additionally by
/// unwrapped nu). Throws InconsistentCounts if the methods disagree.
WindingCounts winding_counts(const Trajectory& traj, double closure_time);

/// Certificate that a periodic orbit on the rational torus through `pt`
/// closes up as a (k, l) torus knot: k nu-cycles, l lambda-cycles,
/// gcd(k, l) = 1, k/l equal to the rotation number.
struct KnotCertificate {
    EnergyMomentum point;
    int k_observed;
    int l_observed;
    double closure_residual;
    double rotation_residual; ///< |k/l - R|
    bool pass;
};

/// End-to-end certification at a point with rational rotation number
/// (normally produced by solve_family). Restricted to c < cJ, where the
/// regularized component is a three-sphere; throws BandError otherwise.
KnotCertificate certify_knot(const EnergyMomentum& pt, const SystemParams& params,
                             Component component = Component::Earth,
                             double lambda_frac = 0.37, double nu_frac = 0.5,
                             int lambda_sign = +1, int nu_sign = +1);

} // namespace twocenters

#endif
