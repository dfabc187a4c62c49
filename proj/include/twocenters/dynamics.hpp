#ifndef TWOCENTERS_DYNAMICS_HPP
#define TWOCENTERS_DYNAMICS_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "twocenters/bifurcation.hpp"
#include "twocenters/coords.hpp"
#include "twocenters/params.hpp"

namespace twocenters {

/// Split values of the regularized Hamiltonian
///   Q = 2 p_lam^2 - 2 cosh(lam) - c cosh^2(lam)
///     + 2 p_nu^2 + 2(1-2mu) cos(nu) + c cos^2(nu).
/// On the leaf (g, c): q_lambda = g, q_nu = -g, Q = 0.
struct RegularizedEnergy {
    double c;
    double q_lambda;
    double q_nu;
    double total() const { return q_lambda + q_nu; }
};

RegularizedEnergy regularized_energy(const DoubledState& state, const SystemParams& params, double c);

/// Hamiltonian vector field of Q in canonical doubled coordinates:
///   lam' = 4 p_lam, nu' = 4 p_nu,
///   p_lam' = 2 sinh(lam)(1 + c cosh(lam)),
///   p_nu'  = 2 sin(nu)((1-2mu) + c cos(nu)).
/// Globally regular; the independent variable is the reparametrized time s.
std::array<double, 4> vector_field(const DoubledState& state, const SystemParams& params, double c);

struct TrajectorySample {
    double s;
    DoubledState state;   ///< nu holds the unwrapped value
    double nu_wrapped;
    double Q;
    double Q_lambda;
};

/// Output of the regularized integrator: accepted steps plus a dense
/// interpolant that evaluates the state anywhere inside the covered span.
class Trajectory {
public:
    std::vector<TrajectorySample> samples;
    double g = 0.0; ///< leaf integral value the run was started on
    double c = 0.0;

    double s_begin() const { return samples.front().s; }
    double s_end() const { return samples.back().s; }

    /// Dense-output evaluation; s must lie inside the covered span.
    DoubledState state_at(double s) const;

    double max_abs_Q() const;
    double max_abs_Q_lambda_drift() const;

    // one quartic interpolant per accepted step, filled by the integrator
    struct DenseStep {
        double s0, h;
        std::array<std::array<double, 5>, 4> rcont;
    };
    std::vector<DenseStep> dense;
};

struct IntegrateOptions {
    double tol = 1e-12;      ///< both relative and absolute local error weight
    double max_step = 1.0;
    std::size_t max_steps = 50'000'000;
    bool check_drift = true; ///< enforce |Q| <= 10 * tol * |span| at every sample
};

/// Integrates the regularized flow from `initial` over [0, s_span] (backward
/// when s_span < 0) with an adaptive embedded 5(4) pair, PI step control and
/// quartic dense output. nu is integrated unwrapped. Conservation is
/// monitored, never enforced: throws NonzeroQ if |Q(initial)| > 1e-10 and
/// ToleranceExceeded when the drift bound fails.
Trajectory integrate(const DoubledState& initial, const SystemParams& params, double c,
                     double s_span, IntegrateOptions opts = {});

/// Runs integrate over [-s_span, 0] and [0, s_span] and merges the results
/// into one trajectory with samples ordered by s.
Trajectory integrate_bidirectional(const DoubledState& initial, const SystemParams& params,
                                   double c, double s_span, IntegrateOptions opts = {});

/// Phase placement inside the admissible cells plus momentum signs.
/// Fractions are cell coordinates in [0, 1]; 1/2 is the cell midpoint, which
/// for the nu cell of either component is the collision axis.
struct PhaseChoice {
    double lambda_frac = 0.5;
    double nu_frac = 0.5;
    int lambda_sign = +1;
    int nu_sign = +1;
};

/// A doubled state on the leaf (g, c) with |Q| at rounding level by
/// construction. Throws InadmissiblePoint if the point is forbidden or the
/// chosen component carries no motion there.
DoubledState initial_state(const EnergyMomentum& pt, const SystemParams& params,
                           Component component = Component::Earth, PhaseChoice phase = {});

} // namespace twocenters

#endif
