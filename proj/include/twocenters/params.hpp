#ifndef TWOCENTERS_PARAMS_HPP
#define TWOCENTERS_PARAMS_HPP

namespace twocenters {

/// One phase-space point in Cartesian coordinates. The two centers sit at
/// E = (-1/2, 0) and M = (1/2, 0) in normalized units.
struct CartesianState {
    double q1 = 0.0;
    double q2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Mass ratio plus every derived critical constant of the problem.
/// Immutable after construction; safe to share across threads.
struct SystemParams {
    double mu;        ///< normalized mass ratio, in (0, 1/2]
    double delta;     ///< 1 - 2*mu
    double cJ;        ///< saddle energy, -1 - 2*sqrt(mu*(1-mu))
    double cE;        ///< elliptic transition energy, -1
    double cH;        ///< hyperbolic transition energy, -1 + 2*mu
    double saddle_q1; ///< abscissa of the saddle point between the centers
    bool mirrored;    ///< input mass ratio was > 1/2; configuration mirrored in q1
};

/// Builds SystemParams from a mass ratio in (0,1). Ratios above 1/2 are
/// normalized to 1-mu with the mirror flag set.
SystemParams make_params(double mu);

/// Total energy (1/2)|p|^2 - (1-mu)/|q-E| - mu/|q-M| of a Cartesian state.
/// Throws SingularityError at either center.
double hamiltonian_cartesian(const SystemParams& params, const CartesianState& state);

} // namespace twocenters

#endif
