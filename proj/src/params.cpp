#include "twocenters/params.hpp"

#include <cmath>

#include "twocenters/errors.hpp"

namespace twocenters {

SystemParams make_params(double mu) {
    if (!(mu > 0.0) || !(mu < 1.0)) {
        throw DomainError("mass ratio must lie strictly inside (0, 1): got " + std::to_string(mu));
    }
    SystemParams p{};
    p.mirrored = mu > 0.5;
    p.mu = p.mirrored ? 1.0 - mu : mu;
    p.delta = 1.0 - 2.0 * p.mu;
    const double root = std::sqrt(p.mu * (1.0 - p.mu));
    p.cJ = -1.0 - 2.0 * root;
    p.cE = -1.0;
    p.cH = -1.0 + 2.0 * p.mu;
    // (1 - 2 sqrt(mu(1-mu))) / (2(1-2mu)); the equal-mass limit is 0
    p.saddle_q1 = p.delta == 0.0 ? 0.0 : (1.0 - 2.0 * root) / (2.0 * p.delta);
    return p;
}

double hamiltonian_cartesian(const SystemParams& params, const CartesianState& state) {
    // a mirrored configuration evaluates at q1 -> -q1 in normalized form
    const double q1 = params.mirrored ? -state.q1 : state.q1;
    const double rE = std::hypot(q1 + 0.5, state.q2);
    const double rM = std::hypot(q1 - 0.5, state.q2);
    if (rE == 0.0 || rM == 0.0) {
        throw SingularityError("state coincides with a center");
    }
    const double kinetic = 0.5 * (state.p1 * state.p1 + state.p2 * state.p2);
    return kinetic - (1.0 - params.mu) / rE - params.mu / rM;
}

} // namespace twocenters
