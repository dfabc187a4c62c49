#ifndef TWOCENTERS_BIFURCATION_HPP
#define TWOCENTERS_BIFURCATION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "twocenters/params.hpp"

namespace twocenters {

/// A point (g, c) of the integral plane, c < 0.
struct EnergyMomentum {
    double g;
    double c;
};

/// Validating constructor; throws DomainError unless c < 0.
EnergyMomentum energy_momentum(double g, double c);

enum class Component { Earth, Moon, Both };

/// The five critical curves of the integral plane.
/// l1: c = -g + 2(1-2mu)      exterior collision, Earth side
/// l2: c = -g - 2(1-2mu)      exterior collision, Moon side
/// l3: c = -g - 2              interior / double collision
/// l4: g c = (1-2mu)^2, cJ<c<cH   hyperbolic orbit
/// l5: g c = 1, cE<c<0            elliptic orbit
enum class Curve { L1, L2, L3, L4, L5 };

enum class Region {
    Forbidden,
    SPrime,     ///< satellite motion near the Earth only (Moon arc empty)
    Satellite,  ///< two component arcs; the component hint picks Earth/Moon/Both
    Lemniscate,
    Planetary,
    OnCurve,
    SaddleValue,
};

struct Interval {
    double lo;
    double hi;
    double width() const { return hi - lo; }
};

/// Roots of the two quartics and the position ranges they admit.
/// A missing root pair means the pair is complex conjugate.
struct RootData {
    std::optional<std::pair<double, double>> xi_roots;
    std::optional<std::pair<double, double>> eta_roots;
    std::optional<Interval> xi_range;
    std::vector<Interval> eta_ranges; ///< 0, 1 or 2 intervals, ordered; index 0 touches eta=-1 when present
};

struct RegionLabel {
    Region kind;
    std::optional<Curve> curve;    ///< set when kind == OnCurve
    Component component_hint = Component::Both;
};

/// f(xi) = (c xi^2 + 2 xi + g)(xi^2 - 1).
double poly_f(const EnergyMomentum& pt, double xi);

/// h(eta) = (c eta^2 + 2(1-2mu) eta + g)(eta^2 - 1).
double poly_h(const EnergyMomentum& pt, const SystemParams& params, double eta);

/// Discriminants of f and h: 16(c+g+2)^2(c+g-2)^2(gc-1)^2 and the analogue
/// with 2(1-2mu) and (1-2mu)^2. Zero exactly on the critical curves.
std::pair<double, double> discriminants(const EnergyMomentum& pt, const SystemParams& params);

/// Closed-form roots plus admissible position intervals.
RootData solve_roots(const EnergyMomentum& pt, const SystemParams& params);

/// Region of the integral plane by root-pattern matching. Points within
/// curve_tol of a critical curve (distance in the (g,c) metric) come back as
/// OnCurve; the l3/l4 corner, which carries the saddle value, as SaddleValue.
/// For Satellite points the component hint echoes the request (Both when both
/// arcs exist and no specific component was asked for).
RegionLabel classify(const EnergyMomentum& pt, const SystemParams& params,
                     double curve_tol = 1e-9, Component request = Component::Both);

/// Signed distance estimates from (g,c) to each critical curve, restricted to
/// the curve's validity window. Used by classify and by the diagram emitter.
double curve_distance(const EnergyMomentum& pt, const SystemParams& params, Curve curve);

/// g value of a critical curve at fixed energy c.
double curve_g_at_energy(Curve curve, double c, const SystemParams& params);

enum class OrbitKind {
    InteriorCollisionEarth,
    InteriorCollisionMoon,
    ExteriorCollisionEarth,
    ExteriorCollisionMoon,
    DoubleCollision,
    Hyperbolic,
    Elliptic,
};

enum class Atom { A, B, AStar };

struct CriticalOrbitDescriptor {
    OrbitKind kind;
    double g_at_c;
    Atom atom;
};

/// Energy bands of the lower half plane, separated by cJ, cE, cH.
enum class EnergyBand {
    BelowSaddle,       ///< c < cJ: two spherical components
    SaddleToElliptic,  ///< cJ < c < cE
    EllipticToHyperbolic, ///< cE < c < cH
    AboveHyperbolic,   ///< cH < c < 0
};

/// Band containing c; throws BandEdgeError within edge_tol of a transition
/// energy and DomainError for c >= 0.
EnergyBand energy_band(double c, const SystemParams& params, double edge_tol = 1e-9);

/// The critical orbits present on the energy-c hypersurface, ordered by g.
/// Throws BandEdgeError at band edges and ExplicitlyDegenerate at equal
/// masses for c > cJ (the exterior collision curves coincide there).
std::vector<CriticalOrbitDescriptor> critical_orbits_at_energy(double c, const SystemParams& params);

enum class HypersurfaceComponent { Earth, Moon, Whole };

/// Atom graph of one energy hypersurface component. Nodes are ordered by g,
/// non-decreasing; only the two oppositely traversed elliptic orbits share a
/// g value. Degrees: A has 1 edge, B has 3, A* has 2.
struct MoleculeGraph {
    std::vector<CriticalOrbitDescriptor> nodes;
    std::vector<std::pair<int, int>> edges;
    HypersurfaceComponent component;
};

/// One graph per connected hypersurface component: two below the saddle
/// energy, one above.
std::vector<MoleculeGraph> molecule(double c, const SystemParams& params);

/// Admissible g interval of regular tori for one component at energy c:
/// Earth tori span from the lower critical g up to the curve l1, Moon tori up
/// to l2. Throws InadmissiblePoint when the component has no tori at c.
Interval component_g_interval(double c, const SystemParams& params, Component component);

} // namespace twocenters

#endif
