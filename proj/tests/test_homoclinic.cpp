#include <doctest.h>

#include <cmath>
#include <numbers>

#include "twocenters/coords.hpp"
#include "twocenters/errors.hpp"
#include "twocenters/homoclinic.hpp"
#include "twocenters/rng.hpp"

using namespace twocenters;

TEST_SUITE_BEGIN("homoclinic");

TEST_CASE("unstable orbit data at a reference energy") {
    const SystemParams params = make_params(0.25);
    const LyapunovOrbit orbit = lyapunov_orbit(-1.2, params);
    CHECK(orbit.g_c == doctest::Approx(0.25 / -1.2).epsilon(1e-14));
    CHECK(orbit.g_c < 0.0);
    CHECK(orbit.nu_star == doctest::Approx(std::acos(0.5 / 1.2)).epsilon(1e-14));
    CHECK(orbit.nu_star == doctest::Approx(1.1410208954903689).epsilon(1e-12));
    CHECK(orbit.lambda_period > 0.0);
    // the angular quartic has a stationary double root at the orbit
    const EnergyMomentum pt{orbit.g_c, -1.2};
    const double eta_star = std::cos(orbit.nu_star);
    const double quad = -1.2 * eta_star * eta_star + 2.0 * params.delta * eta_star + orbit.g_c;
    CHECK(std::abs(quad) <= 1e-12);
    CHECK(std::abs(poly_h(pt, params, eta_star)) <= 1e-12);
}

TEST_CASE("band limits of the unstable family") {
    const SystemParams params = make_params(0.25);
    CHECK_THROWS_AS(lyapunov_orbit(-2.2, params), BandError);
    CHECK_THROWS_AS(lyapunov_orbit(-0.3, params), BandError);
    CHECK_THROWS_AS(lyapunov_orbit(-1.2, make_params(0.5)), ExplicitlyDegenerate);
}

TEST_CASE("family collapses onto the saddle point at the lower band edge") {
    const SystemParams params = make_params(0.25);
    double prev_diameter = 1e300;
    for (double offset : {1e-1, 1e-2, 1e-3}) {
        const LyapunovOrbit orbit = lyapunov_orbit(params.cJ + offset, params);
        double max_dist = 0.0;
        for (const auto& sm : orbit.trajectory.samples) {
            const CartesianState q = to_cartesian(sm.state);
            max_dist = std::max(max_dist, std::hypot(q.q1 - params.saddle_q1, q.q2));
        }
        CHECK(max_dist < prev_diameter);
        prev_diameter = max_dist;
    }
    CHECK(prev_diameter <= 0.05);
}

TEST_CASE("family degenerates onto the Moon axis at the upper band edge") {
    const SystemParams params = make_params(0.25);
    const LyapunovOrbit orbit = lyapunov_orbit(params.cH - 2.5e-4, params);
    CHECK(std::abs(std::cos(orbit.nu_star) - 1.0) <= 1e-3);
}

TEST_CASE("center-passage momenta from the closed forms") {
    const SystemParams params = make_params(0.25);
    const CollisionMomenta m = collision_momenta(-1.2, params);
    CHECK(m.p_lambda_sq == doctest::Approx((1.44 - 2.4 + 0.25) / -2.4).epsilon(1e-13));
    CHECK(m.p_lambda_sq == doctest::Approx(0.2958333333333333).epsilon(1e-12));
    CHECK(m.p_nu_sq_moon == doctest::Approx(0.49 / 2.4).epsilon(1e-13));
    CHECK(m.p_nu_sq_earth == doctest::Approx(2.89 / 2.4).epsilon(1e-13));
    // the leaf momentum formula evaluated at the center agrees
    const double g_c = 0.25 / -1.2;
    const double via_leaf = 0.5 * (-1.2 + 2.0 + g_c);
    CHECK(m.p_lambda_sq == doctest::Approx(via_leaf).epsilon(1e-14));
}

TEST_CASE("center-passage momenta are positive across the band and ratios") {
    SplitMix64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const SystemParams params = make_params(rng.uniform(0.02, 0.499));
        for (int j = 1; j <= 200; ++j) {
            const double c =
                params.cJ + (params.cH - params.cJ) * j / 201.0;
            const CollisionMomenta m = collision_momenta(c, params);
            CHECK(m.p_lambda_sq > 0.0);
            CHECK(m.p_nu_sq_moon > 0.0);
            CHECK(m.p_nu_sq_earth > 0.0);
        }
    }
    // at the upper band edge the Moon-side angular momentum vanishes
    const SystemParams params = make_params(0.25);
    const double at_edge = (params.cH + params.delta) * (params.cH + params.delta);
    CHECK(at_edge == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(collision_momenta(params.cH, params), BandError);
}

TEST_CASE("saddle rate matches a second-difference of the angular potential") {
    const SystemParams params = make_params(0.25);
    const double c = -1.2;
    const double nu_star = std::acos(-params.delta / c);
    auto V = [&](double nu) {
        return 2.0 * params.delta * std::cos(nu) + c * std::cos(nu) * std::cos(nu);
    };
    const double h = 1e-5;
    const double v2 = (V(nu_star + h) - 2.0 * V(nu_star) + V(nu_star - h)) / (h * h);
    CHECK(v2 < -1e-6); // nondegenerate maximum
    CHECK(lyapunov_saddle_rate(c, params) == doctest::Approx(2.0 * std::sqrt(-v2)).epsilon(1e-6));
}

TEST_CASE("leaf orbits stay on their side and carry the leaf integrals") {
    const SystemParams params = make_params(0.25);
    const double c = -1.2;
    const double g_c = params.delta * params.delta / c;
    const double nu_star = std::acos(-params.delta / c);
    const double span = std::log((std::numbers::pi - nu_star) / 1e-6) /
                        lyapunov_saddle_rate(c, params);

    const Trajectory earth = leaf_orbit(c, params, Component::Earth, 0.3, +1, +1, span);
    const Trajectory moon = leaf_orbit(c, params, Component::Moon, 0.3, +1, +1, span);
    int crossings = 0;
    for (const auto& sm : earth.samples) {
        const double w = std::abs(wrap_angle(sm.state.nu));
        CHECK(w > nu_star - 1e-9); // never enters the Moon arc
    }
    for (const auto& sm : moon.samples) {
        CHECK(std::abs(wrap_angle(sm.state.nu)) < nu_star + 1e-9);
    }
    // conserved pair equals the leaf values away from the centers
    for (const auto& sm : earth.samples) {
        const double denom = std::cosh(sm.state.lam) - std::abs(std::cos(sm.state.nu));
        if (denom < 1e-3) continue;
        const ConservedPair hg = evaluate_H_G(sm.state, params);
        CHECK(hg.h_value == doctest::Approx(c).epsilon(1e-8));
        CHECK(hg.g_value == doctest::Approx(g_c).epsilon(1e-8));
    }
    // the Earth-side orbit crosses its collision axis exactly once
    for (std::size_t i = 1; i < earth.samples.size(); ++i) {
        const double a = earth.samples[i - 1].state.nu - std::numbers::pi;
        const double b = earth.samples[i].state.nu - std::numbers::pi;
        if (a < 0.0 && b >= 0.0) ++crossings;
    }
    CHECK(crossings == 1);
}

TEST_CASE("angular speed at the axis crossing is bounded away from zero") {
    const SystemParams params = make_params(0.25);
    for (double c : {-1.7, -1.2, -0.7}) {
        const Trajectory traj = leaf_orbit(c, params, Component::Earth, 0.4, +1, +1, 3.0);
        // locate the crossing of nu = pi
        for (std::size_t i = 1; i < traj.samples.size(); ++i) {
            const double a = traj.samples[i - 1].state.nu - std::numbers::pi;
            const double b = traj.samples[i].state.nu - std::numbers::pi;
            if (a < 0.0 && b >= 0.0) {
                CHECK(std::abs(4.0 * traj.samples[i].state.p_nu) >= 1e-6);
            }
        }
    }
}

TEST_CASE("verification run certifies both-sided convergence and one rotation") {
    const SystemParams params = make_params(0.25);
    VerifyOptions opts;
    opts.n_orbits = 20;
    const HomoclinicReport report = verify_homoclinic(-1.2, params, Component::Earth, opts);
    CHECK(report.verdict);
    CHECK(report.orbits.size() == 20);
    for (const auto& orbit : report.orbits) {
        CHECK(orbit.pass);
        CHECK(orbit.rotation_count == 1);
        CHECK(orbit.dist_forward.back() <= 1e-4);
        CHECK(orbit.dist_backward.back() <= 1e-4);
        CHECK_FALSE(orbit.collision);
    }
    const HomoclinicReport moon = verify_homoclinic(-1.2, params, Component::Moon, opts);
    CHECK(moon.verdict);
}

TEST_CASE("momentum reversal swaps the two time directions of a leaf orbit") {
    const SystemParams params = make_params(0.25);
    const double c = -1.2;
    const double span = 4.0;
    const Trajectory orig = leaf_orbit(c, params, Component::Earth, 0.3, +1, +1, span);
    const Trajectory flipped = leaf_orbit(c, params, Component::Earth, 0.3, -1, -1, span);
    const double nu_star = std::acos(-params.delta / c);
    const double fwd_orig = distance_to_nu_locus(orig.state_at(span).nu, nu_star);
    const double bwd_flip = distance_to_nu_locus(flipped.state_at(-span).nu, nu_star);
    CHECK(fwd_orig == doctest::Approx(bwd_flip).epsilon(1e-6));
}

TEST_CASE("collision leaf orbits from both centers") {
    const SystemParams params = make_params(0.25);
    const CollisionMomenta m = collision_momenta(-1.2, params);
    for (Component focus : {Component::Earth, Component::Moon}) {
        const CollisionHomoclinic run = collision_homoclinic(-1.2, params, focus);
        CHECK(run.report.verdict);
        REQUIRE(run.report.orbits.size() == 1);
        CHECK(run.report.orbits[0].collision);
        // starting state reproduces the closed forms and sits on the zero level
        const DoubledState start = run.trajectory.state_at(0.0);
        CHECK(start.lam == doctest::Approx(0.0).epsilon(1e-12));
        const double expected_pnu =
            std::sqrt(focus == Component::Earth ? m.p_nu_sq_earth : m.p_nu_sq_moon);
        CHECK(std::abs(start.p_lam - std::sqrt(m.p_lambda_sq)) <= 1e-12);
        CHECK(std::abs(start.p_nu - expected_pnu) <= 1e-12);
        const RegularizedEnergy q = regularized_energy(start, params, -1.2);
        CHECK(std::abs(q.total()) <= 1e-12);
    }
}

TEST_SUITE_END();
