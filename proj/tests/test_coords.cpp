#include <doctest.h>

#include <cmath>
#include <numbers>

#include "twocenters/coords.hpp"
#include "twocenters/errors.hpp"
#include "twocenters/rng.hpp"

using namespace twocenters;

namespace {

DoubledState random_doubled(SplitMix64& rng) {
    DoubledState s;
    s.lam = rng.uniform(0.15, 1.8) * (rng.next_u64() & 1 ? 1.0 : -1.0);
    s.nu = rng.uniform(0.15, std::numbers::pi - 0.15) * (rng.next_u64() & 1 ? 1.0 : -1.0);
    s.p_lam = rng.uniform(-1.5, 1.5);
    s.p_nu = rng.uniform(-1.5, 1.5);
    return s;
}

} // namespace

TEST_SUITE_BEGIN("coords");

TEST_CASE("positions of a reference point") {
    const EllipticState e = to_elliptic(CartesianState{0.0, 1.0, 0.0, 0.0});
    CHECK(e.xi == doctest::Approx(2.0 * std::sqrt(1.25)).epsilon(1e-14));
    CHECK(e.xi == doctest::Approx(2.2360679774997896).epsilon(1e-13));
    CHECK(e.eta == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(e.p_xi == 0.0);
    CHECK(e.p_eta == 0.0);
}

TEST_CASE("axis points degenerate the momentum transform") {
    const auto pos = elliptic_positions(CartesianState{1.0, 0.0, 0.1, 0.2});
    CHECK(pos[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(pos[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(to_elliptic(CartesianState{1.0, 0.0, 0.1, 0.2}), ChartSingularity);
    CHECK_THROWS_AS(to_elliptic(CartesianState{0.2, 0.0, 0.1, 0.2}), ChartSingularity);
}

TEST_CASE("lift to the double cover") {
    EllipticState e;
    e.xi = 2.0;
    e.eta = 0.0;
    e.p_xi = 0.3;
    e.p_eta = -0.1;
    const DoubledState d = to_doubled(e);
    CHECK(d.lam == doctest::Approx(std::acosh(2.0)).epsilon(1e-15));
    CHECK(d.lam == doctest::Approx(1.3169578969248166).epsilon(1e-13));
    CHECK(d.nu == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    CHECK(d.p_lam == doctest::Approx(0.3 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(d.p_lam == doctest::Approx(0.5196152422706632).epsilon(1e-13));
    CHECK(d.p_nu == doctest::Approx(0.1).epsilon(1e-14));

    const DoubledState m = to_doubled(e, BranchSelector{-1, -1});
    CHECK(m.lam == -d.lam);
    CHECK(m.nu == -d.nu);
    CHECK(m.p_lam == doctest::Approx(-d.p_lam).epsilon(1e-14));
    CHECK(m.p_nu == doctest::Approx(-d.p_nu).epsilon(1e-14));
}

TEST_CASE("center maps to the origin of the cover with pinned momenta") {
    EllipticState e;
    e.xi = 1.0;
    e.eta = 1.0;
    e.p_xi = 3.0;
    e.p_eta = -2.0;
    const DoubledState d = to_doubled(e);
    CHECK(d.lam == 0.0);
    CHECK(d.nu == 0.0);
    CHECK(d.p_lam == 0.0);
    CHECK(d.p_nu == 0.0);
}

TEST_CASE("chart domain hardening clips rounding noise only") {
    EllipticState e;
    e.eta = 1.0 + 5e-15;
    e.xi = 1.0 - 5e-15;
    CHECK_NOTHROW(to_doubled(e));
    e.eta = 1.0 + 1e-9;
    CHECK_THROWS_AS(to_doubled(e), ChartSingularity);
}

TEST_CASE("round trip through the Cartesian chart") {
    SplitMix64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        const DoubledState d = random_doubled(rng);
        const CartesianState q = to_cartesian(d);
        const EllipticState back = to_elliptic(q);
        const EllipticState direct = to_elliptic(d);
        CHECK(back.xi == doctest::Approx(direct.xi).epsilon(1e-10));
        CHECK(back.eta == doctest::Approx(direct.eta).epsilon(1e-10));
        CHECK(back.p_xi == doctest::Approx(direct.p_xi).epsilon(1e-9));
        CHECK(back.p_eta == doctest::Approx(direct.p_eta).epsilon(1e-9));
        // lifting with the original sign branch reproduces the cover point
        BranchSelector branch;
        branch.lam_sign = d.lam >= 0 ? +1 : -1;
        branch.nu_sign = d.nu >= 0 ? +1 : -1;
        const DoubledState lifted = to_doubled(back, branch);
        CHECK(lifted.lam == doctest::Approx(d.lam).epsilon(1e-9));
        CHECK(lifted.nu == doctest::Approx(d.nu).epsilon(1e-9));
        CHECK(lifted.p_lam == doctest::Approx(d.p_lam).epsilon(1e-9));
        CHECK(lifted.p_nu == doctest::Approx(d.p_nu).epsilon(1e-9));
    }
}

TEST_CASE("canonical pairing is preserved under the chart change") {
    SplitMix64 rng(43);
    const double h = 1e-6;
    for (int i = 0; i < 300; ++i) {
        CartesianState s;
        s.q1 = rng.uniform(-1.5, 1.5);
        s.q2 = rng.uniform(0.2, 1.5) * (rng.next_u64() & 1 ? 1.0 : -1.0);
        s.p1 = rng.uniform(-1.0, 1.0);
        s.p2 = rng.uniform(-1.0, 1.0);
        const double dq1 = rng.uniform(-1.0, 1.0), dq2 = rng.uniform(-1.0, 1.0);
        const EllipticState e = to_elliptic(s);
        // displace the position, recompute positions, compare one-forms
        CartesianState plus = s, minus = s;
        plus.q1 += h * dq1; plus.q2 += h * dq2;
        minus.q1 -= h * dq1; minus.q2 -= h * dq2;
        const auto ep = elliptic_positions(plus), em = elliptic_positions(minus);
        const double dxi = (ep[0] - em[0]) / (2.0 * h);
        const double deta = (ep[1] - em[1]) / (2.0 * h);
        const double pdq = s.p1 * dq1 + s.p2 * dq2;
        const double pdu = e.p_xi * dxi + e.p_eta * deta;
        CHECK(pdq == doctest::Approx(pdu).epsilon(1e-9));
    }
}

TEST_CASE("conserved pair at a reference doubled point") {
    const SystemParams params = make_params(0.25);
    EllipticState e;
    e.xi = 2.0;
    e.eta = 0.0;
    const ConservedPair hg = evaluate_H_G(e, params);
    CHECK(hg.h_value == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(hg.g_value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("conserved pair is chart independent") {
    const SystemParams params = make_params(0.31);
    SplitMix64 rng(44);
    for (int i = 0; i < 500; ++i) {
        const DoubledState d = random_doubled(rng);
        const ConservedPair a = evaluate_H_G(d, params);
        const ConservedPair b = evaluate_H_G(to_elliptic(d), params);
        const ConservedPair c = evaluate_H_G(to_cartesian(d), params);
        const double scale_h = 1.0 + std::abs(a.h_value);
        const double scale_g = 1.0 + std::abs(a.g_value);
        CHECK(std::abs(a.h_value - b.h_value) <= 1e-10 * scale_h);
        CHECK(std::abs(a.h_value - c.h_value) <= 1e-10 * scale_h);
        CHECK(std::abs(a.g_value - b.g_value) <= 1e-10 * scale_g);
        CHECK(std::abs(a.g_value - c.g_value) <= 1e-10 * scale_g);
    }
}

TEST_CASE("energy decays to zero at large distance") {
    const SystemParams params = make_params(0.2);
    EllipticState e;
    e.eta = 0.3;
    double prev = -1.0;
    for (double xi : {5.0, 50.0, 500.0}) {
        e.xi = xi;
        const double h = evaluate_H_G(e, params).h_value;
        CHECK(h < 0.0);
        CHECK(h > prev);
        prev = h;
    }
    CHECK(std::abs(prev) < 5e-3);
}

TEST_CASE("deck transformation preserves the Cartesian point and the integrals") {
    const SystemParams params = make_params(0.25);
    SplitMix64 rng(45);
    for (int i = 0; i < 300; ++i) {
        const DoubledState d = random_doubled(rng);
        DoubledState opp;
        opp.lam = -d.lam;
        opp.nu = -d.nu;
        opp.p_lam = -d.p_lam;
        opp.p_nu = -d.p_nu;
        const CartesianState qa = to_cartesian(d), qb = to_cartesian(opp);
        CHECK(qa.q1 == doctest::Approx(qb.q1).epsilon(1e-12));
        CHECK(qa.q2 == doctest::Approx(qb.q2).epsilon(1e-12));
        CHECK(qa.p1 == doctest::Approx(qb.p1).epsilon(1e-12));
        CHECK(qa.p2 == doctest::Approx(qb.p2).epsilon(1e-12));
        const ConservedPair ca = evaluate_H_G(d, params), cb = evaluate_H_G(opp, params);
        CHECK(ca.h_value == doctest::Approx(cb.h_value).epsilon(1e-13));
        CHECK(ca.g_value == doctest::Approx(cb.g_value).epsilon(1e-13));
    }
}

TEST_SUITE_END();
