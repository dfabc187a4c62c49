#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "support/oracles.hpp"
#include "twocenters/dynamics.hpp"
#include "twocenters/errors.hpp"
#include "twocenters/quadrature.hpp"
#include "twocenters/rng.hpp"

using namespace twocenters;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("cells at a satellite point") {
    const SystemParams params = make_params(0.25);
    const EnergyMomentum pt{0.3, -2.2};
    const RootData roots = solve_roots(pt, params);

    auto [lam, nu] = subsystem_cells(pt, params, Component::Earth);
    CHECK(lam.kind == CellKind::LibrationThroughAxis);
    CHECK(lam.hi == doctest::Approx(std::acosh(roots.xi_range->hi)).epsilon(1e-14));
    CHECK(lam.lo == doctest::Approx(-lam.hi));
    CHECK(nu.kind == CellKind::LibrationThroughAxis);
    const double nu_a = std::acos(roots.eta_ranges[0].hi);
    CHECK(nu.lo == doctest::Approx(nu_a).epsilon(1e-14));
    CHECK(nu.hi == doctest::Approx(2.0 * std::numbers::pi - nu_a).epsilon(1e-14));
    CHECK(nu.component == Component::Earth);

    auto [lam_m, nu_m] = subsystem_cells(pt, params, Component::Moon);
    CHECK(nu_m.lo == doctest::Approx(-std::acos(roots.eta_ranges[1].lo)).epsilon(1e-14));
    CHECK(nu_m.hi == doctest::Approx(-nu_m.lo));
}

TEST_CASE("cells in the circulating and ring regions") {
    const SystemParams params = make_params(0.25);
    auto [lam_L, nu_L] = subsystem_cells(EnergyMomentum{-0.3, -1.2}, params, Component::Both);
    CHECK(nu_L.kind == CellKind::FullRotation);
    CHECK(lam_L.kind == CellKind::LibrationThroughAxis);

    auto [lam_P, nu_P] = subsystem_cells(EnergyMomentum{-1.22, -0.8}, params, Component::Both);
    CHECK(lam_P.kind == CellKind::LibrationOnArc);
    CHECK(lam_P.lo > 0.0);
    CHECK(nu_P.kind == CellKind::FullRotation);
}

TEST_CASE("cells reject forbidden and critical points") {
    const SystemParams params = make_params(0.25);
    CHECK_THROWS_AS(subsystem_cells(EnergyMomentum{-2.0, -1.0}, params, Component::Both),
                    InadmissiblePoint);
    CHECK_THROWS_AS(subsystem_cells(EnergyMomentum{0.2, -2.2}, params, Component::Earth),
                    CriticalPointError);
}

TEST_CASE("periods match trajectory measurements") {
    const SystemParams params = make_params(0.25);
    struct Case {
        EnergyMomentum pt;
        Component component;
    };
    const Case cases[] = {
        {{0.3, -2.2}, Component::Earth},
        {{0.7, -2.2}, Component::Moon},
        {{-0.3, -1.2}, Component::Both},  // circulating angle
        {{-1.22, -0.8}, Component::Both}, // ring
        {{2.0, -1.9}, Component::Earth},  // Earth-only motion
    };
    for (const Case& cs : cases) {
        CAPTURE(cs.pt.g);
        CAPTURE(cs.pt.c);
        auto [lam_cell, nu_cell] = subsystem_cells(cs.pt, params, cs.component);
        const double t_lam = cell_period(lam_cell, cs.pt, params);
        const double t_nu = cell_period(nu_cell, cs.pt, params);
        PhaseChoice phase;
        phase.lambda_frac = 0.37;
        phase.nu_frac = 0.41;
        const DoubledState y0 = initial_state(cs.pt, params, cs.component, phase);
        const Trajectory traj = integrate(y0, params, cs.pt.c, 60.0);
        const auto measured = oracles::measure_periods(traj);
        REQUIRE(measured.has_value());
        CHECK(t_lam == doctest::Approx(measured->t_lambda).epsilon(1e-7));
        CHECK(t_nu == doctest::Approx(measured->t_nu).epsilon(1e-7));
    }
}

TEST_CASE("shrinking ring cell approaches the small-oscillation period") {
    const SystemParams params = make_params(0.25);
    const double c = -0.8;
    const double g_ell = 1.0 / c;
    // second derivative of the radial potential at the well bottom
    const double xi_star = -1.0 / c;
    const double harmonic = std::numbers::pi / std::sqrt(-2.0 * c * (xi_star * xi_star - 1.0));
    double prev_err = 1e300;
    for (double dg : {1e-3, 1e-5, 1e-7}) {
        const EnergyMomentum pt{g_ell + dg, c};
        SubsystemCell cell;
        cell.which = Subsystem::Lambda;
        cell.kind = CellKind::LibrationOnArc;
        const RootData roots = solve_roots(pt, params);
        cell.lo = std::acosh(roots.xi_range->lo);
        cell.hi = std::acosh(roots.xi_range->hi);
        const double period = cell_period(cell, pt, params);
        CHECK(std::isfinite(period));
        const double err = std::abs(period - harmonic);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-5);
}

TEST_CASE("angular period grows without bound at the double root") {
    const SystemParams params = make_params(0.25);
    const double c = -1.2;
    const double g_c = params.delta * params.delta / c;
    double prev = 0.0;
    for (double gap : {1e-2, 1e-3, 1e-4}) {
        const EnergyMomentum pt{g_c + gap, c};
        auto [lam_cell, nu_cell] = subsystem_cells(pt, params, Component::Earth);
        const double period = cell_period(nu_cell, pt, params);
        CHECK(period > prev);
        prev = period;
    }
    CHECK(prev > 5.0);
}

TEST_CASE("degenerate cells are reported") {
    const SystemParams params = make_params(0.25);
    const double c = -1.2;
    const EnergyMomentum on_l4{params.delta * params.delta / c, c};
    SubsystemCell cell;
    cell.which = Subsystem::Nu;
    cell.kind = CellKind::LibrationThroughAxis;
    cell.component = Component::Earth;
    const double nu_star = std::acos(-params.delta / c);
    cell.lo = nu_star;
    cell.hi = 2.0 * std::numbers::pi - nu_star;
    CHECK_THROWS_AS(cell_period(cell, on_l4, params), DegenerateCell);
}

TEST_CASE("rotation number equals the trajectory frequency ratio") {
    const SystemParams params = make_params(0.25);
    const EnergyMomentum pt{0.52, -2.1};
    const RotationNumber rot = rotation_number(pt, params, Component::Earth);
    CHECK(rot.value == doctest::Approx(rot.t_lambda / rot.t_nu).epsilon(1e-15));
    std::vector<double> measured_ratios;
    for (double frac : {0.21, 0.52, 0.83}) {
        PhaseChoice phase;
        phase.lambda_frac = frac;
        phase.nu_frac = 1.0 - frac;
        const DoubledState y0 = initial_state(pt, params, Component::Earth, phase);
        const Trajectory traj = integrate(y0, params, pt.c, 300.0);
        const auto measured = oracles::measure_periods(traj);
        REQUIRE(measured.has_value());
        measured_ratios.push_back(measured->t_lambda / measured->t_nu);
        CHECK(measured_ratios.back() == doctest::Approx(rot.value).epsilon(1e-7));
    }
    // every torus phase carries the same ratio
    const auto [lo, hi] = std::minmax_element(measured_ratios.begin(), measured_ratios.end());
    CHECK(*hi - *lo <= 1e-9);
}

TEST_CASE("rotation number is monotone across the satellite band at fixed energy") {
    const SystemParams params = make_params(0.25);
    const Interval window = component_g_interval(-2.2, params, Component::Earth);
    double prev = 0.0;
    for (int i = 1; i <= 24; ++i) {
        const double g = window.lo + (window.hi - window.lo) * i / 25.0;
        const double r = rotation_number(EnergyMomentum{g, -2.2}, params, Component::Earth).value;
        CHECK(r > prev);
        CHECK(r < 1.0);
        prev = r;
    }
}

TEST_CASE("equal masses give matching component rotation numbers") {
    const SystemParams params = make_params(0.5);
    const EnergyMomentum pt{1.2, -2.5};
    const RotationNumber earth = rotation_number(pt, params, Component::Earth);
    const RotationNumber moon = rotation_number(pt, params, Component::Moon);
    CHECK(std::abs(earth.value - moon.value) <= 1e-10);
}

TEST_CASE("family solving hits the target ratio") {
    const SystemParams params = make_params(0.25);
    const double c_grid[] = {-1.88};
    const TorusFamily family = solve_family(2, 3, params, c_grid, Component::Earth);
    REQUIRE(family.samples.size() == 1);
    CHECK(family.samples[0].residual <= 1e-10);
    const RotationNumber rot =
        rotation_number(EnergyMomentum{family.samples[0].g, -1.88}, params, Component::Earth);
    CHECK(std::abs(rot.value - 2.0 / 3.0) <= 1e-10);
}

TEST_CASE("family grid refinement is continuous") {
    const SystemParams params = make_params(0.25);
    std::vector<double> coarse, fine;
    for (int i = 0; i <= 4; ++i) coarse.push_back(-2.25 + 0.05 * i);
    for (int i = 0; i <= 16; ++i) fine.push_back(-2.25 + 0.0125 * i);
    const TorusFamily fam_coarse = solve_family(9, 10, params, coarse, Component::Earth);
    const TorusFamily fam_fine = solve_family(9, 10, params, fine, Component::Earth);
    REQUIRE(fam_coarse.samples.size() == coarse.size());
    REQUIRE(fam_fine.samples.size() == fine.size());
    double coarse_step = 0.0, fine_step = 0.0;
    for (std::size_t i = 1; i < fam_coarse.samples.size(); ++i) {
        coarse_step = std::max(coarse_step,
                               std::abs(fam_coarse.samples[i].g - fam_coarse.samples[i - 1].g));
    }
    for (std::size_t i = 1; i < fam_fine.samples.size(); ++i) {
        fine_step =
            std::max(fine_step, std::abs(fam_fine.samples[i].g - fam_fine.samples[i - 1].g));
    }
    CHECK(fine_step < coarse_step);
    CHECK(fine_step < 0.02);
}

TEST_CASE("families with different ratios never meet") {
    const SystemParams params = make_params(0.25);
    SUBCASE("wide ratios on a robust window") {
        std::vector<double> grid;
        for (int i = 0; i <= 6; ++i) grid.push_back(-2.2 + 0.04 * i);
        const TorusFamily a = solve_family(9, 10, params, grid, Component::Earth);
        const TorusFamily b = solve_family(8, 9, params, grid, Component::Earth);
        REQUIRE(a.samples.size() == grid.size());
        REQUIRE(b.samples.size() == grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(a.samples[i].g - b.samples[i].g) > 1e-6);
        }
    }
    SUBCASE("low-order ratios exist only against the saddle corner") {
        const SystemParams p = make_params(0.25);
        std::vector<double> grid = {p.cJ - 4.0e-5, p.cJ - 3.5e-5, p.cJ - 3.0e-5};
        const TorusFamily half = solve_family(1, 2, p, grid, Component::Earth);
        const TorusFamily third = solve_family(1, 3, p, grid, Component::Earth);
        REQUIRE(half.samples.size() == grid.size());
        REQUIRE(third.samples.size() == grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(half.samples[i].g - third.samples[i].g) > 1e-6);
        }
    }
}

TEST_CASE("family solving reports energies without a root") {
    const SystemParams params = make_params(0.25);
    const double c_grid[] = {-2.2};
    const TorusFamily unit = solve_family(1, 1, params, c_grid, Component::Earth);
    CHECK(unit.samples.empty());
    REQUIRE(unit.skipped.size() == 1);
    const TorusFamily half = solve_family(1, 2, params, c_grid, Component::Earth);
    CHECK(half.samples.empty());
}

TEST_CASE("winding integers must be coprime and positive") {
    const SystemParams params = make_params(0.25);
    const double c_grid[] = {-2.2};
    CHECK_THROWS_AS(solve_family(2, 4, params, c_grid), DomainError);
    CHECK_THROWS_AS(solve_family(0, 1, params, c_grid), DomainError);
}

TEST_SUITE_END();
