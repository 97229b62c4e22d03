#include <doctest.h>

#include <cmath>
#include <numbers>

#include "idd/error.hpp"
#include "idd/family.hpp"

using namespace idd;
constexpr double pi = std::numbers::pi;

TEST_CASE("solved energies reproduce the requested period") {
    for (Branch b : {Branch::EvenInterior, Branch::OddExterior}) {
        for (double L : {2 * pi, 4 * pi}) {
            const double lo = lower_frequency(b, L);
            for (double w : {lo + 0.05, 0.5, 0.9, 0.98}) {
                const FamilyPoint p = solve_energy_for_period(b, w, L);
                REQUIRE(p.converged);
                const double T = period_at(b, w, p.level(), {1e-13, 1e-12});
                CHECK(std::abs(T - L) / L < 1e-9);
                CHECK(p.M > 0.0);
                CHECK(p.M < 1.0);
            }
        }
    }
}

TEST_CASE("frequencies outside the existence interval are rejected") {
    try {
        solve_energy_for_period(Branch::EvenInterior, 0.3, 2 * pi);
        FAIL("expected FrequencyOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FrequencyOutOfRange);
    }
    CHECK_THROWS_AS(solve_energy_for_period(Branch::OddExterior, -1.0, 2 * pi), Error);
    CHECK(lower_frequency(Branch::EvenInterior, 2 * pi) == doctest::Approx(1.0 / 3.0));
    CHECK(lower_frequency(Branch::OddExterior, 2 * pi) == doctest::Approx(-1.0));
}

TEST_CASE("continuation records the whole curve and warns near the cap") {
    const std::vector<double> grid = uniform_omega_grid(Branch::EvenInterior, 2 * pi, 12);
    CHECK(grid.back() == doctest::Approx(kOmegaCap));
    const FamilyCurve c = continue_family(Branch::EvenInterior, 2 * pi, grid);
    CHECK(c.all_converged());
    CHECK_FALSE(c.warnings.empty());
    // tilde_E = E_L - E_omega is negative on the even branch and grows toward
    // the peaked value.
    for (const FamilyPoint& p : c.points) CHECK(p.tilde_E < 0.0);
    CHECK(c.points.back().tilde_E == doctest::Approx(peaked_energy(Branch::EvenInterior, 2 * pi)).epsilon(0.2));
    CHECK_THROWS_AS(continue_family(Branch::EvenInterior, 2 * pi, {0.5, 0.4}), Error);
    CHECK_THROWS_AS(continue_family(Branch::EvenInterior, 2 * pi, {0.5, 0.995}), Error);
}

TEST_CASE("small-amplitude law recovers the bifurcation coefficient") {
    for (Branch b : {Branch::EvenInterior, Branch::OddExterior}) {
        const double L = 2 * pi;
        const double lo = lower_frequency(b, L);
        std::vector<double> grid;
        for (int i = 1; i <= 5; ++i) grid.push_back(lo + 1e-3 * i);
        const FamilyCurve c = continue_family(b, L, grid);
        double num = 0.0, den = 0.0;
        for (const FamilyPoint& p : c.points) {
            const double a = b == Branch::EvenInterior ? 0.5 * (p.M - p.m) : p.M;
            num += a * a * (p.omega - lo);
            den += a * a * a * a;
        }
        CHECK(num / den == doctest::Approx(bifurcation_omega2(b, L)).epsilon(0.02));
    }
}

TEST_CASE("peaked energy levels") {
    CHECK(peaked_energy(Branch::EvenInterior, 2 * pi) == doctest::Approx(-0.5 / std::pow(std::cosh(pi), 2)));
    CHECK(peaked_energy(Branch::OddExterior, 2 * pi) == doctest::Approx(0.5 / std::pow(std::sinh(pi / 2), 2)));
    CHECK_THROWS_AS(peaked_energy(Branch::EvenInterior, -1.0), Error);
}

TEST_CASE("interpolation toward the peaked point is monotone") {
    const FamilyCurve c = continue_family(Branch::OddExterior, 2 * pi, uniform_omega_grid(Branch::OddExterior, 2 * pi, 15));
    REQUIRE(c.all_converged());
    const auto bridge = interpolate_to_peaked(c, 10);
    REQUIRE(bridge.size() == 10);
    double prev_w = c.points.back().omega;
    for (const auto& q : bridge) {
        CHECK(q.omega > prev_w);
        CHECK(q.omega < 1.0);
        prev_w = q.omega;
    }
    const double end = peaked_energy(Branch::OddExterior, 2 * pi);
    const double start = c.points.back().tilde_E;
    for (const auto& q : bridge) CHECK((q.tilde_E - start) * (end - q.tilde_E) >= -1e-15);
}
