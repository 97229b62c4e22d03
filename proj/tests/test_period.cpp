#include <doctest.h>

#include <cmath>
#include <numbers>

#include "idd/error.hpp"
#include "idd/period.hpp"
#include "oracles.hpp"

using namespace idd;
constexpr double two_pi = 2 * std::numbers::pi;

namespace {

// Period by direct time integration of phi'' = -V'(phi).
double rk4_period(Branch b, double omega, double E) {
    const PotentialModel m(omega);
    if (b == Branch::EvenInterior) {
        const Orbit o = resolve_orbit(b, omega, E);
        return 2.0 * oracle::time_to_turn(m, {*o.m, 0.0}, 2.5e-4);
    }
    // Odd orbits cross phi = 0 with speed sqrt(2(E - V(0))).
    const double v0 = std::sqrt(2.0 * (E - potential(m, 0.0)));
    return 4.0 * oracle::time_to_turn(m, {0.0, v0}, 2.5e-4);
}

}  // namespace

TEST_CASE("turning points agree with plain bisection") {
    const double w = 0.5;
    const PotentialModel m(w);
    const double E = 0.6 * homoclinic_energy(m);
    const Orbit o = resolve_orbit(Branch::EvenInterior, w, E);
    auto f = [&](double p) { return potential(m, p) - E; };
    CHECK(*o.m == doctest::Approx(oracle::bisect(f, 0.0, std::sqrt(w))).epsilon(1e-13));
    CHECK(o.M == doctest::Approx(oracle::bisect(f, std::sqrt(w), 1.0 - 1e-15)).epsilon(1e-13));

    const Orbit odd = resolve_orbit(Branch::OddExterior, w, 2.0 * homoclinic_energy(m));
    CHECK_FALSE(odd.m.has_value());
    CHECK(potential(m, odd.M) == doctest::Approx(2.0 * homoclinic_energy(m)).epsilon(1e-12));
}

TEST_CASE("even periods match time-of-flight integration") {
    for (double w : {0.3, 0.6, 0.85}) {
        const double Ew = homoclinic_energy(PotentialModel(w));
        for (double frac : {0.1, 0.5, 0.95}) {
            const double E = frac * Ew;
            const double T = period_even(w, E).T;
            CHECK(T == doctest::Approx(rk4_period(Branch::EvenInterior, w, E)).epsilon(1e-8));
        }
    }
}

TEST_CASE("odd periods match time-of-flight integration") {
    for (double w : {-1.0, 0.0, 0.5}) {
        const double Ew = homoclinic_energy(PotentialModel(w));
        for (double E : {Ew + 0.01, Ew + 0.2, 0.45}) {
            if (E <= Ew) continue;
            const double T = period_odd(w, E).T;
            CHECK(T == doctest::Approx(rk4_period(Branch::OddExterior, w, E)).epsilon(1e-8));
        }
    }
}

TEST_CASE("small-amplitude limits") {
    for (double w : {0.3, 0.5, 0.7, 0.9}) {
        const double Ew = homoclinic_energy(PotentialModel(w));
        const double T = period_even(w, 1e-8 * Ew).T;
        CHECK(std::abs(T - two_pi * std::sqrt((1 - w) / (2 * w))) < 1e-3);
        CHECK(small_amplitude_period(Branch::EvenInterior, w) == doctest::Approx(two_pi * std::sqrt((1 - w) / (2 * w))));
    }
    const double Ew = homoclinic_energy(PotentialModel(-1.0));
    CHECK(std::abs(period_odd(-1.0, Ew * (1 + 1e-9) + 1e-9).T - two_pi) < 1e-3);
}

TEST_CASE("period derivative agrees with differenced time-of-flight periods") {
    {
        const double w = 0.5;
        const double E = 0.5 * homoclinic_energy(PotentialModel(w));
        const double h = 1e-4 * E;
        const double fd = (rk4_period(Branch::EvenInterior, w, E + h) - rk4_period(Branch::EvenInterior, w, E - h)) / (2 * h);
        CHECK(period_derivative(Branch::EvenInterior, w, E) == doctest::Approx(fd).epsilon(1e-4));
        CHECK(fd > 0.0);
    }
    {
        const double w = 0.5;
        const double E = 2.0 * homoclinic_energy(PotentialModel(w));
        const double h = 1e-4 * E;
        const double fd = (rk4_period(Branch::OddExterior, w, E + h) - rk4_period(Branch::OddExterior, w, E - h)) / (2 * h);
        CHECK(period_derivative(Branch::OddExterior, w, E) == doctest::Approx(fd).epsilon(1e-4));
        CHECK(fd < 0.0);
    }
}

TEST_CASE("period is monotone on both branches, including near the separatrix") {
    for (double w : {0.2, 0.5, 0.8, 0.95}) {
        const double Ew = homoclinic_energy(PotentialModel(w));
        double prev = 0.0;
        for (int i = 1; i <= 30; ++i) {
            const double gap = Ew * std::pow(10.0, -12.0 * i / 30.0);
            const double T = period_at(Branch::EvenInterior, w, level_from_gap(Branch::EvenInterior, w, gap));
            CHECK(T > prev);
            prev = T;
        }
    }
    for (double w : {-0.5, 0.3, 0.9}) {
        double prev = 0.0;
        for (int i = 1; i <= 30; ++i) {
            const double gap = std::pow(10.0, -12.0 * (31 - i) / 30.0);
            const double T = period_at(Branch::OddExterior, w, level_from_gap(Branch::OddExterior, w, gap));
            if (i > 1) CHECK(T < prev);
            prev = T;
        }
    }
}

TEST_CASE("logarithmic growth near the homoclinic level") {
    // T ~ c log(1/gap) with c = sqrt(2/V''(0)) per crossing of the saddle.
    const double w = 0.5;
    const PotentialModel m(w);
    const double c = 1.0 / std::sqrt(-potential_derivative(m, 0.0, 2));
    auto T = [&](double gap) { return period_at(Branch::EvenInterior, w, level_from_gap(Branch::EvenInterior, w, gap)); };
    CHECK((T(1e-30) - T(1e-20)) / std::log(1e10) == doctest::Approx(c).epsilon(1e-6));
    auto To = [&](double gap) { return period_at(Branch::OddExterior, w, level_from_gap(Branch::OddExterior, w, gap)); };
    CHECK((To(1e-30) - To(1e-20)) / std::log(1e10) == doctest::Approx(2 * c).epsilon(1e-6));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(period_even(0.5, -1.0), Error);
    CHECK_THROWS_AS(period_even(0.5, 1.0), Error);
    CHECK_THROWS_AS(period_odd(0.5, 0.0), Error);
    CHECK_THROWS_AS(period_even(-0.1, 0.01), Error);
}

TEST_CASE("energy grids and scans") {
    const std::vector<double> g = default_energy_grid(Branch::EvenInterior, 0.5);
    CHECK(g.size() == 2300);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    const std::vector<double> sub(g.begin(), g.begin() + 20);
    const auto scan = period_scan(Branch::EvenInterior, 0.5, sub, {}, true, Exec::Serial);
    for (std::size_t i = 0; i < scan.size(); ++i) {
        CHECK(scan[i].ok);
        CHECK(scan[i].dT_dE > 0.0);
        if (i) CHECK(scan[i].T > scan[i - 1].T);
    }
}
