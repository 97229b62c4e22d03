#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "idd/error.hpp"
#include "idd/family.hpp"
#include "idd/observables.hpp"
#include "idd/spectrum.hpp"

using namespace idd;
constexpr double pi = std::numbers::pi;

TEST_CASE("constant state: spectrum of the periodic Laplacian plus a constant") {
    // phi = 0 gives L+ = L- = -D2 + omega with known discrete eigenvalues.
    const int N = 64;
    const double L = 2 * pi;
    const double w = 0.25;
    const DiscreteOperator op = build_operator_from_samples(std::vector<double>(N, 0.0), w, L, Operator::LPlus);
    std::vector<double> eig = eigenvalues(op);
    std::vector<double> expect;
    const double dx = L / N;
    for (int k = 0; k < N; ++k) expect.push_back(w + 4 / (dx * dx) * std::pow(std::sin(pi * k / N), 2));
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < N; ++k) CHECK(eig[k] == doctest::Approx(expect[k]).epsilon(1e-10));
    const IndexCounts c = count_indices(eig, 1e-8);
    CHECK(c.n == 0);
    CHECK(c.z == 0);
}

TEST_CASE("operator potentials") {
    CHECK(operator_potential(Operator::LPlus, 0.5, 0.0) == doctest::Approx(0.5));
    CHECK(operator_potential(Operator::LMinus, 0.5, 0.0) == doctest::Approx(0.5));
    // L- phi = 0 on a wave: its potential is (omega - phi^2)/(1 - phi^2).
    CHECK(operator_potential(Operator::LMinus, 0.3, 0.6) == doctest::Approx((0.3 - 0.36) / 0.64));
}

TEST_CASE("Morse and nullity counts on both branches") {
    const FamilyPoint even = solve_energy_for_period(Branch::EvenInterior, 0.6, 2 * pi);
    const FamilyPoint odd = solve_energy_for_period(Branch::OddExterior, 0.5, 2 * pi);
    for (int N : {256, 512}) {
        const SpectrumReport e = spectrum_report(even, N);
        CHECK(e.n_plus == 1);
        CHECK(e.z_plus == 1);
        CHECK(e.n_minus == 0);
        CHECK(e.z_minus == 1);
        CHECK(e.theta > 0.0);
        const SpectrumReport o = spectrum_report(odd, N);
        CHECK(o.n_plus == 2);
        CHECK(o.z_plus == 1);
        CHECK(o.n_minus == 1);
        CHECK(o.z_minus == 1);
        CHECK(o.theta < 0.0);
        REQUIRE(o.restricted.has_value());
        CHECK(o.restricted->n_plus_Y == 1);
        CHECK(o.restricted->z_plus_Y == 0);
        CHECK(o.restricted->n_minus_Y == 0);
        CHECK(o.restricted->z_minus_Y == 1);
    }
}

TEST_CASE("constrained identity and constrained count") {
    FamilyPoint p = solve_energy_for_period(Branch::EvenInterior, 0.45, 2 * pi);
    p.dQ_domega = mass_slope_at(p);
    CHECK(*p.dQ_domega > 0.0);
    const SpectrumReport r = spectrum_report(p, 256);
    REQUIRE(r.constrained_lhs.has_value());
    CHECK(*r.constrained_lhs == doctest::Approx(*r.constrained_rhs).epsilon(0.05));
    CHECK(*r.n_plus_constrained == 0);

    FamilyPoint o = solve_energy_for_period(Branch::OddExterior, 0.5, 2 * pi);
    o.dQ_domega = mass_slope_at(o);
    const SpectrumReport ro = spectrum_report(o, 256);
    CHECK(*ro.constrained_lhs == doctest::Approx(*ro.constrained_rhs).epsilon(0.05));
    CHECK(*ro.n_plus_constrained == 1);
}

TEST_CASE("restricted counts demand an odd profile") {
    const FamilyPoint even = solve_energy_for_period(Branch::EvenInterior, 0.6, 2 * pi);
    const Profile prof = reconstruct_profile(even, 1025);
    CHECK_THROWS_AS(restricted_indices(build_operator(prof, Operator::LPlus, 128), 1e-6), Error);
}

TEST_CASE("report serialises to JSON") {
    const SpectrumReport r = spectrum_report(solve_energy_for_period(Branch::OddExterior, 0.2, 2 * pi), 128);
    const std::string js = to_json_string(r);
    CHECK(js.find("\"n_plus\"") != std::string::npos);
    CHECK(js.find("\"restricted\"") != std::string::npos);
}
