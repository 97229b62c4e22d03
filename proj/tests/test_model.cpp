#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "idd/error.hpp"
#include "idd/model.hpp"

using namespace idd;

namespace {

double central(const std::function<double(double)>& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("potential has a double zero at the centre and the right limits") {
    for (double w : {0.2, 0.5, 0.9}) {
        const PotentialModel m(w);
        CHECK(potential(m, std::sqrt(w)) == doctest::Approx(0.0).scale(1.0));
        CHECK(potential_derivative(m, std::sqrt(w), 1) == doctest::Approx(0.0).scale(1.0));
        CHECK(potential(m, 0.0) == doctest::Approx(homoclinic_energy(m)).epsilon(1e-14));
        CHECK(homoclinic_energy(m) == doctest::Approx(w / 2 + (1 - w) / 2 * std::log(1 - w)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(potential(PotentialModel(0.5), 1.0), Error);
    CHECK_THROWS_AS(PotentialModel(1.5), Error);
}

TEST_CASE("closed-form derivatives agree with difference quotients") {
    for (double w : {-0.5, 0.3, 0.7}) {
        const PotentialModel m(w);
        for (double phi : {0.1, 0.45, 0.8, 0.95}) {
            const double h = 1e-4 * (1 - phi);
            auto V = [&](double p) { return potential(m, p); };
            auto V1 = [&](double p) { return potential_derivative(m, p, 1); };
            auto V2 = [&](double p) { return potential_derivative(m, p, 2); };
            CHECK(potential_derivative(m, phi, 1) == doctest::Approx(central(V, phi, h)).epsilon(1e-8));
            CHECK(potential_derivative(m, phi, 2) == doctest::Approx(central(V1, phi, h)).epsilon(1e-8));
            CHECK(potential_derivative(m, phi, 3) == doctest::Approx(central(V2, phi, h)).epsilon(1e-7));
        }
    }
}

TEST_CASE("potential drop matches direct subtraction where that is accurate") {
    const PotentialModel m(0.6);
    for (auto [a, phi] : {std::pair{0.95, 0.3}, std::pair{0.2, 0.7}, std::pair{0.9, 0.899}}) {
        CHECK(potential_drop(m, a, phi) == doctest::Approx(potential(m, a) - potential(m, phi)).epsilon(1e-10));
    }
    // Offsets far below the spacing of doubles near a stay informative.
    const double a = 0.97;
    const double tiny = potential_drop_offset(m, a, -1e-20);
    CHECK(tiny == doctest::Approx(-1e-20 * potential_derivative(m, a, 1)).epsilon(1e-12));
}

TEST_CASE("limiting frequencies and bifurcation coefficients") {
    const auto lim = limiting_frequencies(2 * std::numbers::pi);
    CHECK(lim.omega_L == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(lim.Omega_L == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(bifurcation_omega2(Branch::EvenInterior, 2 * std::numbers::pi) == doctest::Approx(1.722222222222222));
    CHECK(bifurcation_omega2(Branch::OddExterior, 2 * std::numbers::pi) == doctest::Approx(1.5));
    CHECK(bifurcation_omega2(Branch::OddExterior, 1e6) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK_THROWS_AS(limiting_frequencies(0.0), Error);
}

TEST_CASE("certificate functions: positivity, quadruple zero and B bounds") {
    for (double w : {0.3, 0.5, 0.7}) {
        const PotentialModel m(w);
        const ChiconeValues at = chicone_functions(m, w);
        CHECK(at.B == 0.0);
        CHECK(at.P == doctest::Approx(0.0).scale(1.0));
        for (int i = 1; i < 200; ++i) {
            const double t = i / 200.0;
            if (std::abs(t - w) < 1e-12) continue;
            const ChiconeValues c = chicone_functions(m, t);
            CHECK(c.P > 0.0);
            // B against its defining logarithmic form.
            CHECK(c.B == doctest::Approx(w - t + (1 - w) * std::log((1 - w) / (1 - t))).epsilon(1e-9).scale(1e-12));
            const double lower = (w - t) * (w - t) / (2 * (1 - t));
            if (t < w) {
                CHECK(c.B >= lower * (1 - 1e-12));
                CHECK(c.B <= (w - t) * (w - t) / (2 * (1 - w)) * (1 + 1e-12));
            } else {
                CHECK(c.B <= lower * (1 + 1e-12));
            }
        }
        // Fourth derivative at the quadruple zero.
        const double h = 0.02 * (1 - w);
        auto P = [&](double t) { return chicone_functions(m, t).P; };
        const double d4 = (P(w - 2 * h) - 4 * P(w - h) + 6 * P(w) - 4 * P(w + h) + P(w + 2 * h)) / (h * h * h * h);
        CHECK(d4 == doctest::Approx(4 * (9 - 6 * w - w * w) / (1 - w)).epsilon(0.01));
    }
}

TEST_CASE("I'' matches the second derivative of V / V'^2") {
    const PotentialModel m(0.5);
    auto N = [&](double p) {
        const double d = potential_derivative(m, p, 1);
        return potential(m, p) / (d * d);
    };
    for (double phi : {0.2, 0.5, 0.85, 0.95}) {
        const double h = 1e-3 * (1 - phi);
        const double fd = (-N(phi - 2 * h) + 16 * N(phi - h) - 30 * N(phi) + 16 * N(phi + h) - N(phi + 2 * h)) / (12 * h * h);
        CHECK(chicone_I_second(m, phi) == doctest::Approx(fd).epsilon(1e-5));
        CHECK(chicone_I_second(m, phi) > 0.0);
    }
    // Removable point: the series branch is continuous through phi = sqrt(omega).
    const double c = std::sqrt(0.5);
    CHECK(chicone_I_second(m, c) == doctest::Approx((9 - 3 - 0.25) / (6 * 0.25 * 0.5)).epsilon(1e-12));
    CHECK(chicone_I_second(m, c * (1 + 1e-9)) == doctest::Approx(chicone_I_second(m, c)).epsilon(1e-7));
}
