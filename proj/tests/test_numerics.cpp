#include <doctest.h>

#include <cmath>
#include <numbers>

#include "idd/error.hpp"
#include "idd/numerics.hpp"

using namespace idd;
constexpr double pi = std::numbers::pi;

TEST_CASE("adaptive quadrature integrates smooth functions") {
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi).value == doctest::Approx(2.0).epsilon(1e-12));
    const double e = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, {1e-14, 1e-13}).value;
    CHECK(std::abs(e - (std::exp(1.0) - 1.0)) < 1e-13);
    // Peaked integrand forces real subdivision.
    const QuadratureResult r = integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0 * std::atan(1.0 / 1e-2) / 1e-2).epsilon(1e-9));
    CHECK(r.subdivisions > 1);
}

TEST_CASE("square-root endpoint singularities") {
    // Arcsine integrals have closed forms.
    const auto arcsine = [](double x) { return 1.0 / std::sqrt((1.0 - x) * (1.0 + x)); };
    CHECK(integrate_sqrt_singular(arcsine, 0.0, 1.0, Singular::Right).value == doctest::Approx(pi / 2).epsilon(1e-10));
    CHECK(integrate_sqrt_singular(arcsine, -1.0, 1.0, Singular::Both).value == doctest::Approx(pi).epsilon(1e-10));
    CHECK(integrate_sqrt_singular([](double x) { return std::cos(x) / std::sqrt(x); }, 0.0, 1.0, Singular::Left).value ==
          doctest::Approx(1.8090484758005441).epsilon(1e-10));
}

TEST_CASE("invalid quadrature requests are rejected") {
    CHECK_THROWS_AS(integrate_adaptive([](double) { return std::nan(""); }, 0.0, 1.0), Error);
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 1.0, 0.0), Error);
    Tolerances bad{-1.0, 1e-8};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("bracketed root finding") {
    const double r = find_root_bracketed([](double x) { return std::cos(x) - x; }, 0.0, 1.0, {1e-15, 1e-15});
    CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-14));
    // Analytic derivative path.
    const double c = find_root_bracketed([](double x) { return x * x * x - 2.0; }, 0.0, 2.0, {1e-15, 1e-15},
                                         [](double x) { return 3.0 * x * x; });
    CHECK(c == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
    try {
        find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0);
        FAIL("expected NoSignChange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSignChange);
    }
}

TEST_CASE("dilogarithm special values and the defining integral") {
    CHECK(dilog(0.0) == 0.0);
    CHECK(dilog(1.0) == doctest::Approx(pi * pi / 6).epsilon(1e-15));
    const double l2 = std::log(2.0);
    CHECK(dilog(0.5) == doctest::Approx(pi * pi / 12 - 0.5 * l2 * l2).epsilon(1e-15));
    for (double z : {0.05, 0.3, 0.5, 0.7, 0.93, 0.999}) {
        const double integral =
            integrate_adaptive([](double u) { return -std::log1p(-u) / u; }, 0.0, z, {1e-16, 1e-15}).value;
        CHECK(dilog(z) == doctest::Approx(integral).epsilon(1e-14));
    }
    CHECK_THROWS_AS(dilog(-0.5), Error);
    CHECK_THROWS_AS(dilog(1.5), Error);
}

TEST_CASE("log1p(y) - y without cancellation") {
    CHECK(log1p_minus_x(0.5) == doctest::Approx(std::log1p(0.5) - 0.5).epsilon(1e-15));
    const double y = 1e-6;
    CHECK(log1p_minus_x(y) == doctest::Approx(-y * y / 2 + y * y * y / 3).epsilon(1e-12));
    CHECK(log1p_minus_x(-0.09) == doctest::Approx(std::log1p(-0.09) + 0.09).epsilon(1e-13));
}

TEST_CASE("Fornberg weights differentiate polynomials exactly") {
    const std::vector<double> nodes{-0.3, -0.1, 0.05, 0.2, 0.45};
    const double x0 = 0.02;
    const auto f = [](double x) { return 1.0 + x - 2.0 * x * x + 0.5 * x * x * x * x; };
    const auto df = [](double x) { return 1.0 - 4.0 * x + 2.0 * x * x * x; };
    const auto d2f = [](double x) { return -4.0 + 6.0 * x * x; };
    for (int order : {1, 2}) {
        const std::vector<double> w = fd_weights(x0, nodes, order);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += w[i] * f(nodes[i]);
        CHECK(acc == doctest::Approx(order == 1 ? df(x0) : d2f(x0)).epsilon(1e-11));
    }
}

TEST_CASE("monotone cubic interpolation") {
    const Pchip line({0.0, 1.0, 3.0}, {1.0, 3.0, 7.0});
    CHECK(line(2.0) == doctest::Approx(5.0));
    CHECK(line.derivative(0.5) == doctest::Approx(2.0));
    const Pchip step({0.0, 1.0, 2.0, 3.0}, {0.0, 0.0, 1.0, 1.0});
    double prev = -1.0;
    for (int i = 0; i <= 300; ++i) {
        const double v = step(3.0 * i / 300.0);
        CHECK(v >= prev - 1e-15);
        CHECK(v >= -1e-15);
        CHECK(v <= 1.0 + 1e-15);
        prev = v;
    }
}
