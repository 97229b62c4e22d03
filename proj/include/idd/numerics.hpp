#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace idd {

struct Tolerances {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 60;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

using RealFn = std::function<double(double)>;

enum class Singular { Left, Right, Both };

// Global adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
QuadratureResult integrate_adaptive(const RealFn& f, double a, double b, const Tolerances& tol = {});

// Integrates f over [a, b] where f has inverse square-root blow-up at the
// flagged endpoint(s). The substitution phi = a + u^2 (or b - u^2) turns
// such an integrand into a bounded one. `f` is the full integrand.
QuadratureResult integrate_sqrt_singular(const RealFn& f, double a, double b, Singular where,
                                         const Tolerances& tol = {});

// Same substitution, but the integrand receives the signed offset
// delta = phi - endpoint instead of phi. Near the endpoint phi itself rounds
// to the endpoint long before delta underflows, so integrands that can form
// their singular factor from delta directly keep full accuracy.
using OffsetFn = std::function<double(double endpoint, double delta)>;
QuadratureResult integrate_sqrt_singular(const OffsetFn& f, double a, double b, Singular where,
                                         const Tolerances& tol = {});

// Safeguarded Newton iteration on a sign-changing bracket. The derivative is
// a central finite difference unless `dg` is supplied. `x0` seeds the
// iteration (default: bracket midpoint).
double find_root_bracketed(const RealFn& g, double lo, double hi, const Tolerances& tol = {},
                           const RealFn& dg = nullptr, std::optional<double> x0 = std::nullopt);

// Real dilogarithm on [0, 1].
double dilog(double z);

// log1p(y) - y, accurate for small |y|.
double log1p_minus_x(double y);

// Finite-difference weights (Fornberg) for the derivative of order `order`
// at x0 from arbitrary distinct nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order);

// Monotone piecewise-cubic (Fritsch-Carlson) interpolant. xs must be strictly
// increasing.
class Pchip {
public:
    Pchip(std::vector<double> xs, std::vector<double> ys);
    double operator()(double x) const;
    double derivative(double x) const;
    const std::vector<double>& xs() const { return xs_; }

private:
    std::size_t segment(double x) const;
    std::vector<double> xs_, ys_, ds_;
};

}  // namespace idd
