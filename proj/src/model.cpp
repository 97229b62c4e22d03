#include "idd/model.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "idd/error.hpp"
#include "idd/numerics.hpp"

namespace idd {

const char* to_string(Branch b) noexcept {
    return b == Branch::EvenInterior ? "even" : "odd";
}

PotentialModel::PotentialModel(double omega) : omega_(omega), center_(omega > 0.0 ? std::sqrt(omega) : 0.0) {
    if (!std::isfinite(omega) || omega > 1.0) {
        throw Error(ErrorCode::DomainError, "frequency must be finite and at most 1");
    }
}

double PotentialModel::t_minus_omega(double phi) const {
    if (omega_ > 0.0) return (phi - center_) * (phi + center_);
    return phi * phi - omega_;
}

namespace {

void require_open_unit(double phi) {
    if (!(std::abs(phi) < 1.0)) throw Error(ErrorCode::DomainError, "|phi| must be below 1");
}

double one_minus_sq(double phi) { return (1.0 - phi) * (1.0 + phi); }

// -x - log(1 - x) = sum_{n>=2} x^n / n.
double neg_x_minus_log1m(double x) { return -log1p_minus_x(-x); }

// B as a function of d = t - omega: (1 - omega) h(d / (1 - omega)).
double b_from_d(double omega, double d) {
    if (omega == 1.0) return -d;
    return (1.0 - omega) * neg_x_minus_log1m(d / (1.0 - omega));
}

constexpr int kSeriesOrder = 40;
using Series = std::array<double, kSeriesOrder>;

Series multiply(const Series& a, const Series& b) {
    Series c{};
    for (int i = 0; i < kSeriesOrder; ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; i + j < kSeriesOrder; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

// Taylor coefficients S_k with P(omega + d) = d^4 sum_k S_{k+2} d^k.
// P = d^2 [3 t A + G b(d)] where B = d^2 b(d); the bracket vanishes to
// second order at d = 0, so the first two coefficients are dropped.
Series p_over_d4_series(double omega) {
    const double c = 1.0 - omega;
    Series A{}, tA{}, G{}, b{};
    A[0] = -2.0 * omega * c;
    A[1] = -3.0 * c;
    A[2] = 1.0;
    Series t{};
    t[0] = omega;
    t[1] = 1.0;
    tA = multiply(t, A);
    for (double& v : tA) v *= 3.0;
    Series A2 = multiply(A, A);
    Series three_plus_t{};
    three_plus_t[0] = 3.0 + omega;
    three_plus_t[1] = 1.0;
    Series cubic = multiply(t, three_plus_t);
    // 2 (1 - omega) t (3 + t)(omega - t) with omega - t = -d.
    for (int k = 0; k < kSeriesOrder; ++k) {
        G[k] = 3.0 * A2[k] - (k > 0 ? 2.0 * c * cubic[k - 1] : 0.0);
    }
    double pow_c = c;
    for (int j = 0; j < kSeriesOrder; ++j) {
        b[j] = 1.0 / ((j + 2) * pow_c);
        pow_c *= c;
    }
    Series gb = multiply(G, b);
    Series s{};
    for (int k = 0; k < kSeriesOrder; ++k) s[k] = tA[k] + gb[k];
    Series out{};
    for (int k = 2; k < kSeriesOrder; ++k) out[k - 2] = s[k];
    return out;
}

double eval_series(const Series& s, double d) {
    double acc = 0.0;
    for (int k = kSeriesOrder - 1; k >= 0; --k) acc = acc * d + s[k];
    return acc;
}

void require_chicone_omega(double omega) {
    if (!(omega > 0.0 && omega < 1.0)) {
        throw Error(ErrorCode::DomainError, "certificate functions need omega in (0, 1)");
    }
}

}  // namespace

double potential(const PotentialModel& model, double phi) {
    require_open_unit(phi);
    return 0.5 * b_from_d(model.omega(), model.t_minus_omega(phi));
}

double potential_derivative(const PotentialModel& model, double phi, int order) {
    require_open_unit(phi);
    const double w = model.omega();
    const double q = one_minus_sq(phi);
    const double p2 = phi * phi;
    switch (order) {
        case 1:
            return phi * model.t_minus_omega(phi) / q;
        case 2:
            return -(w + (w - 3.0) * p2 + p2 * p2) / (q * q);
        case 3:
            return 2.0 * (1.0 - w) * phi * (p2 + 3.0) / (q * q * q);
        default:
            throw Error(ErrorCode::InvalidArgument, "derivative order must be 1, 2 or 3");
    }
}

double orbit_energy(const PotentialModel& model, double phi, double phip) {
    return 0.5 * phip * phip + potential(model, phi);
}

double homoclinic_energy(const PotentialModel& model) {
    const double w = model.omega();
    if (!(w < 1.0)) throw Error(ErrorCode::DomainError, "homoclinic energy needs omega < 1");
    return 0.5 * w + 0.5 * (1.0 - w) * std::log1p(-w);
}

namespace {

// V(a) - V(phi) with s = a^2 - phi^2 given; y = s / (1 - a^2) gives
// (1 - phi^2)/(1 - a^2) = 1 + y, so the log term is (1 - omega)/2 log1p(y).
double drop_from_s(const PotentialModel& model, double a, double s) {
    const double qa = one_minus_sq(a);
    const double y = s / qa;
    return 0.5 * s * model.t_minus_omega(a) / qa + 0.5 * (1.0 - model.omega()) * log1p_minus_x(y);
}

}  // namespace

double potential_drop(const PotentialModel& model, double a, double phi) {
    require_open_unit(a);
    require_open_unit(phi);
    return drop_from_s(model, a, (a - phi) * (a + phi));
}

double potential_drop_offset(const PotentialModel& model, double a, double delta) {
    require_open_unit(a);
    require_open_unit(a + delta);
    return drop_from_s(model, a, -delta * (2.0 * a + delta));
}

LimitingFrequencies limiting_frequencies(double L) {
    if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorCode::DomainError, "period L must be positive");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return {2.0 * pi2 / (L * L + 2.0 * pi2), -4.0 * pi2 / (L * L)};
}

double g_poly(const PotentialModel& model, double t) {
    const double w = model.omega();
    const double A = w + (w - 3.0) * t + t * t;
    return 3.0 * A * A + 2.0 * (1.0 - w) * t * (3.0 + t) * (w - t);
}

ChiconeValues chicone_functions(const PotentialModel& model, double t) {
    const double w = model.omega();
    require_chicone_omega(w);
    if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::DomainError, "t must lie in [0, 1)");
    const double d = t - w;
    ChiconeValues out{};
    out.A = w + (w - 3.0) * t + t * t;
    out.B = b_from_d(w, d);
    if (std::abs(d) < 0.1 * (1.0 - w)) {
        const double d2 = d * d;
        out.P = d2 * d2 * eval_series(p_over_d4_series(w), d);
    } else {
        out.P = 3.0 * t * d * d * out.A + g_poly(model, t) * out.B;
    }
    return out;
}

double chicone_I_second(const PotentialModel& model, double phi) {
    const double w = model.omega();
    require_chicone_omega(w);
    if (!(phi > 0.0 && phi < 1.0)) throw Error(ErrorCode::DomainError, "phi must lie in (0, 1)");
    const double t = phi * phi;
    const double d = model.t_minus_omega(phi);
    // (V')^4 (1 - phi^2)^4 = t^2 (t - omega)^4.
    if (std::abs(d) < 0.1 * (1.0 - w)) {
        return eval_series(p_over_d4_series(w), d) / (t * t);
    }
    const double d2 = d * d;
    return chicone_functions(model, t).P / (t * t * d2 * d2);
}

double bifurcation_omega2(Branch branch, double L) {
    const auto lim = limiting_frequencies(L);
    if (branch == Branch::EvenInterior) {
        const double w = lim.omega_L;
        return (9.0 - 6.0 * w - w * w) / (6.0 * (1.0 - w));
    }
    const double k = 2.0 * std::numbers::pi / L;
    return 0.75 * (1.0 + k * k);
}

}  // namespace idd
