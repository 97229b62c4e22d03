#include "idd/observables.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "idd/error.hpp"
#include "idd/period.hpp"
#include "idd/spectrum.hpp"

namespace idd {

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Stable: return "Stable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

Verdict classify_slope(double slope, double eps_slope) {
    if (slope > eps_slope) return Verdict::Stable;
    if (slope < -eps_slope) return Verdict::Unstable;
    return Verdict::Inconclusive;
}

double mass_quadrature(const FamilyPoint& point, const Tolerances& tol) {
    if (!point.converged) throw Error(ErrorCode::InvalidArgument, "family point did not converge");
    // -log(1 - phi^2) is exactly zeta.
    return orbit_integral(point.orbit(), [](double, double zeta) { return zeta; }, tol);
}

double mass_slope_at(const FamilyPoint& point, double h, const Tolerances& tol) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "slope step must be positive");
    const Tolerances family_tol = default_family_tolerances();
    const FamilyPoint lo = solve_energy_for_period(point.branch, point.omega - h, point.L, family_tol);
    const FamilyPoint hi = solve_energy_for_period(point.branch, point.omega + h, point.L, family_tol);
    return (mass_quadrature(hi, tol) - mass_quadrature(lo, tol)) / (2.0 * h);
}

std::vector<double> mass_values(const FamilyCurve& curve, const Tolerances& tol, Exec exec) {
    std::vector<double> q(curve.points.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(
        curve.points.size(),
        [&](std::size_t i) {
            if (curve.points[i].converged) q[i] = mass_quadrature(curve.points[i], tol);
        },
        exec);
    return q;
}

double mass_trapezoid(const Profile& profile) {
    double acc = 0.0;
    for (std::size_t i = 1; i < profile.xs.size(); ++i) {
        const double a = -std::log1p(-profile.phis[i - 1] * profile.phis[i - 1]);
        const double b = -std::log1p(-profile.phis[i] * profile.phis[i]);
        acc += 0.5 * (a + b) * (profile.xs[i] - profile.xs[i - 1]);
    }
    return acc;
}

double energy_functional(const Profile& profile) {
    const std::size_t n = profile.xs.size();
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "profile too short");
    const std::vector<double>& x = profile.xs;
    const std::vector<double>& p = profile.phis;
    // Periodic neighbours: the first and last samples are the same point.
    auto slope = [&](std::size_t i) {
        double xl, pl, xr, pr;
        if (i == 0) {
            xl = x[n - 2] - profile.L;
            pl = p[n - 2];
        } else {
            xl = x[i - 1];
            pl = p[i - 1];
        }
        if (i == n - 1) {
            xr = x[1] + profile.L;
            pr = p[1];
        } else {
            xr = x[i + 1];
            pr = p[i + 1];
        }
        const std::vector<double> w = fd_weights(x[i], {xl, x[i], xr}, 1);
        return w[0] * pl + w[1] * p[i] + w[2] * pr;
    };
    auto density = [&](std::size_t i) {
        const double d = slope(i);
        return d * d + p[i] * p[i] + std::log1p(-p[i] * p[i]);
    };
    double acc = 0.0;
    double prev = density(0);
    for (std::size_t i = 1; i < n; ++i) {
        const double cur = density(i);
        acc += 0.5 * (prev + cur) * (x[i] - x[i - 1]);
        prev = cur;
    }
    return acc;
}

double mass_peaked(Branch branch, double L) {
    if (!(L > 0.0)) throw Error(ErrorCode::DomainError, "period L must be positive");
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    // The L^2 terms cancel against 2L log(2cosh(L/2)) resp. 2L log(2sinh(L/4))
    // exactly, which leaves log1p forms that stay accurate for large L.
    if (branch == Branch::EvenInterior) {
        return 2.0 * L * std::log1p(std::exp(-L)) + pi2 / 6.0 - dilog(std::exp(-2.0 * L));
    }
    return 2.0 * L * std::log1p(-std::exp(-0.5 * L)) + pi2 / 3.0 - 2.0 * dilog(std::exp(-L));
}

std::vector<double> grid_derivative(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 3 || y.size() != n) throw Error(ErrorCode::InvalidArgument, "need at least three points");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
        const std::vector<double> nodes{x[lo], x[lo + 1], x[lo + 2]};
        const std::vector<double> w = fd_weights(x[i], nodes, 1);
        d[i] = w[0] * y[lo] + w[1] * y[lo + 1] + w[2] * y[lo + 2];
    }
    return d;
}

MassCurveReport verdicts_from_masses(const std::vector<double>& omega, const std::vector<double>& Q,
                                     double eps_slope) {
    if (omega.size() < 5) throw Error(ErrorCode::InvalidArgument, "mass curves need at least five points");
    const std::vector<double> slope = grid_derivative(omega, Q);
    MassCurveReport rep;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        rep.verdicts.push_back({omega[i], Q[i], slope[i], classify_slope(slope[i], eps_slope)});
    }
    for (std::size_t i = 1; i < omega.size(); ++i) {
        const double a = slope[i - 1], b = slope[i];
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) {
            rep.sign_changes.push_back(omega[i - 1] + (omega[i] - omega[i - 1]) * a / (a - b));
        }
    }
    return rep;
}

MassCurveReport mass_curve_and_verdicts(FamilyCurve& curve, const Tolerances& tol, Exec exec, double eps_slope) {
    const std::vector<double> q = mass_values(curve, tol, exec);
    std::vector<double> w, qs;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (curve.points[i].converged) {
            w.push_back(curve.points[i].omega);
            qs.push_back(q[i]);
            idx.push_back(i);
        }
    }
    MassCurveReport rep = verdicts_from_masses(w, qs, eps_slope);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        FamilyPoint& p = curve.points[idx[k]];
        p.Q = rep.verdicts[k].Q;
        p.dQ_domega = rep.verdicts[k].dQ_domega;
        if (rep.verdicts[k].verdict != Verdict::Inconclusive) p.stable = rep.verdicts[k].verdict == Verdict::Stable;
    }
    return rep;
}

IdentityCheck constrained_index_identity(const FamilyPoint& point, const SpectrumHandle& spectrum) {
    if (!point.dQ_domega) throw Error(ErrorCode::InvalidArgument, "family point carries no dQ/domega");
    const std::vector<double> phi0 = constraint_vector(spectrum.op());
    return {spectrum.inverse_form(phi0), -0.5 * *point.dQ_domega};
}

}  // namespace idd
