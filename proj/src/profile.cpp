#include "idd/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "idd/error.hpp"
#include "idd/period.hpp"

namespace idd {

namespace {

// Cumulative integrals of `f` between consecutive points of the increasing
// grid `us`, starting from 0 at us[0].
std::vector<double> cumulative(const RealFn& f, const std::vector<double>& us, const Tolerances& tol) {
    std::vector<double> acc(us.size(), 0.0);
    for (std::size_t i = 1; i < us.size(); ++i) {
        const double piece = us[i] > us[i - 1] ? integrate_adaptive(f, us[i - 1], us[i], tol).value : 0.0;
        acc[i] = acc[i - 1] + piece;
    }
    return acc;
}

double zeta_of(double phi) { return -std::log((1.0 - phi) * (1.0 + phi)); }

// Distance in x from the outer turning point M down to each phi in `phis`
// (all at or below M), using u = sqrt(M - phi), or u = sqrt(zeta_M - zeta)
// for orbits whose M is not resolvable in phi.
std::vector<double> distance_from_outer(const Orbit& orbit, const std::vector<double>& phis, const Tolerances& tol) {
    const PotentialModel model(orbit.omega);
    const bool zeta_mode = orbit.zeta_M >= -std::log(kZetaSwitch);
    std::vector<double> us(phis.size());
    RealFn f;
    if (!zeta_mode) {
        for (std::size_t i = 0; i < phis.size(); ++i) us[i] = std::sqrt(std::max(0.0, orbit.M - phis[i]));
        f = [&model, M = orbit.M](double u) {
            return 2.0 * u / std::sqrt(2.0 * potential_drop_offset(model, M, -u * u));
        };
    } else {
        for (std::size_t i = 0; i < phis.size(); ++i) {
            us[i] = std::sqrt(std::max(0.0, orbit.zeta_M - zeta_of(phis[i])));
        }
        f = [omega = orbit.omega, zM = orbit.zeta_M](double v) {
            const double delta = v * v;
            const double zeta = zM - delta;
            const double q = std::exp(-zeta);
            const double phi = std::sqrt(-std::expm1(-zeta));
            return 2.0 * v * q / (2.0 * phi * std::sqrt(2.0 * excess_from_zeta(omega, zM, delta)));
        };
    }
    return cumulative(f, us, tol);
}

void check_point(const FamilyPoint& point) {
    if (!point.converged) throw Error(ErrorCode::InvalidArgument, "family point did not converge");
}

}  // namespace

Profile reconstruct_profile(const FamilyPoint& point, int n_samples, const Tolerances& tol) {
    check_point(point);
    if (n_samples < 16) throw Error(ErrorCode::InvalidArgument, "profiles need at least 16 samples");
    const Orbit orbit = point.orbit();
    const PotentialModel model(point.omega);
    const double L = point.L;
    Profile prof;
    prof.branch = point.branch;
    prof.L = L;
    prof.omega = point.omega;

    if (point.branch == Branch::EvenInterior) {
        const double m = orbit.m.value(), M = orbit.M;
        if (M - m < 1e-8) throw Error(ErrorCode::DegenerateOrbit, "even orbit amplitude below 1e-8");
        const int k = (n_samples - 1 + 1) / 2;
        // Cosine clustering at both turning points; index 0 is M (x = 0).
        std::vector<double> phi(k + 1);
        for (int i = 0; i <= k; ++i) {
            phi[i] = 0.5 * (M + m) + 0.5 * (M - m) * std::cos(std::numbers::pi * i / k);
        }
        phi[0] = M;
        phi[k] = m;
        const double c = model.center();
        std::vector<double> x(k + 1);
        // Upper arc measured from M.
        std::vector<double> upper;
        for (int i = 0; i <= k && phi[i] >= c; ++i) upper.push_back(phi[i]);
        const std::vector<double> du = distance_from_outer(orbit, upper, tol);
        for (std::size_t i = 0; i < upper.size(); ++i) x[i] = du[i];
        // Lower arc measured from m, walking upward from index k.
        std::vector<double> us;
        for (int i = k; i >= static_cast<int>(upper.size()); --i) us.push_back(std::sqrt(std::max(0.0, phi[i] - m)));
        auto f = [&model, m](double u) { return 2.0 * u / std::sqrt(2.0 * potential_drop_offset(model, m, u * u)); };
        const std::vector<double> dl = cumulative(f, us, tol);
        for (std::size_t j = 0; j < us.size(); ++j) x[k - static_cast<int>(j)] = 0.5 * L - dl[j];
        x[0] = 0.0;
        x[k] = 0.5 * L;
        for (int i = k; i >= 1; --i) {
            prof.xs.push_back(-x[i]);
            prof.phis.push_back(phi[i]);
        }
        for (int i = 0; i <= k; ++i) {
            prof.xs.push_back(x[i]);
            prof.phis.push_back(phi[i]);
        }
        return prof;
    }

    const double M = orbit.M;
    if (M < 1e-8) throw Error(ErrorCode::DegenerateOrbit, "odd orbit amplitude below 1e-8");
    const int k = (n_samples - 1 + 3) / 4;
    std::vector<double> phi(k + 1);
    for (int i = 0; i <= k; ++i) phi[i] = M * std::sin(0.5 * std::numbers::pi * i / k);
    phi[0] = 0.0;
    phi[k] = M;
    std::vector<double> x(k + 1);
    const double split = 0.5 * M;
    std::vector<double> inner;
    for (int i = 0; i <= k && phi[i] <= split; ++i) inner.push_back(phi[i]);
    auto f = [&model, gap = orbit.gap](double p) {
        return 1.0 / std::sqrt(2.0 * (gap + potential_drop(model, 0.0, p)));
    };
    const std::vector<double> di = cumulative(f, inner, tol);
    for (std::size_t i = 0; i < inner.size(); ++i) x[i] = di[i];
    std::vector<double> outer;
    for (int i = k; i >= static_cast<int>(inner.size()); --i) outer.push_back(phi[i]);
    const std::vector<double> dout = distance_from_outer(orbit, outer, tol);
    for (std::size_t j = 0; j < outer.size(); ++j) x[k - static_cast<int>(j)] = 0.25 * L - dout[j];
    x[0] = 0.0;
    x[k] = 0.25 * L;
    // Quarter [0, L/4] -> half [0, L/2] by phi(L/2 - x) = phi(x), then odd
    // reflection to [-L/2, 0).
    std::vector<double> hx, hp;
    for (int i = 0; i <= k; ++i) {
        hx.push_back(x[i]);
        hp.push_back(phi[i]);
    }
    for (int i = k - 1; i >= 0; --i) {
        hx.push_back(0.5 * L - x[i]);
        hp.push_back(phi[i]);
    }
    for (std::size_t i = hx.size() - 1; i >= 1; --i) {
        prof.xs.push_back(-hx[i]);
        prof.phis.push_back(-hp[i]);
    }
    for (std::size_t i = 0; i < hx.size(); ++i) {
        prof.xs.push_back(hx[i]);
        prof.phis.push_back(hp[i]);
    }
    return prof;
}

double peaked_profile(Branch branch, double L, double x) {
    if (!(L > 0.0)) throw Error(ErrorCode::DomainError, "period L must be positive");
    const double half = 0.5 * L;
    if (!(std::abs(x) <= half * (1.0 + 1e-15))) {
        throw Error(ErrorCode::DomainError, "x must lie in [-L/2, L/2]; reduce modulo L first");
    }
    if (branch == Branch::EvenInterior) return std::cosh(half - std::abs(x)) / std::cosh(half);
    const double quarter = 0.25 * L;
    const double s = std::sinh(quarter);
    if (x < -quarter) return -std::sinh(half + x) / s;
    if (x > quarter) return std::sinh(half - x) / s;
    return std::sinh(x) / s;
}

double peaked_profile_derivative(Branch branch, double L, double x, int order) {
    if (order != 1 && order != 2) throw Error(ErrorCode::InvalidArgument, "derivative order must be 1 or 2");
    // Every piece is a combination of sinh and cosh, so phi'' = phi.
    if (order == 2) return peaked_profile(branch, L, x);
    const double half = 0.5 * L;
    if (branch == Branch::EvenInterior) {
        const double sign = x > 0.0 ? -1.0 : 1.0;
        return sign * std::sinh(half - std::abs(x)) / std::cosh(half);
    }
    const double quarter = 0.25 * L;
    const double s = std::sinh(quarter);
    if (x < -quarter) return -std::cosh(half + x) / s;
    if (x > quarter) return -std::cosh(half - x) / s;
    return std::cosh(x) / s;
}

Profile peaked_profile_samples(Branch branch, double L, int n_samples) {
    if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    Profile p;
    p.branch = branch;
    p.L = L;
    p.omega = 1.0;
    for (int i = 0; i < n_samples; ++i) {
        const double x = -0.5 * L + L * i / (n_samples - 1);
        p.xs.push_back(x);
        p.phis.push_back(peaked_profile(branch, L, x));
    }
    return p;
}

std::vector<double> profile_derivative(const Profile& profile, int order) {
    const std::size_t n = profile.xs.size();
    std::vector<double> d(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const std::vector<double> nodes(profile.xs.begin() + static_cast<long>(i) - 2,
                                        profile.xs.begin() + static_cast<long>(i) + 3);
        const std::vector<double> w = fd_weights(profile.xs[i], nodes, order);
        double acc = 0.0;
        for (int j = 0; j < 5; ++j) acc += w[j] * profile.phis[i - 2 + j];
        d[i] = acc;
    }
    return d;
}

double profile_energy_check(const Profile& profile, double E_expected) {
    const PotentialModel model(profile.omega);
    const std::vector<double> dphi = profile_derivative(profile, 1);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < profile.xs.size(); ++i) {
        worst = std::max(worst, std::abs(orbit_energy(model, profile.phis[i], dphi[i]) - E_expected));
    }
    return worst;
}

std::vector<double> resample_uniform(const Profile& profile, int N) {
    if (N < 4 || profile.xs.size() < 4) throw Error(ErrorCode::ResampleFailure, "too few samples to resample");
    // Drop repeated abscissae (possible where the peak is flat to rounding).
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < profile.xs.size(); ++i) {
        if (!xs.empty() && !(profile.xs[i] > xs.back())) {
            if (profile.xs[i] < xs.back()) throw Error(ErrorCode::ResampleFailure, "profile abscissae not sorted");
            continue;
        }
        xs.push_back(profile.xs[i]);
        ys.push_back(profile.phis[i]);
    }
    const Pchip interp(xs, ys);
    std::vector<double> out(N);
    for (int j = 0; j < N; ++j) out[j] = interp(-0.5 * profile.L + profile.L * j / N);
    return out;
}

}  // namespace idd
