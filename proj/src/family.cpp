#include "idd/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "idd/error.hpp"

namespace idd {

EnergyLevel FamilyPoint::level() const {
    return {E_L, branch == Branch::EvenInterior ? -tilde_E : tilde_E};
}

Orbit FamilyPoint::orbit() const { return resolve_orbit(branch, omega, level()); }

bool FamilyCurve::all_converged() const {
    return std::all_of(points.begin(), points.end(), [](const FamilyPoint& p) { return p.converged; });
}

Tolerances default_family_tolerances() { return {1e-13, 1e-12, 60}; }

double lower_frequency(Branch branch, double L) {
    const auto lim = limiting_frequencies(L);
    return branch == Branch::EvenInterior ? lim.omega_L : lim.Omega_L;
}

namespace {

// Even branch: logistic coordinate s with E = Ew / (1 + e^-s) and
// gap = Ew / (1 + e^s); both ends of (0, Ew) stay resolvable.
EnergyLevel even_level(double Ew, double s) {
    return {Ew / (1.0 + std::exp(-s)), Ew / (1.0 + std::exp(s))};
}

double even_coordinate(double Ew, double gap) { return std::log((Ew - gap) / gap); }

// Odd branch: s = log(E - Ew).
EnergyLevel odd_level(double Ew, double s) {
    const double gap = std::exp(s);
    return {Ew + gap, gap};
}

FamilyPoint make_point(Branch branch, double omega, double L, const Orbit& orbit) {
    FamilyPoint p;
    p.branch = branch;
    p.omega = omega;
    p.L = L;
    p.E_L = orbit.energy;
    p.tilde_E = branch == Branch::EvenInterior ? -orbit.gap : orbit.gap;
    p.m = orbit.m.value_or(0.0);
    p.M = orbit.M;
    p.converged = true;
    return p;
}

}  // namespace

FamilyPoint solve_energy_for_period(Branch branch, double omega, double L, const Tolerances& tol) {
    return solve_energy_for_period(branch, omega, L, tol, std::nullopt);
}

FamilyPoint solve_energy_for_period(Branch branch, double omega, double L, const Tolerances& tol,
                                    std::optional<double> hint) {
    tol.validate();
    const double lower = lower_frequency(branch, L);
    if (!(omega > lower && omega < 1.0)) {
        std::ostringstream os;
        os << "omega=" << omega << " outside (" << lower << ", 1) for " << to_string(branch) << " waves with L=" << L;
        throw Error(ErrorCode::FrequencyOutOfRange, os.str());
    }
    const double Ew = homoclinic_energy(PotentialModel(omega));
    const bool even = branch == Branch::EvenInterior;
    auto level_at = [&](double s) { return even ? even_level(Ew, s) : odd_level(Ew, s); };
    auto residual = [&](double s) { return period_at(branch, omega, level_at(s), tol) - L; };

    // T increases with s on the even branch and decreases on the odd one
    // (monotone period function), so a single sign change is guaranteed.
    const double dir = even ? 1.0 : -1.0;
    double lo, hi;
    if (even) {
        lo = std::log(1e-12 / (1.0 - 1e-12));
        hi = -lo;
    } else {
        const double scale = std::max(Ew, 1e-3);
        lo = std::log(1e-12 * scale);
        hi = lo + std::log(10.0);
    }
    constexpr double kFloor = -690.0;  // gaps down to ~1e-300
    double r_lo = residual(lo);
    // Too-small (even) E or too-small (odd) gap already overshoots L.
    while (dir * r_lo >= 0.0) {
        if (lo <= kFloor) {
            throw Error(ErrorCode::FrequencyOutOfRange, "no energy level reaches the requested period");
        }
        hi = lo;
        lo = std::max(kFloor, lo - 20.0);
        r_lo = residual(lo);
    }
    double r_hi;
    for (;;) {
        try {
            r_hi = residual(hi);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::EnergyOutOfRange) {
                throw Error(ErrorCode::NonConvergence,
                            std::string("energy bracket left the resolvable range: ") + e.what());
            }
            throw;
        }
        if (dir * r_hi > 0.0) break;
        lo = hi;
        if (even) {
            if (hi >= -kFloor) throw Error(ErrorCode::NonConvergence, "period stays below L up to E_omega");
            hi = std::min(-kFloor, hi + 20.0);
        } else {
            hi += std::log(10.0);
        }
    }
    std::optional<double> x0;
    if (hint) {
        const double gap = std::abs(*hint);
        if (gap > 0.0 && (!even || gap < Ew)) x0 = even ? even_coordinate(Ew, gap) : std::log(gap);
    }
    const double s = find_root_bracketed(residual, lo, hi, Tolerances{1e-13, 1e-13, 60}, nullptr, x0);
    const Orbit orbit = resolve_orbit(branch, omega, level_at(s));
    const double T = period_of(orbit, tol);
    const double mismatch = std::abs(T - L) / L;
    if (!(mismatch <= std::max(1e-9, 10.0 * tol.rel_tol))) {
        std::ostringstream os;
        os << "period inversion stalled with |T-L|/L=" << mismatch;
        throw Error(ErrorCode::NonConvergence, os.str());
    }
    return make_point(branch, omega, L, orbit);
}

FamilyCurve continue_family(Branch branch, double L, const std::vector<double>& omega_grid, const Tolerances& tol) {
    FamilyCurve curve;
    curve.branch = branch;
    curve.L = L;
    for (std::size_t i = 1; i < omega_grid.size(); ++i) {
        if (!(omega_grid[i] > omega_grid[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "omega grid must be strictly increasing");
        }
    }
    if (!omega_grid.empty() && omega_grid.back() > kOmegaCap) {
        std::ostringstream os;
        os << "omega grid exceeds the cap " << kOmegaCap;
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    if (!omega_grid.empty() && omega_grid.back() > kOmegaWarn) {
        curve.warnings.push_back("frequencies above 0.97 approach the peaked limit; accuracy degrades there");
    }
    std::optional<double> hint;
    double omega_prev = 0.0;
    for (double omega : omega_grid) {
        FamilyPoint p;
        p.branch = branch;
        p.omega = omega;
        p.L = L;
        try {
            std::optional<double> seed;
            if (hint) {
                // Rescale the previous offset by the change in E_omega.
                const double e_now = homoclinic_energy(PotentialModel(omega));
                const double e_prev = homoclinic_energy(PotentialModel(omega_prev));
                seed = (e_prev > 0.0 && e_now > 0.0) ? *hint * e_now / e_prev : *hint;
            }
            p = solve_energy_for_period(branch, omega, L, tol, seed);
            hint = p.tilde_E;
            omega_prev = omega;
        } catch (const Error& e) {
            p.converged = false;
            p.error = e.what();
        }
        curve.points.push_back(p);
    }
    return curve;
}

double peaked_energy(Branch branch, double L) {
    if (!(L > 0.0)) throw Error(ErrorCode::DomainError, "period L must be positive");
    if (branch == Branch::EvenInterior) {
        const double c = std::cosh(0.5 * L);
        return -0.5 / (c * c);
    }
    // Energy of the odd peaked profile sinh(x)/sinh(L/4): the quarter-period
    // scale sets the level.
    const double s = std::sinh(0.25 * L);
    return 0.5 / (s * s);
}

std::vector<InterpolatedPoint> interpolate_to_peaked(const FamilyCurve& curve, int n) {
    std::vector<double> xs, ys;
    for (const FamilyPoint& p : curve.points) {
        if (p.converged) {
            xs.push_back(p.omega);
            ys.push_back(p.tilde_E);
        }
    }
    if (xs.empty() || n <= 0) return {};
    const std::size_t keep = std::min<std::size_t>(xs.size(), 3);
    std::vector<double> kx(xs.end() - static_cast<long>(keep), xs.end());
    std::vector<double> ky(ys.end() - static_cast<long>(keep), ys.end());
    kx.push_back(1.0);
    ky.push_back(peaked_energy(curve.branch, curve.L));
    const Pchip bridge(kx, ky);
    std::vector<InterpolatedPoint> out;
    const double start = xs.back();
    for (int i = 1; i <= n; ++i) {
        const double w = start + (1.0 - start) * i / (n + 1);
        out.push_back({w, bridge(w)});
    }
    return out;
}

std::vector<double> uniform_omega_grid(Branch branch, double L, int n, double upper) {
    const double lo = lower_frequency(branch, L);
    std::vector<double> grid;
    for (int i = 0; i < n; ++i) grid.push_back(lo + (upper - lo) * (i + 1) / n);
    return grid;
}

}  // namespace idd
