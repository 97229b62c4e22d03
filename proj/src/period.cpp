#include "idd/period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "idd/error.hpp"

namespace idd {

namespace {

// Turning points are resolved to (near) machine precision regardless of the
// quadrature tolerances.
const Tolerances kTurningTol{std::numeric_limits<double>::min(), 4.0 * std::numeric_limits<double>::epsilon(), 60};

const double kBelowOne = std::nextafter(1.0, 0.0);

void require_even_omega(double omega) {
    if (!(omega > 0.0 && omega < 1.0)) {
        throw Error(ErrorCode::DomainError, "even-branch orbits need omega in (0, 1)");
    }
}

void require_odd_omega(double omega) {
    if (!(omega < 1.0)) throw Error(ErrorCode::DomainError, "odd-branch orbits need omega < 1");
}

Tolerances tighter(const Tolerances& a, const Tolerances& b) {
    return {std::min(a.abs_tol, b.abs_tol), std::min(a.rel_tol, b.rel_tol), std::max(a.max_depth, b.max_depth)};
}

double zeta_of(double phi) { return -std::log((1.0 - phi) * (1.0 + phi)); }

// V written in zeta = -log(1 - phi^2); free of rounding in 1 - phi^2.
double potential_zeta(double omega, double zeta) {
    return 0.5 * (std::exp(-zeta) - (1.0 - omega)) + 0.5 * (1.0 - omega) * (std::log1p(-omega) + zeta);
}

struct OuterPoint {
    double M;
    double zeta;
};

// Outer root of g = V - E (given by `g`, `dg` in phi) above `lo`. When the
// root lies in the last 1e-4 of 1 - phi^2 it is located in zeta instead.
template <class G, class DG>
OuterPoint outer_turning_point(const PotentialModel& model, double lo, double E, const G& g, const DG& dg) {
    const double phi_switch = std::sqrt(1.0 - kZetaSwitch);
    if (g(phi_switch) > 0.0) {
        const double M = find_root_bracketed(g, lo, phi_switch, kTurningTol, dg);
        return {M, zeta_of(M)};
    }
    const double w = model.omega();
    auto gz = [&](double z) { return potential_zeta(w, z) - E; };
    const double z_lo = -std::log(kZetaSwitch);
    const double z_hi = 745.0;  // exp(-z) is still a (subnormal) double here
    if (gz(z_hi) <= 0.0) {
        std::ostringstream os;
        os << "energy " << E << " puts the turning point beyond double range of 1 - phi^2";
        throw Error(ErrorCode::EnergyOutOfRange, os.str());
    }
    double z = z_lo;
    if (gz(z_lo) < 0.0) {
        z = find_root_bracketed(gz, z_lo, z_hi, kTurningTol,
                                [&](double zz) { return 0.5 * ((1.0 - w) - std::exp(-zz)); });
    }
    return {std::min(std::sqrt(-std::expm1(-z)), kBelowOne), z};
}

}  // namespace

EnergyLevel level_from_energy(Branch branch, double omega, double E) {
    if (branch == Branch::EvenInterior) {
        require_even_omega(omega);
        const double Ew = homoclinic_energy(PotentialModel(omega));
        if (!(E > 0.0 && E < Ew)) {
            std::ostringstream os;
            os << "even branch needs 0 < E < E_omega=" << Ew << ", got " << E;
            throw Error(ErrorCode::EnergyOutOfRange, os.str());
        }
        return {E, Ew - E};
    }
    require_odd_omega(omega);
    const double Ew = homoclinic_energy(PotentialModel(omega));
    if (!(E > Ew) || !std::isfinite(E)) {
        std::ostringstream os;
        os << "odd branch needs E > E_omega=" << Ew << ", got " << E;
        throw Error(ErrorCode::EnergyOutOfRange, os.str());
    }
    return {E, E - Ew};
}

EnergyLevel level_from_gap(Branch branch, double omega, double gap) {
    if (branch == Branch::EvenInterior) {
        require_even_omega(omega);
        const double Ew = homoclinic_energy(PotentialModel(omega));
        if (!(gap > 0.0 && gap < Ew)) throw Error(ErrorCode::EnergyOutOfRange, "even gap must lie in (0, E_omega)");
        return {Ew - gap, gap};
    }
    require_odd_omega(omega);
    if (!(gap > 0.0) || !std::isfinite(gap)) throw Error(ErrorCode::EnergyOutOfRange, "odd gap must be positive");
    return {homoclinic_energy(PotentialModel(omega)) + gap, gap};
}

Orbit resolve_orbit(Branch branch, double omega, double E) {
    return resolve_orbit(branch, omega, level_from_energy(branch, omega, E));
}

Orbit resolve_orbit(Branch branch, double omega, const EnergyLevel& level) {
    const PotentialModel model(omega);
    Orbit orbit{branch, omega, level.E, level.gap, std::nullopt, 0.0, 0.0};
    const double c = model.center();
    if (branch == Branch::EvenInterior) {
        require_even_omega(omega);
        const OuterPoint outer = outer_turning_point(
            model, c, level.E, [&](double p) { return potential(model, p) - level.E; },
            [&](double p) { return potential_derivative(model, p, 1); });
        orbit.M = outer.M;
        orbit.zeta_M = outer.zeta;
        double m;
        if (level.E <= level.gap) {
            m = find_root_bracketed([&](double p) { return potential(model, p) - level.E; }, 0.0, c, kTurningTol,
                                    [&](double p) { return potential_derivative(model, p, 1); });
        } else {
            // Near the homoclinic level measure the depth below V(0) instead.
            m = find_root_bracketed([&](double p) { return potential_drop(model, 0.0, p) - level.gap; }, 0.0, c,
                                    kTurningTol, [&](double p) { return -potential_derivative(model, p, 1); });
        }
        if (!(m > 0.0 && m < c && orbit.M > c)) {
            throw Error(ErrorCode::DegenerateOrbit, "turning points collapsed onto the center");
        }
        orbit.m = m;
        return orbit;
    }
    require_odd_omega(omega);
    const auto dg = [&](double p) { return potential_derivative(model, p, 1); };
    OuterPoint outer;
    if (omega > 0.0) {
        outer = outer_turning_point(
            model, c, level.E, [&](double p) { return potential(model, p) - level.E; }, dg);
    } else {
        // Small odd orbits around phi = 0: measure the height above V(0).
        outer = outer_turning_point(
            model, 0.0, level.E, [&](double p) { return -potential_drop(model, 0.0, p) - level.gap; }, dg);
    }
    orbit.M = outer.M;
    orbit.zeta_M = outer.zeta;
    if (!(orbit.M > 0.0)) throw Error(ErrorCode::DegenerateOrbit, "odd orbit has zero amplitude");
    return orbit;
}

namespace {

// Integral of w / sqrt(2 (V(a) - V(phi))) over [lo, hi] where the endpoint a
// (either lo or hi) is a simple turning point.
double singular_piece(const PotentialModel& model, const OrbitWeight& w, double a, double lo, double hi,
                      const Tolerances& tol) {
    if (!(lo < hi)) return 0.0;
    OffsetFn f = [&](double end, double delta) {
        const double p = end + delta;
        return w(p, zeta_of(p)) / std::sqrt(2.0 * potential_drop_offset(model, end, delta));
    };
    return integrate_sqrt_singular(f, lo, hi, a == lo ? Singular::Left : Singular::Right, tol).value;
}

// Outer arc from phi_a up to the turning point M of the orbit.
double outer_piece(const Orbit& orbit, const PotentialModel& model, const OrbitWeight& w, double phi_a,
                   const Tolerances& tol) {
    if (1.0 - orbit.M * orbit.M >= kZetaSwitch && orbit.zeta_M < -std::log(kZetaSwitch)) {
        return singular_piece(model, w, orbit.M, phi_a, orbit.M, tol);
    }
    // zeta = -log(1 - phi^2), dphi = exp(-zeta) / (2 phi) dzeta.
    const double omega = orbit.omega;
    OffsetFn f = [&](double end, double delta) {
        const double zeta = end + delta;
        const double q = std::exp(-zeta);
        const double phi = std::sqrt(-std::expm1(-zeta));
        const double excess = excess_from_zeta(omega, end, -delta);
        return w(phi, zeta) * q / (2.0 * phi * std::sqrt(2.0 * excess));
    };
    return integrate_sqrt_singular(f, zeta_of(phi_a), orbit.zeta_M, Singular::Right, tol).value;
}

// Regular piece over [lo, hi] with E - V supplied by `excess`; `log_scale`
// maps phi = exp(v), which flattens the 1/phi tail of orbits hugging the
// saddle at phi = 0.
template <class Excess>
double regular_piece(const OrbitWeight& w, const Excess& excess, double lo, double hi, bool log_scale,
                     const Tolerances& tol) {
    if (!(lo < hi)) return 0.0;
    auto f = [&](double p) { return w(p, zeta_of(p)) / std::sqrt(2.0 * excess(p)); };
    if (log_scale) {
        auto g = [&](double v) {
            const double p = std::exp(v);
            return p * f(p);
        };
        return integrate_adaptive(g, std::log(lo), std::log(hi), tol).value;
    }
    return integrate_adaptive(f, lo, hi, tol).value;
}

}  // namespace

double excess_from_zeta(double omega, double zeta_M, double delta) {
    return 0.5 * (1.0 - omega) * delta + 0.5 * std::exp(-(zeta_M - delta)) * std::expm1(-delta);
}

double orbit_integral(const Orbit& orbit, const OrbitWeight& w, const Tolerances& tol) {
    const PotentialModel model(orbit.omega);
    const double c = model.center();
    if (orbit.branch == Branch::EvenInterior) {
        const double m = orbit.m.value();
        double left;
        if (m < 0.25 * c) {
            auto from_m = [&](double p) { return potential_drop(model, m, p); };
            left = singular_piece(model, w, m, m, 2.0 * m, tol) + regular_piece(w, from_m, 2.0 * m, c, true, tol);
        } else {
            left = singular_piece(model, w, m, m, c, tol);
        }
        return 2.0 * (left + outer_piece(orbit, model, w, c, tol));
    }
    const double M = orbit.M;
    const double split = 0.5 * M;
    // Measured from the saddle: E - V(phi) = gap + (V(0) - V(phi)). Anchoring
    // at M instead would lose the small gap to cancellation.
    auto from_saddle = [&](double p) { return orbit.gap + potential_drop(model, 0.0, p); };
    double inner;
    // Orbits just outside the homoclinic loop linger near phi = 0 on a scale
    // of sqrt(gap); resolve that scale first, then use a log variable.
    const double core = orbit.omega > 0.0 ? std::sqrt(orbit.gap) : 0.0;
    if (core > 0.0 && core < 1e-3 * split) {
        inner = regular_piece(w, from_saddle, 0.0, core, false, tol) +
                regular_piece(w, from_saddle, core, split, true, tol);
    } else {
        inner = regular_piece(w, from_saddle, 0.0, split, false, tol);
    }
    return 4.0 * (inner + outer_piece(orbit, model, w, split, tol));
}

double period_of(const Orbit& orbit, const Tolerances& tol) {
    return orbit_integral(orbit, [](double, double) { return 1.0; }, tol);
}

double period_at(Branch branch, double omega, const EnergyLevel& level, const Tolerances& tol) {
    return period_of(resolve_orbit(branch, omega, level), tol);
}

PeriodSample period_even(double omega, double E, const Tolerances& tol) {
    const Orbit orbit = resolve_orbit(Branch::EvenInterior, omega, E);
    return {orbit, period_of(orbit, tol), std::nullopt};
}

PeriodSample period_odd(double omega, double E, const Tolerances& tol) {
    const Orbit orbit = resolve_orbit(Branch::OddExterior, omega, E);
    return {orbit, period_of(orbit, tol), std::nullopt};
}

double period_derivative(Branch branch, double omega, double E, const Tolerances& tol) {
    const EnergyLevel level = level_from_energy(branch, omega, E);
    double h;
    if (branch == Branch::EvenInterior) {
        h = 1e-6 * std::min(E, level.gap);
    } else {
        h = std::max(1e-6 * level.gap, 1e-12);
        if (h >= level.gap) h = 0.5 * level.gap;
    }
    if (E + h == E || E - h == E) {
        throw Error(ErrorCode::StepUnderflow, "finite-difference step in E is below the resolution of E");
    }
    // The difference quotient amplifies quadrature noise by T/h, so the
    // integrals are evaluated well below the nominal tolerance.
    const Tolerances fine = tighter(tol, Tolerances{1e-14, 1e-13, 60});
    const double sign = branch == Branch::EvenInterior ? -1.0 : 1.0;
    const double t_plus = period_at(branch, omega, {E + h, level.gap + sign * h}, fine);
    const double t_minus = period_at(branch, omega, {E - h, level.gap - sign * h}, fine);
    return (t_plus - t_minus) / (2.0 * h);
}

double small_amplitude_period(Branch branch, double omega) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (branch == Branch::EvenInterior) {
        require_even_omega(omega);
        return two_pi * std::sqrt((1.0 - omega) / (2.0 * omega));
    }
    require_odd_omega(omega);
    if (omega < 0.0) return two_pi / std::sqrt(-omega);
    return std::numeric_limits<double>::infinity();
}

std::vector<double> default_energy_grid(Branch branch, double omega, int n_bulk, int n_near, double near_width,
                                        double odd_upper) {
    const double Ew = homoclinic_energy(PotentialModel(omega));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(std::max(0, n_bulk) + std::max(0, n_near)));
    if (branch == Branch::EvenInterior) {
        require_even_omega(omega);
        const double w = std::min(near_width, 0.5 * Ew);
        const double top = Ew - w;
        for (int i = 0; i < n_bulk; ++i) grid.push_back(top * (i + 1) / n_bulk);
        for (int i = 0; i < n_near; ++i) grid.push_back(top + w * (i + 1) / (n_near + 1));
        return grid;
    }
    require_odd_omega(omega);
    const double w = near_width;
    for (int i = 0; i < n_near; ++i) grid.push_back(Ew + w * (i + 1) / (n_near + 1));
    double upper = std::max(odd_upper, Ew + 20.0 * w);
    const double start = Ew + w;
    for (int i = 0; i < n_bulk; ++i) {
        grid.push_back(start + (upper - start) * (n_bulk == 1 ? 1.0 : static_cast<double>(i) / (n_bulk - 1)));
    }
    return grid;
}

std::vector<PeriodScanPoint> period_scan(Branch branch, double omega, const std::vector<double>& energies,
                                         const Tolerances& tol, bool with_derivative, Exec exec) {
    std::vector<PeriodScanPoint> out(energies.size());
    parallel_for(
        energies.size(),
        [&](std::size_t i) {
            PeriodScanPoint& p = out[i];
            p.omega = omega;
            p.E = energies[i];
            try {
                const Orbit orbit = resolve_orbit(branch, omega, energies[i]);
                p.T = period_of(orbit, tol);
                p.dT_dE = with_derivative ? period_derivative(branch, omega, energies[i], tol)
                                          : std::numeric_limits<double>::quiet_NaN();
                p.ok = true;
            } catch (const Error& e) {
                p.ok = false;
                p.error = e.what();
            }
        },
        exec);
    return out;
}

}  // namespace idd
