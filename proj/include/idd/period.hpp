#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "idd/model.hpp"
#include "idd/numerics.hpp"
#include "idd/parallel.hpp"

namespace idd {

// Energy level stored together with its exact offset from the homoclinic
// level: gap = E_omega - E on the even branch, E - E_omega on the odd one.
// Near the homoclinic orbit the gap can be far below the resolution of E.
struct EnergyLevel {
    double E;
    double gap;
};

EnergyLevel level_from_energy(Branch branch, double omega, double E);
EnergyLevel level_from_gap(Branch branch, double omega, double gap);

struct Orbit {
    Branch branch;
    double omega;
    double energy;
    double gap;
    std::optional<double> m;  // inner turning point (even branch only)
    double M;
    // zeta_M = -log(1 - M^2). Orbits close to the peaked limit have M within
    // far less than one ulp of 1; for those zeta_M is the authoritative
    // coordinate and M is only its rounded image.
    double zeta_M;
};

// Weight functions receive phi and zeta = -log(1 - phi^2), both accurate.
using OrbitWeight = std::function<double(double phi, double zeta)>;

// 1 - phi^2 below this value switches the outer turning point to zeta.
constexpr double kZetaSwitch = 1e-4;

struct PeriodSample {
    Orbit orbit;
    double T;
    std::optional<double> dT_dE;
};

Orbit resolve_orbit(Branch branch, double omega, double E);
Orbit resolve_orbit(Branch branch, double omega, const EnergyLevel& level);

PeriodSample period_even(double omega, double E, const Tolerances& tol = {});
PeriodSample period_odd(double omega, double E, const Tolerances& tol = {});

// Period of an already resolved orbit.
double period_of(const Orbit& orbit, const Tolerances& tol = {});
double period_at(Branch branch, double omega, const EnergyLevel& level, const Tolerances& tol = {});

double period_derivative(Branch branch, double omega, double E, const Tolerances& tol = {});

// T in the small-amplitude limit: the linearized center at sqrt(omega)
// (even) or at 0 for omega < 0 (odd). Infinite where no such limit exists.
double small_amplitude_period(Branch branch, double omega);

// Integral of w(phi) / sqrt(2 (E - V(phi))) over one full period of the orbit,
// with both turning-point singularities removed.
double orbit_integral(const Orbit& orbit, const OrbitWeight& w, const Tolerances& tol);

// E - V(phi) along the outer arc written in zeta, with delta = zeta_M - zeta.
double excess_from_zeta(double omega, double zeta_M, double delta);

struct PeriodScanPoint {
    double omega = 0.0;
    double E = 0.0;
    double T = 0.0;
    double dT_dE = 0.0;
    bool ok = false;
    std::string error;
};

// Energy grids of the figures: n_bulk points across the admissible range and
// n_near points in a window of width `near_width` next to E_omega.
std::vector<double> default_energy_grid(Branch branch, double omega, int n_bulk = 300, int n_near = 2000,
                                        double near_width = 1e-3, double odd_upper = 0.5);

std::vector<PeriodScanPoint> period_scan(Branch branch, double omega, const std::vector<double>& energies,
                                         const Tolerances& tol, bool with_derivative, Exec exec);

}  // namespace idd
