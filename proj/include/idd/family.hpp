#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idd/model.hpp"
#include "idd/numerics.hpp"
#include "idd/period.hpp"

namespace idd {

struct FamilyPoint {
    Branch branch = Branch::EvenInterior;
    double omega = 0.0;
    double E_L = 0.0;
    double tilde_E = 0.0;  // E_L - E_omega, kept exact (not formed by subtraction)
    double m = 0.0;        // inner turning point; 0 on the odd branch
    double M = 0.0;
    double L = 0.0;
    std::optional<double> Q;
    std::optional<double> dQ_domega;
    std::optional<bool> stable;
    bool converged = false;
    std::string error;

    EnergyLevel level() const;
    Orbit orbit() const;
};

struct FamilyCurve {
    Branch branch = Branch::EvenInterior;
    double L = 0.0;
    std::vector<FamilyPoint> points;
    std::vector<std::string> warnings;

    bool all_converged() const;
};

// Tolerances used while inverting T = L: the period quadratures must be
// several orders tighter than the round-trip target.
Tolerances default_family_tolerances();

constexpr double kOmegaCap = 0.99;
constexpr double kOmegaWarn = 0.97;

FamilyPoint solve_energy_for_period(Branch branch, double omega, double L,
                                    const Tolerances& tol = default_family_tolerances());

// `hint` is the tilde_E of a neighboring solution used to seed Newton.
FamilyPoint solve_energy_for_period(Branch branch, double omega, double L, const Tolerances& tol,
                                    std::optional<double> hint);

FamilyCurve continue_family(Branch branch, double L, const std::vector<double>& omega_grid,
                            const Tolerances& tol = default_family_tolerances());

// Admissible frequency interval (lower end excluded) for waves of period L.
double lower_frequency(Branch branch, double L);

// Energy offset tilde_E of the peaked wave at omega = 1.
double peaked_energy(Branch branch, double L);

struct InterpolatedPoint {
    double omega;
    double tilde_E;
};

// Monotone cubic bridge from the last converged points of a curve to the
// peaked point (1, peaked_energy), sampled at n points strictly inside.
std::vector<InterpolatedPoint> interpolate_to_peaked(const FamilyCurve& curve, int n);

// Uniform grid of n points strictly inside (lower_frequency, upper].
std::vector<double> uniform_omega_grid(Branch branch, double L, int n, double upper = kOmegaCap);

}  // namespace idd
