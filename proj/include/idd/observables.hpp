#pragma once

#include <optional>
#include <vector>

#include "idd/family.hpp"
#include "idd/numerics.hpp"
#include "idd/parallel.hpp"
#include "idd/profile.hpp"

namespace idd {

enum class Verdict { Stable, Unstable, Inconclusive };
const char* to_string(Verdict v) noexcept;

struct StabilityVerdict {
    double omega = 0.0;
    double Q = 0.0;
    double dQ_domega = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

constexpr double kSlopeDeadBand = 1e-6;

Verdict classify_slope(double dQ_domega, double eps_slope = kSlopeDeadBand);

// Mass Q = -int log(1 - phi^2) dx over one period, evaluated in phi.
double mass_quadrature(const FamilyPoint& point, const Tolerances& tol = {});

// Masses for every converged point of a curve (NaN for failed points).
// Centered difference of Q along the fixed-period family at a single frequency.
// Neighbours are solved from scratch at omega +- h, so the result does not
// depend on any surrounding grid.
double mass_slope_at(const FamilyPoint& point, double h = 1e-4, const Tolerances& tol = {});

std::vector<double> mass_values(const FamilyCurve& curve, const Tolerances& tol, Exec exec);

// Trapezoid rule for -int log(1 - phi^2) dx over a sampled profile.
double mass_trapezoid(const Profile& profile);

// H = int (phi'^2 + phi^2 + log(1 - phi^2)) dx by the trapezoid rule with
// phi' from central differences.
double energy_functional(const Profile& profile);

// Mass of the omega = 1 peaked waves, in closed form via Li2.
double mass_peaked(Branch branch, double L);

// dy/dx on a non-uniform grid: centred three-point formula inside,
// second-order one-sided formulas at both ends.
std::vector<double> grid_derivative(const std::vector<double>& x, const std::vector<double>& y);

struct MassCurveReport {
    std::vector<StabilityVerdict> verdicts;
    std::vector<double> sign_changes;  // frequencies where dQ/domega crosses zero
};

// Fills Q, dQ/domega and stable on the converged points of `curve` and
// returns the verdicts (only converged points take part).
MassCurveReport mass_curve_and_verdicts(FamilyCurve& curve, const Tolerances& tol = {}, Exec exec = Exec::Parallel,
                                        double eps_slope = kSlopeDeadBand);

// Verdicts for an externally supplied (omega, Q) series.
MassCurveReport verdicts_from_masses(const std::vector<double>& omega, const std::vector<double>& Q,
                                     double eps_slope = kSlopeDeadBand);

struct IdentityCheck {
    double lhs;  // <L+^{-1} phi0, phi0> on the complement of the kernel
    double rhs;  // -dQ/domega / 2
};

class SpectrumHandle;

IdentityCheck constrained_index_identity(const FamilyPoint& point, const SpectrumHandle& spectrum);

}  // namespace idd
