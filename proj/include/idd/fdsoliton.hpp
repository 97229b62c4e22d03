#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idd/parallel.hpp"

namespace idd {

// Uniform grid on [-half_width, half_width] with Dirichlet ends.
struct FdGrid {
    double half_width = 20.0;
    double dx = 0.1;
    int N = 0;
    std::vector<double> xs;

    static FdGrid with_spacing(double dx, double half_width = 20.0);
    static FdGrid with_nodes(int N, double half_width = 20.0);
};

struct FdSolveResult {
    double omega = 0.0;
    std::vector<double> phis;
    int iterations = 0;
    double final_residual_rms = 0.0;
    double Q_trapezoid = 0.0;
    bool converged = false;
    bool warm_started = false;
    std::string error;
};

struct FdOptions {
    double c_armijo = 1e-4;
    double eps_tol = 1e-8;
    int max_iterations = 200;
    double min_step = 1.0 / (1 << 30);
};

// Tridiagonal matrix stored by diagonals; lower[0] and upper[N-1] unused.
struct Tridiagonal {
    std::vector<double> lower, diag, upper;
    std::vector<double> apply(const std::vector<double>& v) const;
    // Solves T x = rhs by elimination without pivoting.
    std::vector<double> solve(std::vector<double> rhs) const;
};

// Residual (1 - phi^2) D2 phi - (omega - phi^2) phi at every node; the two
// boundary entries are zero (Dirichlet nodes are not unknowns).
std::vector<double> fd_residual(const std::vector<double>& phis, double omega, const FdGrid& grid);

// Jacobian of fd_residual over all N nodes; boundary rows are identity rows.
Tridiagonal fd_jacobian(const std::vector<double>& phis, double omega, const FdGrid& grid);

// Damped Newton with Armijo backtracking from the sech initial guess, or
// from `initial` when given.
FdSolveResult solve_soliton(double omega, const FdGrid& grid, const FdOptions& opts = {},
                            const std::optional<std::vector<double>>& initial = std::nullopt);

std::vector<double> sech_guess(double omega, const FdGrid& grid);

double fd_mass(const std::vector<double>& phis, const FdGrid& grid);

enum class StartPolicy {
    Cold,          // every omega from the sech guess
    ColdThenWarm,  // sech guess; on failure retry from the nearest converged neighbour
    Warm,          // continuation from the previous converged omega
};

struct ArtefactCurve {
    double dx = 0.0;
    std::vector<FdSolveResult> points;
    // Quadratic extrapolation of the last three converged points.
    std::vector<double> extrapolated_omega;
    std::vector<double> extrapolated_Q;
};

// 100 uniform points on [0.005, 0.93] by default.
std::vector<double> artefact_omega_grid(int n = 100, double lo = 0.005, double hi = 0.93);

std::vector<ArtefactCurve> artefact_scan(const std::vector<double>& dx_list, const std::vector<double>& omega_grid,
                                         StartPolicy policy, Exec exec, const FdOptions& opts = {},
                                         int n_extrapolate = 8);

}  // namespace idd
