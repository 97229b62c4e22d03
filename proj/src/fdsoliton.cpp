#include "idd/fdsoliton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "idd/error.hpp"

namespace idd {

FdGrid FdGrid::with_spacing(double dx, double half_width) {
    if (!(dx > 0.0) || !(half_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "dx and half width must be positive");
    return with_nodes(static_cast<int>(std::lround(2.0 * half_width / dx)) + 1, half_width);
}

FdGrid FdGrid::with_nodes(int N, double half_width) {
    if (N < 5) throw Error(ErrorCode::InvalidArgument, "FD grid needs at least five nodes");
    FdGrid g;
    g.half_width = half_width;
    g.N = N;
    g.dx = 2.0 * half_width / (N - 1);
    g.xs.resize(N);
    for (int j = 0; j < N; ++j) g.xs[j] = -half_width + j * g.dx;
    return g;
}

std::vector<double> Tridiagonal::apply(const std::vector<double>& v) const {
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * v[i];
        if (i > 0) acc += lower[i] * v[i - 1];
        if (i + 1 < n) acc += upper[i] * v[i + 1];
        out[i] = acc;
    }
    return out;
}

std::vector<double> Tridiagonal::solve(std::vector<double> rhs) const {
    const std::size_t n = diag.size();
    std::vector<double> c(n, 0.0);
    double pivot = diag[0];
    if (pivot == 0.0) throw Error(ErrorCode::SingularSolve, "zero pivot in tridiagonal elimination");
    c[0] = n > 1 ? upper[0] / pivot : 0.0;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw Error(ErrorCode::SingularSolve, "zero pivot in tridiagonal elimination");
        }
        if (i + 1 < n) c[i] = upper[i] / pivot;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
}

namespace {

double second_difference(const std::vector<double>& p, std::size_t j, double inv_dx2) {
    return (p[j - 1] - 2.0 * p[j] + p[j + 1]) * inv_dx2;
}

double half_norm_sq(const std::vector<double>& r) {
    double acc = 0.0;
    for (double v : r) acc += v * v;
    return 0.5 * acc;
}

void require_omega(double omega) {
    if (!(omega > 0.0 && omega < 1.0)) throw Error(ErrorCode::DomainError, "soliton solver needs omega in (0, 1)");
}

}  // namespace

std::vector<double> fd_residual(const std::vector<double>& phis, double omega, const FdGrid& grid) {
    const std::size_t n = phis.size();
    if (static_cast<int>(n) != grid.N) throw Error(ErrorCode::InvalidArgument, "profile length does not match grid");
    const double inv = 1.0 / (grid.dx * grid.dx);
    std::vector<double> r(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double p = phis[j];
        r[j] = (1.0 - p * p) * second_difference(phis, j, inv) - (omega - p * p) * p;
    }
    return r;
}

Tridiagonal fd_jacobian(const std::vector<double>& phis, double omega, const FdGrid& grid) {
    const std::size_t n = phis.size();
    if (static_cast<int>(n) != grid.N) throw Error(ErrorCode::InvalidArgument, "profile length does not match grid");
    const double inv = 1.0 / (grid.dx * grid.dx);
    Tridiagonal J{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    J.diag[0] = J.diag[n - 1] = 1.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double p = phis[j];
        const double a = 1.0 - p * p;
        J.lower[j] = a * inv;
        J.upper[j] = a * inv;
        J.diag[j] = -2.0 * a * inv - 2.0 * p * second_difference(phis, j, inv) - omega + 3.0 * p * p;
    }
    return J;
}

std::vector<double> sech_guess(double omega, const FdGrid& grid) {
    const double amp = std::min(0.9, std::sqrt(2.0 * omega));
    const double k = std::sqrt(omega);
    std::vector<double> g(grid.N);
    for (int j = 0; j < grid.N; ++j) g[j] = amp / std::cosh(k * grid.xs[j]);
    g.front() = g.back() = 0.0;
    return g;
}

double fd_mass(const std::vector<double>& phis, const FdGrid& grid) {
    double acc = 0.0;
    for (std::size_t j = 0; j < phis.size(); ++j) {
        const double w = (j == 0 || j + 1 == phis.size()) ? 0.5 : 1.0;
        acc += w * -std::log1p(-phis[j] * phis[j]);
    }
    return acc * grid.dx;
}

FdSolveResult solve_soliton(double omega, const FdGrid& grid, const FdOptions& opts,
                            const std::optional<std::vector<double>>& initial) {
    require_omega(omega);
    FdSolveResult res;
    res.omega = omega;
    res.phis = initial ? *initial : sech_guess(omega, grid);
    if (static_cast<int>(res.phis.size()) != grid.N) {
        throw Error(ErrorCode::InvalidArgument, "initial profile length does not match grid");
    }
    res.phis.front() = res.phis.back() = 0.0;
    const double interior = std::sqrt(static_cast<double>(grid.N - 2));
    std::vector<double> r = fd_residual(res.phis, omega, grid);
    double phi_val = half_norm_sq(r);
    std::vector<double> trial(grid.N);
    for (int it = 0;; ++it) {
        res.final_residual_rms = std::sqrt(2.0 * phi_val) / interior;
        if (res.final_residual_rms <= opts.eps_tol) {
            res.converged = true;
            res.iterations = it;
            break;
        }
        if (it >= opts.max_iterations) {
            res.iterations = it;
            res.error = to_string(ErrorCode::MaxIterations);
            return res;
        }
        std::vector<double> step;
        try {
            std::vector<double> neg(r.size());
            for (std::size_t j = 0; j < r.size(); ++j) neg[j] = -r[j];
            step = fd_jacobian(res.phis, omega, grid).solve(std::move(neg));
        } catch (const Error&) {
            res.iterations = it;
            res.error = to_string(ErrorCode::SingularSolve);
            return res;
        }
        double a = 1.0;
        for (;;) {
            for (int j = 0; j < grid.N; ++j) trial[j] = res.phis[j] + a * step[j];
            std::vector<double> rt = fd_residual(trial, omega, grid);
            const double phi_trial = half_norm_sq(rt);
            if (std::isfinite(phi_trial) && phi_trial <= phi_val * (1.0 - opts.c_armijo * a)) {
                res.phis.swap(trial);
                r.swap(rt);
                phi_val = phi_trial;
                break;
            }
            a *= 0.5;
            if (a < opts.min_step) {
                res.iterations = it;
                res.error = to_string(ErrorCode::LineSearchStall);
                return res;
            }
        }
    }
    res.Q_trapezoid = fd_mass(res.phis, grid);
    return res;
}

std::vector<double> artefact_omega_grid(int n, double lo, double hi) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return g;
}

namespace {

void extrapolate(ArtefactCurve& curve, int n_points) {
    std::vector<double> w, q;
    for (const FdSolveResult& p : curve.points) {
        if (p.converged) {
            w.push_back(p.omega);
            q.push_back(p.Q_trapezoid);
        }
    }
    if (w.size() < 3 || n_points <= 0) return;
    // Exact quadratic through the last three converged points.
    const std::size_t k = w.size();
    const double x0 = w[k - 3], x1 = w[k - 2], x2 = w[k - 1];
    const double y0 = q[k - 3], y1 = q[k - 2], y2 = q[k - 1];
    auto lagrange = [&](double x) {
        return y0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2)) + y1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2)) +
               y2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    };
    for (int i = 1; i <= n_points; ++i) {
        const double x = x2 + (1.0 - x2) * i / n_points;
        curve.extrapolated_omega.push_back(x);
        curve.extrapolated_Q.push_back(lagrange(x));
    }
}

}  // namespace

std::vector<ArtefactCurve> artefact_scan(const std::vector<double>& dx_list, const std::vector<double>& omega_grid,
                                         StartPolicy policy, Exec exec, const FdOptions& opts, int n_extrapolate) {
    if (dx_list.empty()) throw Error(ErrorCode::InvalidArgument, "artefact scan needs at least one dx");
    std::vector<ArtefactCurve> curves;
    for (double dx : dx_list) {
        const FdGrid grid = FdGrid::with_spacing(dx);
        ArtefactCurve curve;
        curve.dx = dx;
        curve.points.resize(omega_grid.size());
        if (policy == StartPolicy::Warm) {
            std::optional<std::vector<double>> seed;
            for (std::size_t i = 0; i < omega_grid.size(); ++i) {
                curve.points[i] = solve_soliton(omega_grid[i], grid, opts, seed);
                curve.points[i].warm_started = seed.has_value();
                if (!curve.points[i].converged && seed) {
                    curve.points[i] = solve_soliton(omega_grid[i], grid, opts);
                }
                if (curve.points[i].converged) seed = curve.points[i].phis;
            }
        } else {
            parallel_for(
                omega_grid.size(), [&](std::size_t i) { curve.points[i] = solve_soliton(omega_grid[i], grid, opts); },
                exec);
            if (policy == StartPolicy::ColdThenWarm) {
                // Retry failures in grid order from the closest converged
                // neighbour below (or above, when nothing below converged).
                for (std::size_t i = 0; i < omega_grid.size(); ++i) {
                    if (curve.points[i].converged) continue;
                    std::optional<std::size_t> src;
                    for (std::size_t k = i; k-- > 0;) {
                        if (curve.points[k].converged) {
                            src = k;
                            break;
                        }
                    }
                    if (!src) {
                        for (std::size_t k = i + 1; k < omega_grid.size(); ++k) {
                            if (curve.points[k].converged) {
                                src = k;
                                break;
                            }
                        }
                    }
                    if (!src) continue;
                    FdSolveResult retry = solve_soliton(omega_grid[i], grid, opts, curve.points[*src].phis);
                    retry.warm_started = true;
                    if (retry.converged) curve.points[i] = std::move(retry);
                }
            }
        }
        extrapolate(curve, n_extrapolate);
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace idd
