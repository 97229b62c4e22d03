#include "idd/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "idd/error.hpp"
#include "idd/observables.hpp"
#include "idd/period.hpp"
#include "json.hpp"

namespace idd {

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Matrix to_matrix(const DiscreteOperator& op) {
    const std::vector<double> a = op.dense();
    return Eigen::Map<const Matrix>(a.data(), op.N, op.N);
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
    const Eigen::VectorXd& v = es.eigenvalues();
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::vector<double> DiscreteOperator::dense() const {
    std::vector<double> a(static_cast<std::size_t>(N) * N, 0.0);
    const double inv = 1.0 / (dx * dx);
    for (int i = 0; i < N; ++i) {
        a[static_cast<std::size_t>(i) * N + i] = 2.0 * inv + potential[i];
        a[static_cast<std::size_t>(i) * N + (i + 1) % N] -= inv;
        a[static_cast<std::size_t>(i) * N + (i + N - 1) % N] -= inv;
    }
    return a;
}

std::vector<double> DiscreteOperator::apply(const std::vector<double>& x) const {
    const double inv = 1.0 / (dx * dx);
    std::vector<double> y(N);
    for (int i = 0; i < N; ++i) {
        y[i] = (2.0 * x[i] - x[(i + 1) % N] - x[(i + N - 1) % N]) * inv + potential[i] * x[i];
    }
    return y;
}

double operator_potential(Operator which, double omega, double phi) {
    const double q = (1.0 - phi) * (1.0 + phi);
    if (which == Operator::LPlus) return 1.0 + (omega - 1.0) * (1.0 + phi * phi) / (q * q);
    return 1.0 + (omega - 1.0) / q;
}

DiscreteOperator build_operator_from_samples(const std::vector<double>& phi, double omega, double L, Operator which) {
    const int N = static_cast<int>(phi.size());
    if (N < 4) throw Error(ErrorCode::InvalidArgument, "operators need at least four nodes");
    DiscreteOperator op;
    op.N = N;
    op.L = L;
    op.dx = L / N;
    op.which = which;
    op.phi = phi;
    op.potential.resize(N);
    for (int i = 0; i < N; ++i) {
        if (!(std::abs(phi[i]) < 1.0)) throw Error(ErrorCode::DomainError, "|phi| reaches 1 on the grid");
        op.potential[i] = operator_potential(which, omega, phi[i]);
    }
    return op;
}

DiscreteOperator build_operator(const Profile& profile, Operator which, int N) {
    return build_operator_from_samples(resample_uniform(profile, N), profile.omega, profile.L, which);
}

double default_zero_tol(const DiscreteOperator& op) {
    double vmax = 0.0;
    for (double v : op.potential) vmax = std::max(vmax, std::abs(v));
    return 10.0 * vmax * op.dx * op.dx;
}

std::vector<double> eigenvalues(const DiscreteOperator& op) { return sorted_eigenvalues(to_matrix(op)); }

IndexCounts count_indices(const std::vector<double>& eigs, double zero_tol) {
    IndexCounts c;
    for (double l : eigs) {
        if (l < -zero_tol) {
            ++c.n;
        } else if (std::abs(l) <= zero_tol) {
            ++c.z;
        }
    }
    return c;
}

IndexCounts count_indices(const DiscreteOperator& op, double zero_tol) {
    return count_indices(eigenvalues(op), zero_tol);
}

double theta_value(const FamilyPoint& point, const Tolerances& tol) {
    if (!point.converged) throw Error(ErrorCode::InvalidArgument, "family point did not converge");
    const Orbit orbit = point.orbit();
    const double slope = period_derivative(point.branch, point.omega, point.E_L, tol);
    // V'(M) = M (M^2 - omega) / (1 - M^2), written through zeta_M.
    const double q = std::exp(-orbit.zeta_M);
    const double M = std::sqrt(-std::expm1(-orbit.zeta_M));
    const double vprime = M * (1.0 - point.omega - q) / q;
    return slope * vprime * vprime;
}

IndexCounts restricted_indices(const DiscreteOperator& op, double zero_tol) {
    const int N = op.N;
    if (N % 2 != 0) throw Error(ErrorCode::InvalidArgument, "odd-subspace restriction needs an even node count");
    double asym = 0.0;
    for (int j = 0; j < N; ++j) asym = std::max(asym, std::abs(op.phi[j] + op.phi[(N - j) % N]));
    if (asym > 1e-8) throw Error(ErrorCode::SymmetryViolation, "profile is not odd on the grid");
    // Basis (e_j - e_{N-j}) / sqrt(2), j = 1..N/2-1; nodes 0 and N/2 are fixed
    // by the reflection and carry no odd component.
    const int dim = N / 2 - 1;
    const Matrix a = to_matrix(op);
    Eigen::MatrixXd b(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const int i = r + 1;
        for (int c = 0; c < dim; ++c) {
            const int j = c + 1;
            b(r, c) = 0.5 * (a(i, j) - a(i, N - j) - a(N - i, j) + a(N - i, N - j));
        }
    }
    return count_indices(sorted_eigenvalues(b), zero_tol);
}

RestrictedIndices restricted_indices(const Profile& profile, int N, double zero_tol) {
    const DiscreteOperator lp = build_operator(profile, Operator::LPlus, N);
    const DiscreteOperator lm = build_operator(profile, Operator::LMinus, N);
    const IndexCounts p = restricted_indices(lp, zero_tol < 0.0 ? default_zero_tol(lp) : zero_tol);
    const IndexCounts m = restricted_indices(lm, zero_tol < 0.0 ? default_zero_tol(lm) : zero_tol);
    return {p.n, p.z, m.n, m.z};
}

int constrained_negative_count(const DiscreteOperator& op, const std::vector<double>& direction, double zero_tol) {
    Eigen::Map<const Eigen::VectorXd> d(direction.data(), op.N);
    const double norm = d.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::SingularSolve, "constraint direction is zero");
    const Eigen::VectorXd u = d / norm;
    const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(op.N, op.N) - u * u.transpose();
    const Eigen::MatrixXd b = p * to_matrix(op) * p;
    return count_indices(sorted_eigenvalues(0.5 * (b + b.transpose())), zero_tol).n;
}

std::vector<double> constraint_vector(const DiscreteOperator& op) {
    std::vector<double> v(op.N);
    for (int i = 0; i < op.N; ++i) v[i] = op.phi[i] / ((1.0 - op.phi[i]) * (1.0 + op.phi[i]));
    return v;
}

SpectrumHandle::SpectrumHandle(const DiscreteOperator& lplus) : op_(lplus) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_matrix(op_));
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
    values_.assign(es.eigenvalues().data(), es.eigenvalues().data() + op_.N);
    vectors_.assign(es.eigenvectors().data(), es.eigenvectors().data() + static_cast<std::size_t>(op_.N) * op_.N);
}

int SpectrumHandle::kernel_index() const {
    int best = 0;
    for (int i = 1; i < op_.N; ++i) {
        if (std::abs(values_[i]) < std::abs(values_[best])) best = i;
    }
    return best;
}

double SpectrumHandle::inverse_form(const std::vector<double>& f) const {
    const int skip = kernel_index();
    double acc = 0.0;
    for (int i = 0; i < op_.N; ++i) {
        if (i == skip) continue;
        const double* v = vectors_.data() + static_cast<std::size_t>(i) * op_.N;
        double dot = 0.0;
        for (int j = 0; j < op_.N; ++j) dot += v[j] * f[j];
        acc += dot * dot / values_[i];
    }
    return acc * op_.dx;
}

SpectrumReport spectrum_report(const FamilyPoint& point, int N, int n_samples, const Tolerances& tol) {
    const Profile prof = reconstruct_profile(point, n_samples, tol);
    const DiscreteOperator lp = build_operator(prof, Operator::LPlus, N);
    const DiscreteOperator lm = build_operator(prof, Operator::LMinus, N);
    SpectrumReport r;
    r.N = N;
    r.zero_tol = std::max(default_zero_tol(lp), default_zero_tol(lm));
    const IndexCounts p = count_indices(lp, default_zero_tol(lp));
    const IndexCounts m = count_indices(lm, default_zero_tol(lm));
    r.n_plus = p.n;
    r.z_plus = p.z;
    r.n_minus = m.n;
    r.z_minus = m.z;
    r.theta = theta_value(point, tol);
    if (point.branch == Branch::OddExterior) {
        const IndexCounts py = restricted_indices(lp, default_zero_tol(lp));
        const IndexCounts my = restricted_indices(lm, default_zero_tol(lm));
        r.restricted = RestrictedIndices{py.n, py.z, my.n, my.z};
    }
    if (point.dQ_domega) {
        const SpectrumHandle handle(lp);
        const IdentityCheck id = constrained_index_identity(point, handle);
        r.constrained_lhs = id.lhs;
        r.constrained_rhs = id.rhs;
        r.n_plus_constrained = constrained_negative_count(lp, constraint_vector(lp), default_zero_tol(lp));
    }
    return r;
}

std::string to_json_string(const SpectrumReport& r) {
    nlohmann::json j;
    j["N"] = r.N;
    j["n_plus"] = r.n_plus;
    j["z_plus"] = r.z_plus;
    j["n_minus"] = r.n_minus;
    j["z_minus"] = r.z_minus;
    j["theta"] = r.theta;
    j["zero_tol"] = r.zero_tol;
    if (r.restricted) {
        j["restricted"] = {{"n_plus_Y", r.restricted->n_plus_Y},
                           {"z_plus_Y", r.restricted->z_plus_Y},
                           {"n_minus_Y", r.restricted->n_minus_Y},
                           {"z_minus_Y", r.restricted->z_minus_Y}};
    }
    if (r.constrained_lhs) {
        j["constrained_identity"] = {{"lhs", *r.constrained_lhs}, {"rhs", *r.constrained_rhs}};
        j["n_plus_constrained"] = *r.n_plus_constrained;
    }
    return j.dump(2);
}

}  // namespace idd
