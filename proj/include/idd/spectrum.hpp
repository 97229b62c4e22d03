#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idd/family.hpp"
#include "idd/profile.hpp"

namespace idd {

enum class Operator { LPlus, LMinus };

struct DiscreteOperator {
    int N = 0;
    double dx = 0.0;
    double L = 0.0;
    Operator which = Operator::LPlus;
    std::vector<double> potential;  // diagonal potential at the nodes
    std::vector<double> phi;        // sampled profile on the same nodes

    // Dense row-major N x N matrix: periodic -D^2 plus the potential.
    std::vector<double> dense() const;
    // y = A x without forming the matrix.
    std::vector<double> apply(const std::vector<double>& x) const;
};

struct IndexCounts {
    int n = 0;
    int z = 0;
};

struct RestrictedIndices {
    int n_plus_Y = 0, z_plus_Y = 0, n_minus_Y = 0, z_minus_Y = 0;
};

struct SpectrumReport {
    int N = 0;
    int n_plus = 0, z_plus = 0, n_minus = 0, z_minus = 0;
    double theta = 0.0;
    double zero_tol = 0.0;
    std::optional<RestrictedIndices> restricted;
    std::optional<double> constrained_lhs;
    std::optional<double> constrained_rhs;
    std::optional<int> n_plus_constrained;
};

// Pretty-printed JSON object with all counts, theta, N and zero_tol.
std::string to_json_string(const SpectrumReport& r);

// Potential of L+ / L- at a given phi.
double operator_potential(Operator which, double omega, double phi);

DiscreteOperator build_operator(const Profile& profile, Operator which, int N);
DiscreteOperator build_operator_from_samples(const std::vector<double>& phi, double omega, double L, Operator which);

// Default zero tolerance 10 * max|potential| * dx^2.
double default_zero_tol(const DiscreteOperator& op);

std::vector<double> eigenvalues(const DiscreteOperator& op);
IndexCounts count_indices(const DiscreteOperator& op, double zero_tol);
IndexCounts count_indices(const std::vector<double>& eigs, double zero_tol);

double theta_value(const FamilyPoint& point, const Tolerances& tol = {});

// (n, z) of `op` restricted to the subspace of grid functions odd under
// x -> -x, which for periodic functions is the same as odd about x = L/2.
IndexCounts restricted_indices(const DiscreteOperator& op, double zero_tol);
RestrictedIndices restricted_indices(const Profile& profile, int N, double zero_tol = -1.0);

// Negative count of L+ on the orthogonal complement of `direction`.
int constrained_negative_count(const DiscreteOperator& op, const std::vector<double>& direction, double zero_tol);

// Full eigen-decomposition of L+ kept for the constrained-identity solve.
class SpectrumHandle {
public:
    explicit SpectrumHandle(const DiscreteOperator& lplus);
    const DiscreteOperator& op() const { return op_; }
    const std::vector<double>& eigenvalues() const { return values_; }
    // Column-major eigenvectors (N x N), orthonormal in the Euclidean product.
    const std::vector<double>& eigenvectors() const { return vectors_; }
    // <A^{-1} f, f>_dx over eigenpairs other than the one closest to zero.
    double inverse_form(const std::vector<double>& f) const;
    // Index of the eigenpair closest to zero (the translation mode).
    int kernel_index() const;

private:
    DiscreteOperator op_;
    std::vector<double> values_;
    std::vector<double> vectors_;
};

// phi0 = phi / (1 - phi^2) on the operator nodes.
std::vector<double> constraint_vector(const DiscreteOperator& op);

SpectrumReport spectrum_report(const FamilyPoint& point, int N, int n_samples = 2049, const Tolerances& tol = {});

}  // namespace idd
