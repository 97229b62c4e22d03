#pragma once

#include <vector>

#include "idd/family.hpp"
#include "idd/model.hpp"
#include "idd/numerics.hpp"

namespace idd {

struct Profile {
    Branch branch = Branch::EvenInterior;
    double L = 0.0;
    double omega = 0.0;
    std::vector<double> xs;    // increasing, spanning [-L/2, L/2]
    std::vector<double> phis;
};

// Tabulates x(phi) by quadrature and mirrors it by the symmetries of the
// branch. The sample count is rounded up to 2k+1 (even) or 4k+1 (odd).
Profile reconstruct_profile(const FamilyPoint& point, int n_samples, const Tolerances& tol = {});

// Closed-form omega = 1 profiles; x must lie in [-L/2, L/2].
double peaked_profile(Branch branch, double L, double x);
// Exact first or second x-derivative of the peaked closed form on the smooth
// pieces; the one-sided value is returned at the corner itself.
double peaked_profile_derivative(Branch branch, double L, double x, int order);

Profile peaked_profile_samples(Branch branch, double L, int n_samples);

// max |phi'^2/2 + V(phi) - E| over interior samples, phi' from five-point
// differences on the (non-uniform) sample grid.
double profile_energy_check(const Profile& profile, double E_expected);

// First and second derivatives at every interior sample (indices 2..n-3)
// from five-point stencils; entries at the two outermost samples on each
// side are left as NaN.
std::vector<double> profile_derivative(const Profile& profile, int order);

// Values on the uniform periodic grid x_j = -L/2 + j L / N, j = 0..N-1, by
// monotone cubic interpolation of the table.
std::vector<double> resample_uniform(const Profile& profile, int N);

}  // namespace idd
