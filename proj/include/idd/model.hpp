#pragma once

namespace idd {

enum class Branch { EvenInterior, OddExterior };

const char* to_string(Branch b) noexcept;

// Frozen frequency omega for the Newtonian particle in the potential
// V(phi) = (omega - phi^2)/2 + (1 - omega)/2 * log((1 - omega)/(1 - phi^2)).
// Any omega <= 1 is accepted; omega = 1 is the peaked limit where the
// logarithmic term drops out.
class PotentialModel {
public:
    explicit PotentialModel(double omega);
    double omega() const { return omega_; }
    // sqrt(omega) for omega > 0, otherwise 0.
    double center() const { return center_; }

    // t - omega with t = phi^2, without cancellation near phi^2 = omega.
    double t_minus_omega(double phi) const;

private:
    double omega_;
    double center_;
};

double potential(const PotentialModel& model, double phi);
double potential_derivative(const PotentialModel& model, double phi, int order);
double orbit_energy(const PotentialModel& model, double phi, double phip);
double homoclinic_energy(const PotentialModel& model);

// V(a) - V(phi), evaluated so that the difference keeps full relative
// accuracy when phi is close to a.
double potential_drop(const PotentialModel& model, double a, double phi);
// The same drop for phi = a + delta, taking the offset exactly.
double potential_drop_offset(const PotentialModel& model, double a, double delta);

struct LimitingFrequencies {
    double omega_L;
    double Omega_L;
};
LimitingFrequencies limiting_frequencies(double L);

struct ChiconeValues {
    double A;
    double B;
    double P;
};
ChiconeValues chicone_functions(const PotentialModel& model, double t);
double g_poly(const PotentialModel& model, double t);
double chicone_I_second(const PotentialModel& model, double phi);

// Coefficient omega_2 in omega = omega_L + omega_2 a^2 + O(a^4) near the
// bifurcation from the constant (even) or zero (odd) state.
double bifurcation_omega2(Branch branch, double L);

}  // namespace idd
