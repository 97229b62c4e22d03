#pragma once

#include <cmath>
#include <functional>

#include "idd/model.hpp"

namespace oracle {

struct State {
    double phi;
    double dphi;
};

inline State rk4_step(const idd::PotentialModel& m, State s, double h) {
    auto f = [&](State u) { return State{u.dphi, -idd::potential_derivative(m, u.phi, 1)}; };
    const State k1 = f(s);
    const State k2 = f({s.phi + 0.5 * h * k1.phi, s.dphi + 0.5 * h * k1.dphi});
    const State k3 = f({s.phi + 0.5 * h * k2.phi, s.dphi + 0.5 * h * k2.dphi});
    const State k4 = f({s.phi + h * k3.phi, s.dphi + h * k3.dphi});
    return {s.phi + h / 6 * (k1.phi + 2 * k2.phi + 2 * k3.phi + k4.phi),
            s.dphi + h / 6 * (k1.dphi + 2 * k2.dphi + 2 * k3.dphi + k4.dphi)};
}

// Time for phi' to return to zero when the trajectory starts at s0 with
// phi' of sign `start_sign` (phi' may be zero initially). A secant search
// on the final sub-step length pins the event to RK4 accuracy.
inline double time_to_turn(const idd::PotentialModel& m, State s, double dt) {
    double t = 0.0;
    const double sign = s.dphi != 0.0 ? (s.dphi > 0 ? 1.0 : -1.0) : (idd::potential_derivative(m, s.phi, 1) < 0 ? 1.0 : -1.0);
    for (int guard = 0; guard < 10000000; ++guard) {
        const State n = rk4_step(m, s, dt);
        if (sign * n.dphi <= 0.0 && t > 0.0) {
            double a = 0.0, b = dt;
            double ga = s.dphi, gb = n.dphi;
            for (int it = 0; it < 60 && b - a > 1e-15; ++it) {
                double c = b - gb * (b - a) / (gb - ga);
                if (!(c > a && c < b)) c = 0.5 * (a + b);
                const double gc = rk4_step(m, s, c).dphi;
                if (sign * gc > 0.0) {
                    a = c;
                    ga = gc;
                } else {
                    b = c;
                    gb = gc;
                }
                if (gc == 0.0) return t + c;
            }
            return t + 0.5 * (a + b);
        }
        s = n;
        t += dt;
    }
    return NAN;
}

// Bisection on a sign change, used as an independent turning-point oracle.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
