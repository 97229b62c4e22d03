#include "idd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "idd/error.hpp"

namespace idd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point abscissae (non-negative half) and weights; the Gauss
// 7-point rule reuses the odd-indexed abscissae.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    double abs_value;
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
};

double checked_eval(const RealFn& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrand is " << v << " at x=" << x;
        throw Error(ErrorCode::NonFiniteIntegrand, os.str());
    }
    return v;
}

Panel gauss_kronrod(const RealFn& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = checked_eval(f, c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_sum = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = checked_eval(f, c - dx);
        const double f2 = checked_eval(f, c + dx);
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return Panel{a, b, kronrod * h, std::abs((kronrod - gauss) * h), abs_sum * std::abs(h), depth};
}

}  // namespace

void Tolerances::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 10) {
        throw Error(ErrorCode::InvalidArgument, "tolerances need abs_tol > 0, rel_tol > 0, max_depth >= 10");
    }
}

QuadratureResult integrate_adaptive(const RealFn& f, double a, double b, const Tolerances& tol) {
    tol.validate();
    if (!(a < b)) {
        throw Error(ErrorCode::DomainError, "integrate_adaptive requires a < b");
    }
    std::priority_queue<Panel> heap;
    Panel first = gauss_kronrod(f, a, b, 0);
    double value = first.value, error = first.error, abs_value = first.abs_value;
    heap.push(first);
    int subdivisions = 0;
    constexpr int kMaxPanels = 100000;
    for (;;) {
        // The round-off floor keeps near-eps tolerances from looping forever.
        const double target = std::max({tol.abs_tol, tol.rel_tol * std::abs(value), 50.0 * kEps * abs_value});
        if (error <= target) break;
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= tol.max_depth || mid <= worst.a || mid >= worst.b || subdivisions >= kMaxPanels) {
            std::ostringstream os;
            os << "error estimate " << error << " exceeds target " << target << " on [" << a << ", " << b << "]";
            throw Error(ErrorCode::ToleranceNotMet, os.str());
        }
        heap.pop();
        Panel left = gauss_kronrod(f, worst.a, mid, worst.depth + 1);
        Panel right = gauss_kronrod(f, mid, worst.b, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        // Incremental updates drift; resum occasionally.
        if (subdivisions % 64 == 0) {
            auto copy = heap;
            value = error = abs_value = 0.0;
            while (!copy.empty()) {
                value += copy.top().value;
                error += copy.top().error;
                abs_value += copy.top().abs_value;
                copy.pop();
            }
        }
    }
    // Final exact resummation in a fixed order for reproducibility.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
    QuadratureResult out;
    for (const Panel& p : panels) {
        out.value += p.value;
        out.error_estimate += p.error;
    }
    out.subdivisions = subdivisions;
    return out;
}

namespace {

QuadratureResult one_sided(const OffsetFn& f, double a, double b, bool left, const Tolerances& tol) {
    const double U = std::sqrt(b - a);
    RealFn g;
    if (left) {
        g = [&f, a](double u) { return 2.0 * u * f(a, u * u); };
    } else {
        g = [&f, b](double u) { return 2.0 * u * f(b, -u * u); };
    }
    // A simple zero of E - V leaves g bounded as u -> 0. A higher-order zero
    // makes g grow like 1/u, which shows up as a tenfold jump per decade.
    const double u_small = 1e-8 * U, u_mid = 1e-7 * U;
    if (u_small > 0.0) {
        const double g1 = std::abs(g(u_small));
        const double g2 = std::abs(g(u_mid));
        if (std::isfinite(g1) && std::isfinite(g2) && g1 > 5.0 * g2 && g1 > 1e-300) {
            throw Error(ErrorCode::BracketInvalid,
                        "integrand is not an inverse square-root singularity at the flagged endpoint");
        }
    }
    return integrate_adaptive(g, 0.0, U, tol);
}

}  // namespace

QuadratureResult integrate_sqrt_singular(const OffsetFn& f, double a, double b, Singular where,
                                         const Tolerances& tol) {
    tol.validate();
    if (!(a < b)) {
        throw Error(ErrorCode::DomainError, "integrate_sqrt_singular requires a < b");
    }
    switch (where) {
        case Singular::Left:
            return one_sided(f, a, b, true, tol);
        case Singular::Right:
            return one_sided(f, a, b, false, tol);
        case Singular::Both: {
            const double c = 0.5 * (a + b);
            Tolerances half = tol;
            half.abs_tol = 0.5 * tol.abs_tol;
            QuadratureResult l = one_sided(f, a, c, true, half);
            QuadratureResult r = one_sided(f, c, b, false, half);
            return {l.value + r.value, l.error_estimate + r.error_estimate, l.subdivisions + r.subdivisions};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown singularity flag");
}

QuadratureResult integrate_sqrt_singular(const RealFn& f, double a, double b, Singular where,
                                         const Tolerances& tol) {
    return integrate_sqrt_singular(OffsetFn([&f](double e, double d) { return f(e + d); }), a, b, where, tol);
}

double find_root_bracketed(const RealFn& g, double lo, double hi, const Tolerances& tol, const RealFn& dg,
                           std::optional<double> x0) {
    tol.validate();
    if (lo > hi) std::swap(lo, hi);
    double glo = g(lo), ghi = g(hi);
    if (std::isnan(glo) || std::isnan(ghi)) {
        throw Error(ErrorCode::DomainError, "root function is NaN at a bracket end");
    }
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (std::signbit(glo) == std::signbit(ghi)) {
        std::ostringstream os;
        os << "g(" << lo << ")=" << glo << " and g(" << hi << ")=" << ghi << " have the same sign";
        throw Error(ErrorCode::NoSignChange, os.str());
    }
    constexpr int kMaxIter = 200;
    double x = 0.5 * (lo + hi);
    if (x0 && *x0 > lo && *x0 < hi) x = *x0;
    double width_before = hi - lo;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        const double gx = g(x);
        if (gx == 0.0) return x;
        if (std::isnan(gx)) throw Error(ErrorCode::DomainError, "root function is NaN inside the bracket");
        if (std::signbit(gx) == std::signbit(glo)) {
            lo = x;
            glo = gx;
        } else {
            hi = x;
            ghi = gx;
        }
        if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + std::numeric_limits<double>::min()) {
            return std::abs(glo) < std::abs(ghi) ? lo : hi;
        }
        double slope = std::numeric_limits<double>::quiet_NaN();
        if (dg) {
            slope = dg(x);
        } else {
            double h = std::max(1e-7, 1e-7 * std::abs(x));
            h = std::min(h, 0.5 * std::min(x - lo, hi - x));
            if (h > 0.0) slope = (g(x + h) - g(x - h)) / (2.0 * h);
        }
        double next = x - gx / slope;
        const bool newton_ok = std::isfinite(next) && next > lo && next < hi;
        // Force a bisection when Newton has not at least halved the bracket
        // over the last two iterations.
        const bool slow = (iter % 2 == 1) && (hi - lo) > 0.5 * width_before;
        if (iter % 2 == 1) width_before = hi - lo;
        if (!newton_ok || slow) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (newton_ok && !slow && step <= std::max(tol.abs_tol, tol.rel_tol * std::abs(x))) {
            return std::clamp(x, lo, hi);
        }
    }
    throw Error(ErrorCode::NonConvergence, "bracketed Newton iteration hit its iteration cap");
}

double log1p_minus_x(double y) {
    if (std::abs(y) < 0.1) {
        // -y^2/2 + y^3/3 - ... ; 20 terms leave a remainder below 1e-21.
        double term = y;
        double sum = 0.0;
        for (int n = 2; n < 24; ++n) {
            term *= -y;
            sum += term / n;
        }
        return sum;
    }
    return std::log1p(y) - y;
}

double dilog(double z) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw Error(ErrorCode::DomainError, "dilog is implemented on [0, 1]");
    }
    constexpr double kPi2over6 = std::numbers::pi * std::numbers::pi / 6.0;
    if (z == 1.0) return kPi2over6;
    if (z <= 0.5) {
        double sum = 0.0, zk = z;
        for (int k = 1; k < 200; ++k) {
            const double term = zk / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-18 * sum) break;
            zk *= z;
        }
        return sum;
    }
    return kPi2over6 - std::log(z) * std::log1p(-z) - dilog(1.0 - z);
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order) {
    const int n = static_cast<int>(nodes.size());
    if (order < 0 || n <= order) throw Error(ErrorCode::InvalidArgument, "too few nodes for the derivative order");
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][order];
    return w;
}

Pchip::Pchip(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 2 || ys_.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "Pchip needs at least two points and equal lengths");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(xs_[i] > xs_[i - 1])) throw Error(ErrorCode::InvalidArgument, "Pchip abscissae must increase");
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = xs_[i + 1] - xs_[i];
        delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
    }
    ds_.assign(n, 0.0);
    if (n == 2) {
        ds_[0] = ds_[1] = delta[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] > 0.0) {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            ds_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Shape-preserving three-point end slopes.
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (std::signbit(d) != std::signbit(d0)) {
            d = 0.0;
        } else if (std::signbit(d0) != std::signbit(d1) && std::abs(d) > 3.0 * std::abs(d0)) {
            d = 3.0 * d0;
        }
        return d;
    };
    ds_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    ds_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t Pchip::segment(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
    return std::min(i, xs_.size() - 2);
}

double Pchip::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ys_[i] + (t3 - 2 * t2 + t) * h * ds_[i] + (-2 * t3 + 3 * t2) * ys_[i + 1] +
           (t3 - t2) * h * ds_[i + 1];
}

double Pchip::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * ys_[i] + (-6 * t2 + 6 * t) * ys_[i + 1]) / h + (3 * t2 - 4 * t + 1) * ds_[i] +
           (3 * t2 - 2 * t) * ds_[i + 1];
}

}  // namespace idd
