#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "idd/error.hpp"
#include "idd/family.hpp"
#include "idd/fdsoliton.hpp"
#include "idd/model.hpp"
#include "idd/observables.hpp"
#include "idd/parallel.hpp"
#include "idd/period.hpp"
#include "idd/profile.hpp"
#include "idd/spectrum.hpp"

#ifndef IDD_WAVES_VERSION
#define IDD_WAVES_VERSION "dev"
#endif

namespace {

using namespace idd;
using cli::Cell;
using cli::CsvWriter;

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts plain decimals as well as multiples of pi written "2pi", "pi", "0.5pi".
double parse_length(const std::string& text) {
    std::string s = text;
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        s.erase(s.size() - 2);
        if (!s.empty() && s.back() == '*') s.pop_back();
        if (s.empty()) return factor;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse length '" + text + "'");
    }
    if (used != s.size()) throw UsageError("cannot parse length '" + text + "'");
    const double L = v * factor;
    if (!(L > 0.0)) throw UsageError("L must be positive");
    return L;
}

Branch parse_branch(const std::string& s) {
    if (s == "even") return Branch::EvenInterior;
    if (s == "odd") return Branch::OddExterior;
    throw UsageError("branch must be 'even' or 'odd'");
}

// "lo:hi:n" -> n equally spaced values including both ends.
std::vector<double> parse_omega_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("omega grid must look like lo:hi:n");
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int n = std::stoi(parts[2]);
    if (n < 1 || (n > 1 && !(hi > lo))) throw UsageError("omega grid needs n >= 1 and hi > lo");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return out;
}

struct Common {
    std::string branch = "even";
    std::string L_text = "2pi";
    double tol_abs = 1e-10;
    double tol_rel = 1e-8;
    std::string out;

    Tolerances tolerances() const {
        Tolerances t{tol_abs, tol_rel};
        t.validate();
        return t;
    }
};

void add_common(CLI::App* cmd, Common& c, bool with_L = true) {
    cmd->add_option("--branch", c.branch, "wave family: even or odd")->capture_default_str();
    if (with_L) cmd->add_option("--L", c.L_text, "spatial period, decimal or e.g. 2pi")->capture_default_str();
    cmd->add_option("--tol-abs", c.tol_abs, "absolute quadrature tolerance")->capture_default_str();
    cmd->add_option("--tol-rel", c.tol_rel, "relative quadrature tolerance")->capture_default_str();
    cmd->add_option("--out", c.out, "output file (default stdout)");
}

void write_metadata(CsvWriter& w, const std::string& what, const Common& c) {
    w.comment("idd_waves " IDD_WAVES_VERSION " " + what);
    w.comment("tol_abs=" + cli::format_double(c.tol_abs) + " tol_rel=" + cli::format_double(c.tol_rel));
}

std::vector<double> resolve_frequencies(const std::vector<double>& omegas, const std::string& grid_spec) {
    std::vector<double> out = omegas;
    if (!grid_spec.empty()) {
        const std::vector<double> g = parse_omega_grid(grid_spec);
        out.insert(out.end(), g.begin(), g.end());
    }
    return out;
}

int run_period(const Common& c, const std::vector<double>& omegas, int n_bulk, int n_near, bool derivative) {
    if (omegas.empty()) throw UsageError("period needs at least one --omega value");
    const Branch b = parse_branch(c.branch);
    const Tolerances tol = c.tolerances();
    CsvWriter w(c.out);
    write_metadata(w, std::string("period branch=") + to_string(b), c);
    w.header({"omega", "E", "T", "dT_dE", "ok", "error"});
    bool all_ok = true;
    for (double omega : omegas) {
        const std::vector<double> grid = default_energy_grid(b, omega, n_bulk, n_near);
        for (const PeriodScanPoint& p : period_scan(b, omega, grid, tol, derivative, Exec::Parallel)) {
            all_ok = all_ok && p.ok;
            w.row({p.omega, p.E, p.T, derivative ? p.dT_dE : std::nan(""), static_cast<long long>(p.ok), p.error});
        }
    }
    return all_ok ? kExitOk : kExitNotConverged;
}

std::vector<double> family_grid(Branch b, double L, const std::vector<double>& omegas, const std::string& spec,
                                int n) {
    std::vector<double> g = resolve_frequencies(omegas, spec);
    if (g.empty()) {
        if (n < 1) throw UsageError("need --omega, --omega-grid or --grid n");
        g = uniform_omega_grid(b, L, n);
    }
    return g;
}

int run_family(const Common& c, const std::vector<double>& omegas, const std::string& spec, int n, int n_interp) {
    const Branch b = parse_branch(c.branch);
    const double L = parse_length(c.L_text);
    const FamilyCurve curve = continue_family(b, L, family_grid(b, L, omegas, spec, n), default_family_tolerances());
    CsvWriter w(c.out);
    write_metadata(w, std::string("family branch=") + to_string(b) + " L=" + cli::format_double(L), c);
    for (const std::string& warn : curve.warnings) w.comment("warning: " + warn);
    w.header({"kind", "omega", "E_L", "tilde_E", "m", "M", "converged", "error"});
    const double nan = std::nan("");
    for (const FamilyPoint& p : curve.points) {
        w.row({std::string("wave"), p.omega, p.E_L, p.tilde_E, p.m, p.M, static_cast<long long>(p.converged), p.error});
    }
    if (n_interp > 0 && curve.all_converged() && curve.points.size() >= 3) {
        for (const InterpolatedPoint& q : interpolate_to_peaked(curve, n_interp)) {
            w.row({std::string("interp"), q.omega, nan, q.tilde_E, nan, nan, 1LL, std::string()});
        }
    }
    w.row({std::string("peaked"), 1.0, nan, peaked_energy(b, L), nan, 1.0, 1LL, std::string()});
    return curve.all_converged() ? kExitOk : kExitNotConverged;
}

int run_profile(const Common& c, double omega, int samples) {
    const Branch b = parse_branch(c.branch);
    const double L = parse_length(c.L_text);
    CsvWriter w(c.out);
    write_metadata(w, std::string("profile branch=") + to_string(b) + " L=" + cli::format_double(L) +
                          " omega=" + cli::format_double(omega), c);
    w.header({"x", "phi", "phi_peaked"});
    if (omega == 1.0) {
        const Profile p = peaked_profile_samples(b, L, samples);
        for (std::size_t i = 0; i < p.xs.size(); ++i) w.row({p.xs[i], p.phis[i], p.phis[i]});
        return kExitOk;
    }
    const FamilyPoint point = solve_energy_for_period(b, omega, L, default_family_tolerances());
    if (!point.converged) {
        std::cerr << "family point did not converge: " << point.error << '\n';
        return kExitNotConverged;
    }
    const Profile p = reconstruct_profile(point, samples, c.tolerances());
    for (std::size_t i = 0; i < p.xs.size(); ++i) w.row({p.xs[i], p.phis[i], peaked_profile(b, L, p.xs[i])});
    return kExitOk;
}

int run_mass(const Common& c, const std::vector<double>& omegas, const std::string& spec, int n) {
    const Branch b = parse_branch(c.branch);
    const double L = parse_length(c.L_text);
    FamilyCurve curve = continue_family(b, L, family_grid(b, L, omegas, spec, n), default_family_tolerances());
    if (!curve.all_converged()) {
        for (const FamilyPoint& p : curve.points) {
            if (!p.converged) std::cerr << "omega=" << p.omega << " failed: " << p.error << '\n';
        }
        return kExitNotConverged;
    }
    const MassCurveReport rep = mass_curve_and_verdicts(curve, c.tolerances(), Exec::Parallel);
    CsvWriter w(c.out);
    write_metadata(w, std::string("mass branch=") + to_string(b) + " L=" + cli::format_double(L), c);
    for (double s : rep.sign_changes) w.comment("dQ/domega sign change near omega=" + cli::format_double(s));
    w.comment("Q at omega=1 (peaked limit) = " + cli::format_double(mass_peaked(b, L)));
    w.header({"omega", "Q", "dQ_domega", "verdict"});
    for (const StabilityVerdict& v : rep.verdicts) w.row({v.omega, v.Q, v.dQ_domega, std::string(to_string(v.verdict))});
    return kExitOk;
}

int run_spectrum(const Common& c, double omega, int N, int samples) {
    const Branch b = parse_branch(c.branch);
    const double L = parse_length(c.L_text);
    FamilyPoint point = solve_energy_for_period(b, omega, L, default_family_tolerances());
    if (!point.converged) {
        std::cerr << "family point did not converge: " << point.error << '\n';
        return kExitNotConverged;
    }
    point.Q = mass_quadrature(point, c.tolerances());
    point.dQ_domega = mass_slope_at(point, 1e-4, c.tolerances());
    const SpectrumReport r = spectrum_report(point, N, samples, c.tolerances());
    const std::string json = to_json_string(r);
    if (c.out.empty() || c.out == "-") {
        std::cout << json << '\n';
    } else {
        std::ofstream f(c.out);
        if (!f) throw std::runtime_error("cannot open output file " + c.out);
        f << json << '\n';
    }
    return kExitOk;
}

StartPolicy parse_policy(const std::string& s) {
    if (s == "cold") return StartPolicy::Cold;
    if (s == "cold-then-warm") return StartPolicy::ColdThenWarm;
    if (s == "warm") return StartPolicy::Warm;
    throw UsageError("start policy must be cold, cold-then-warm or warm");
}

int run_fdsoliton(const Common& c, std::vector<double> dxs, const std::string& policy_text, int n_points,
                  bool with_reference, const std::string& prefix) {
    if (dxs.empty()) throw UsageError("fd-soliton needs at least one --dx");
    const StartPolicy policy = parse_policy(policy_text);
    const std::vector<double> grid = artefact_omega_grid(n_points);
    const std::vector<ArtefactCurve> curves = artefact_scan(dxs, grid, policy, Exec::Parallel);
    bool all_ok = true;
    for (const ArtefactCurve& curve : curves) {
        char tag[32];
        std::snprintf(tag, sizeof tag, "%g", curve.dx);
        CsvWriter w(prefix + "_dx" + tag + ".csv");
        write_metadata(w, "fd-soliton dx=" + cli::format_double(curve.dx) + " start=" + policy_text, c);
        w.header({"omega", "dx", "Q", "iterations", "converged", "warm_started", "source"});
        for (const FdSolveResult& p : curve.points) {
            all_ok = all_ok && p.converged;
            w.row({p.omega, curve.dx, p.converged ? p.Q_trapezoid : std::nan(""), static_cast<long long>(p.iterations),
                   static_cast<long long>(p.converged), static_cast<long long>(p.warm_started),
                   p.converged ? std::string("newton") : p.error});
        }
        for (std::size_t i = 0; i < curve.extrapolated_omega.size(); ++i) {
            w.row({curve.extrapolated_omega[i], curve.dx, curve.extrapolated_Q[i], 0LL, 1LL, 0LL,
                   std::string("extrapolated")});
        }
    }
    if (with_reference) {
        constexpr double kReferenceL = 40.0;
        std::vector<double> ref_grid;
        for (double w : grid) {
            if (w > lower_frequency(Branch::EvenInterior, kReferenceL)) ref_grid.push_back(w);
        }
        const FamilyCurve fam = continue_family(Branch::EvenInterior, kReferenceL, ref_grid);
        const std::vector<double> q = mass_values(fam, c.tolerances(), Exec::Parallel);
        CsvWriter w(prefix + "_reference.csv");
        write_metadata(w, "fd-soliton reference: even family at L=40", c);
        w.header({"omega", "Q", "converged"});
        for (std::size_t i = 0; i < fam.points.size(); ++i) {
            all_ok = all_ok && fam.points[i].converged;
            w.row({fam.points[i].omega, q[i], static_cast<long long>(fam.points[i].converged)});
        }
    }
    return all_ok ? kExitOk : kExitNotConverged;
}

int run_report(bool table1, bool sign_changes, const std::string& L_text) {
    if (!table1 && !sign_changes) throw UsageError("report needs --table1 and/or --sign-changes");
    if (table1) {
        std::printf("Q at omega = 1 (peaked waves)\n");
        std::printf("%-8s %-20s %-20s\n", "L", "even", "odd");
        const char* names[] = {"2pi", "3pi", "4pi"};
        for (int k = 2; k <= 4; ++k) {
            const double L = k * std::numbers::pi;
            std::printf("%-8s %-20.16f %-20.16f\n", names[k - 2], mass_peaked(Branch::EvenInterior, L),
                        mass_peaked(Branch::OddExterior, L));
        }
    }
    int code = kExitOk;
    if (sign_changes) {
        const double L = parse_length(L_text);
        for (Branch b : {Branch::EvenInterior, Branch::OddExterior}) {
            FamilyCurve curve = continue_family(b, L, uniform_omega_grid(b, L, 50));
            if (!curve.all_converged()) {
                std::printf("%s: family did not converge on every grid point\n", to_string(b));
                code = kExitNotConverged;
                continue;
            }
            const MassCurveReport rep = mass_curve_and_verdicts(curve);
            std::printf("%s branch, L=%.10g: dQ/domega sign changes at", to_string(b), L);
            for (double s : rep.sign_changes) std::printf(" %.6f", s);
            std::printf("%s\n", rep.sign_changes.empty() ? " (none)" : "");
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"idd_waves: periodic waves of NLS with intensity-dependent dispersion"};
    app.set_version_flag("--version", IDD_WAVES_VERSION);
    app.require_subcommand(1);

    Common period_c, family_c, profile_c, mass_c, spectrum_c, fd_c;
    std::vector<double> period_omegas, family_omegas, mass_omegas;
    std::string period_grid, family_grid_spec, mass_grid_spec;
    int n_bulk = 300, n_near = 2000;
    bool no_derivative = false;
    int family_n = 0, mass_n = 0, n_interp = 20;
    double profile_omega = 0.0, spectrum_omega = 0.0;
    int samples = 2049, spectrum_N = 512;
    std::vector<double> fd_dx{0.2, 0.1};
    std::string fd_policy = "cold", fd_prefix = "fd_soliton";
    int fd_points = 100;
    bool fd_reference = false;
    bool table1 = false, sign_changes = false;
    std::string report_L = "2pi";

    CLI::App* period = app.add_subcommand("period", "period function T(E) on energy grids");
    add_common(period, period_c, false);
    period->add_option("--omega", period_omegas, "frequencies (repeat or comma separate)")->delimiter(',');
    period->add_option("--omega-grid", period_grid, "lo:hi:n frequency grid");
    period->add_option("--n-bulk", n_bulk, "energy points across the bulk")->capture_default_str();
    period->add_option("--n-near", n_near, "energy points near the homoclinic level")->capture_default_str();
    period->add_flag("--no-derivative", no_derivative, "skip dT/dE");

    CLI::App* family = app.add_subcommand("family", "fixed-period family E_L(omega)");
    add_common(family, family_c);
    family->add_option("--omega", family_omegas, "frequencies")->delimiter(',');
    family->add_option("--omega-grid", family_grid_spec, "lo:hi:n frequency grid");
    family->add_option("--grid", family_n, "n uniform frequencies from the bifurcation point to the cap");
    family->add_option("--interp", n_interp, "interpolated points toward the peaked limit")->capture_default_str();

    CLI::App* profile = app.add_subcommand("profile", "wave profile samples on one period");
    add_common(profile, profile_c);
    profile->add_option("--omega", profile_omega, "frequency (1 gives the peaked closed form)")->required();
    profile->add_option("--samples", samples, "number of samples")->capture_default_str();

    CLI::App* mass = app.add_subcommand("mass", "mass curve Q(omega) and stability verdicts");
    add_common(mass, mass_c);
    mass->add_option("--omega", mass_omegas, "frequencies")->delimiter(',');
    mass->add_option("--omega-grid", mass_grid_spec, "lo:hi:n frequency grid");
    mass->add_option("--grid", mass_n, "n uniform frequencies from the bifurcation point to the cap");

    CLI::App* spectrum = app.add_subcommand("spectrum", "Hessian index counts (JSON)");
    add_common(spectrum, spectrum_c);
    spectrum->add_option("--omega", spectrum_omega, "frequency")->required();
    spectrum->add_option("--N", spectrum_N, "grid size of the periodic operator")->capture_default_str();
    spectrum->add_option("--samples", samples, "profile samples before resampling")->capture_default_str();

    CLI::App* fd = app.add_subcommand("fd-soliton", "finite-difference soliton mass scan");
    add_common(fd, fd_c, false);
    fd->add_option("--dx", fd_dx, "grid spacings")->delimiter(',')->capture_default_str();
    fd->add_option("--start", fd_policy, "cold | cold-then-warm | warm")->capture_default_str();
    fd->add_option("--points", fd_points, "frequencies in [0.005, 0.93]")->capture_default_str();
    fd->add_option("--prefix", fd_prefix, "output file prefix")->capture_default_str();
    fd->add_flag("--reference", fd_reference, "also write the L=40 quadrature reference curve");

    CLI::App* report = app.add_subcommand("report", "summary tables");
    report->add_flag("--table1", table1, "Q of the peaked waves for L = 2pi, 3pi, 4pi");
    report->add_flag("--sign-changes", sign_changes, "locate the dQ/domega sign change on both branches");
    report->add_option("--L", report_L, "period for --sign-changes")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*period) {
            return run_period(period_c, resolve_frequencies(period_omegas, period_grid), n_bulk, n_near, !no_derivative);
        }
        if (*family) return run_family(family_c, family_omegas, family_grid_spec, family_n, n_interp);
        if (*profile) return run_profile(profile_c, profile_omega, samples);
        if (*mass) return run_mass(mass_c, mass_omegas, mass_grid_spec, mass_n);
        if (*spectrum) return run_spectrum(spectrum_c, spectrum_omega, spectrum_N, samples);
        if (*fd) return run_fdsoliton(fd_c, fd_dx, fd_policy, fd_points, fd_reference, fd_c.out.empty() ? fd_prefix : fd_c.out);
        if (*report) return run_report(table1, sign_changes, report_L);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const idd::Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
