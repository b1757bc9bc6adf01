// Command-line front end for the delayed Duffing oscillator toolkit:
// reference orbits, DDE simulation, Floquet classification, exponent fits,
// torus-onset probing, and a self-check suite.
#include <CLI11.hpp>

#include "duffing/diagnostics.hpp"
#include "duffing/dde.hpp"
#include "duffing/elliptic.hpp"
#include "duffing/errors.hpp"
#include "duffing/floquet_analytic.hpp"
#include "duffing/floquet_numeric.hpp"
#include "duffing/orbit.hpp"
#include "duffing/quadrature.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace duffing;

std::string g_command_line;

struct ScenarioFlags {
    double a = 0.0;
    double b = 1.0;
    double T = 0.6;
    int n = 1;
    double A0 = 0.0;
    int history_n = -1; // orbit family of the initial history; -1: same as n
    double t_end = 60.0;
    double max_step = 1e-4;
    double tol = 1e-6;
    double sample_dt = 0.02;
    std::string out;
};

void add_param_flags(CLI::App* cmd, ScenarioFlags& s) {
    cmd->add_option("--a", s.a, "instantaneous stiffness a");
    cmd->add_option("--b", s.b, "delayed-term coefficient b");
    cmd->add_option("--T", s.T, "delay T > 0")->check(CLI::PositiveNumber);
}

void add_sim_flags(CLI::App* cmd, ScenarioFlags& s) {
    cmd->add_option("--n", s.n, "reference orbit index n >= 1")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--A0", s.A0, "initial history amplitude");
    cmd->add_option("--history-n", s.history_n,
                    "orbit family of the history (default: n)");
    cmd->add_option("--t-end", s.t_end, "integration horizon")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-step", s.max_step, "maximal step size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", s.tol, "relative local error tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sample-dt", s.sample_dt, "output sampling interval")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", s.out, "CSV output path");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

/// Versioned CSV schema header plus full effective-configuration echo.
void provenance(std::ostream& os, const ScenarioFlags& s,
                const std::string& extra = "") {
    os << "# duffing-csv v1\n";
    os << "# cmd: " << g_command_line << '\n';
    os << std::setprecision(17);
    os << "# a=" << s.a << " b=" << s.b << " T=" << s.T << " n=" << s.n
       << " A0=" << s.A0 << " t_end=" << s.t_end << " max_step=" << s.max_step
       << " tol=" << s.tol << " sample_dt=" << s.sample_dt << '\n';
    if (!extra.empty()) os << "# " << extra << '\n';
}

IntegratorOptions options_of(const ScenarioFlags& s) {
    IntegratorOptions opt;
    opt.max_step = s.max_step;
    opt.tolerance = s.tol;
    return opt;
}

/// Simulation used by simulate/floquet/torus: elliptic history of amplitude
/// A0 in the family of history_n, tracked against the orbit x_n.
struct SimResult {
    PeriodicOrbit orbit;
    Trajectory trajectory;
    std::vector<DeviationSample> deviations;
};

SimResult run_scenario(const ScenarioFlags& s) {
    const DuffingParams params{s.a, s.b, s.T};
    const PeriodicOrbit orbit = solve_amplitude(params, s.n);
    const int hist_n = s.history_n >= 1 ? s.history_n : s.n;
    const double hist_alpha = params.alpha(hist_n);
    const double A0 = s.A0 > 0.0 ? s.A0 : orbit.amplitude;
    const auto history = HistoryFunction::elliptic(A0, hist_alpha);
    Trajectory traj = integrate(params, history, s.t_end, options_of(s));
    auto dev = track_hamiltonian(traj, orbit, s.sample_dt);
    return {orbit, std::move(traj), std::move(dev)};
}

int cmd_amplitude(const ScenarioFlags& s, const std::vector<int>& ns) {
    const DuffingParams params{s.a, s.b, s.T};
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "n,A,p,H,omega,m\n";
    std::cout << "  n            A_n                p_n                H_n\n";
    for (int n : ns) {
        const PeriodicOrbit o = solve_amplitude(params, n);
        csv << n << ',' << o.amplitude << ',' << o.period << ',' << o.energy
            << ',' << o.omega << ',' << o.m << '\n';
        std::cout << std::setw(3) << n << "  " << std::setprecision(17)
                  << std::setw(22) << o.amplitude << std::setw(22) << o.period
                  << std::setw(22) << o.energy << '\n';
    }
    if (!s.out.empty()) {
        auto f = open_out(s.out);
        provenance(f, s, "schema: n,A,p,H,omega,m");
        f << csv.str();
    }
    return 0;
}

int cmd_simulate(const ScenarioFlags& s) {
    const SimResult r = run_scenario(s);
    std::cout << std::setprecision(17) << "A_" << s.n << " = "
              << r.orbit.amplitude << ", H_" << s.n << " = " << r.orbit.energy
              << '\n';
    const auto& last = r.deviations.back();
    std::cout << std::setprecision(6)
              << "final relative H deviation at t=" << last.t << ": "
              << last.value << '\n';
    if (!s.out.empty()) {
        auto f = open_out(s.out);
        provenance(f, s, "schema: t,x,xdot,H");
        write_trajectory_csv(f, r.trajectory, r.orbit.alpha, s.sample_dt);
    }
    return 0;
}

int cmd_floquet(const ScenarioFlags& s) {
    const SimResult r = run_scenario(s);
    const SlopeFit fit = fit_exponent(r.deviations);
    const DuffingParams params{s.a, s.b, s.T};
    const StabilityVerdict v = classify(params, s.n);
    std::cout << std::setprecision(10);
    std::cout << "fitted exponent slope : " << fit.slope << '\n'
              << "fit window            : [" << fit.t_lo << ", " << fit.t_hi
              << "]  (" << fit.n_points << " points, residual rms "
              << fit.residual_rms << ", noise floor " << fit.noise_floor
              << ")\n"
              << "leading-order exponent: " << v.predicted_exponent << '\n';
    if (!s.out.empty()) {
        auto f = open_out(s.out);
        std::ostringstream extra;
        extra << std::setprecision(17) << "slope=" << fit.slope
              << " window=[" << fit.t_lo << ',' << fit.t_hi
              << "] n_points=" << fit.n_points << " residual_rms="
              << fit.residual_rms << " noise_floor=" << fit.noise_floor;
        provenance(f, s, "schema: t,deviation; " + extra.str());
        write_series_csv(f, r.deviations);
    }
    return 0;
}

int cmd_classify(const ScenarioFlags& s, const std::vector<double>& Ts,
                 const std::vector<int>& ns) {
    std::ostringstream csv;
    csv << std::setprecision(17) << "T,n,b,verdict,condition_value,predicted_exponent\n";
    std::cout << "     T    n       verdict   condition  exponent\n";
    for (double T : Ts) {
        for (int n : ns) {
            const StabilityVerdict v = classify({s.a, s.b, T}, n);
            csv << T << ',' << n << ',' << s.b << ',' << to_string(v.verdict)
                << ',' << v.condition_value << ',' << v.predicted_exponent
                << '\n';
            std::cout << std::setprecision(6) << std::setw(6) << T
                      << std::setw(5) << n << std::setw(14)
                      << to_string(v.verdict) << std::setw(12)
                      << v.condition_value << std::setw(10)
                      << v.predicted_exponent << '\n';
        }
    }
    if (!s.out.empty()) {
        auto f = open_out(s.out);
        provenance(f, s, "schema: T,n,b,verdict,condition_value,predicted_exponent");
        f << csv.str();
    }
    return 0;
}

int cmd_characteristic(const ScenarioFlags& s, const std::vector<double>& Ts,
                       const std::vector<int>& ns) {
    std::ostringstream csv;
    csv << std::setprecision(17) << "T,n,Re_mu,Im_mu,abs_sigma,verdict\n";
    std::cout << "     T    n          Re mu          Im mu     |sigma|   verdict\n";
    for (double T : Ts) {
        for (int n : ns) {
            const auto sol = solve_characteristic({s.a, s.b, T}, n);
            const double mod = std::abs(sol.sigma);
            const char* verdict = mod > 1.0 ? "stable" : "unstable";
            csv << T << ',' << n << ',' << sol.mu.real() << ','
                << sol.mu.imag() << ',' << mod << ',' << verdict << '\n';
            std::cout << std::setprecision(6) << std::setw(6) << T
                      << std::setw(5) << n << std::setprecision(8)
                      << std::setw(15) << sol.mu.real() << std::setw(15)
                      << sol.mu.imag() << std::setw(12) << mod << "   "
                      << verdict << '\n';
        }
    }
    if (!s.out.empty()) {
        auto f = open_out(s.out);
        provenance(f, s, "schema: T,n,Re_mu,Im_mu,abs_sigma,verdict");
        f << csv.str();
    }
    return 0;
}

int cmd_tcrit(const ScenarioFlags& s, const std::string& parity_name,
              const std::vector<int>& ks) {
    const Parity parity =
        parity_name == "even" ? Parity::even : Parity::odd;
    std::cout << std::setprecision(17);
    for (int k : ks) {
        const auto tb = torus_boundary(s.b, parity, k);
        if (tb)
            std::cout << "k=" << k << ": T_crit = " << tb->T
                      << ", omega = " << tb->omega << '\n';
        else
            std::cout << "k=" << k
                      << ": no boundary (radicand negative for this parity/b)\n";
    }
    return 0;
}

int cmd_torus(const ScenarioFlags& s) {
    const SimResult r = run_scenario(s);
    const TorusReport rep = detect_torus(r.deviations, s.T);
    std::cout << std::setprecision(8)
              << "sustained oscillation : " << (rep.sustained ? "yes" : "no")
              << '\n'
              << "oscillation period    : " << rep.oscillation_period
              << "  (2T = " << 2.0 * s.T << ")\n"
              << "relative amplitude    : " << rep.relative_amplitude << '\n'
              << "transient end         : " << rep.transient_end << '\n';
    if (!s.out.empty()) {
        auto f = open_out(s.out);
        std::ostringstream extra;
        extra << std::setprecision(17) << "sustained=" << rep.sustained
              << " period=" << rep.oscillation_period
              << " amplitude=" << rep.relative_amplitude
              << " transient_end=" << rep.transient_end;
        provenance(f, s, "schema: t,deviation; " + extra.str());
        write_series_csv(f, r.deviations);
    }
    return 0;
}

int cmd_verify(double inject_pstar_error) {
    int failures = 0;
    auto report = [&](const std::string& name, bool pass,
                      const std::string& detail) {
        std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << '\n';
        if (!pass) ++failures;
    };
    std::ostringstream d;
    d << std::setprecision(3);

    const double ps = p_star() + inject_pstar_error;

    { // elliptic identities on a grid
        double worst = 0.0;
        for (double m : {0.1, 0.5, 0.9})
            for (double u = -8.0; u < 8.0; u += 0.43) {
                const auto v = jacobi(u, m);
                worst = std::max(worst,
                                 std::abs(v.sn * v.sn + v.cn * v.cn - 1.0));
                worst = std::max(
                    worst, std::abs(v.dn * v.dn + m * v.sn * v.sn - 1.0));
            }
        d.str("");
        d << "max identity error " << worst;
        report("elliptic identities sn^2+cn^2=1, dn^2+m sn^2=1", worst < 1e-12,
               d.str());
    }
    { // K via AGM against direct quadrature of the defining integral
        const GaussLegendreRule gl(20);
        const double byquad = gl.integrate(
            [](double v) {
                const double sv = std::sin(v);
                return 1.0 / std::sqrt(1.0 - 0.5 * sv * sv);
            },
            0.0, std::numbers::pi / 2.0, 8);
        d.str("");
        d << "AGM " << std::setprecision(12) << complete_K(0.5) << " vs quad "
          << byquad;
        report("complete_K(1/2) matches quadrature",
               std::abs(complete_K(0.5) - byquad) < 1e-12, d.str());
    }
    { // energy identity against (possibly injected) p*
        const GaussLegendreRule gl(24);
        const double integral = gl.integrate(
            [](double t) {
                const auto [sn, dn] = sn_dn(t, 0.5);
                return sn * sn * dn * dn;
            },
            0.0, 0.5 * p_star(), 16);
        d.str("");
        d << "integral " << std::setprecision(12) << integral << " vs p*/6 "
          << ps / 6.0;
        report("energy identity int xdot*^2 = p*/6",
               std::abs(integral - ps / 6.0) < 1e-9, d.str());
    }
    { // Wronskian identities
        double worst_det = 0.0, worst_tr = 0.0;
        for (double eps : {0.0, 1e-3, 1e-2, 1e-1})
            for (double alpha : {-1.0, 1.0}) {
                const double hp =
                    0.5 * period_of_amplitude(eps * alpha, 1.0);
                for (cplx sigma :
                     {cplx(1.0), cplx(0.5), cplx(-1.0), cplx(0.0, 1.0)}) {
                    const WronskiMatrix W =
                        wronskian(eps, sigma, alpha, hp, 0.0);
                    worst_det =
                        std::max(worst_det, std::abs(W.det() - 1.0));
                    if (sigma == cplx(1.0))
                        worst_tr = std::max(
                            worst_tr, std::abs(W.trace() - (-2.0)));
                }
            }
        d.str("");
        d << "max |det-1| " << worst_det << ", max |tr+2| " << worst_tr;
        report("Wronskian det = 1 and tr(sigma=1) = -2",
               worst_det < 1e-9 && worst_tr < 1e-8, d.str());
    }
    { // round trips
        bool ok = true;
        for (int n : {1, 2, 11, 28}) {
            const DuffingParams params{0.0, 1.0, 0.7};
            const PeriodicOrbit o = solve_amplitude(params, n);
            ok = ok && std::abs(period_of_amplitude(o.alpha, o.amplitude) -
                                2.0 * 0.7 / n) < 1e-10 * 2.0 * 0.7 / n;
        }
        report("amplitude/period round trip", ok, "n in {1,2,11,28}");
    }
    { // tau* Richardson, one sigma per parity
        bool ok = true;
        for (Parity parity : {Parity::odd, Parity::even}) {
            const cplx tau = trace_tau_limit(1e-2, cplx(0.5), parity, 1.0);
            const double ref = -(1.0 / 24.0) * ps * ps * parity_sign(parity);
            ok = ok && std::abs(tau - ref) < 2e-3 * std::abs(ref);
        }
        report("tau* limit matches -(1/24) p*^2 (-1)^n b", ok, "");
    }
    { // replicate_delays parity law
        bool ok = true;
        for (int n = 1; n <= 25; ++n)
            for (int k : {-n / 2 + 1, 0, 1, 7}) {
                if (n + 2 * k < 1) continue;
                ok = ok && (replicate_delays(1.0, n, k).n % 2 == n % 2);
            }
        report("replicate_delays preserves parity", ok, "");
    }

    std::cout << (failures == 0 ? "all checks passed"
                                : std::to_string(failures) + " check(s) failed")
              << '\n';
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    std::ostringstream cl;
    for (int i = 0; i < argc; ++i) cl << (i ? " " : "") << argv[i];
    g_command_line = cl.str();

    CLI::App app{"delayed Duffing oscillator: rapidly oscillating periodic "
                 "solutions, their Floquet stability, and simulation "
                 "diagnostics"};
    app.require_subcommand(1);
    app.fallthrough(); // let --config after a subcommand reach the main app
    app.set_config("--config", "", "key=value config file ([section] per subcommand)");

    ScenarioFlags s;
    std::vector<int> ns{1};
    std::vector<double> Ts{0.6};
    std::vector<int> ks{1};
    std::string parity_name = "odd";
    double inject_pstar = 0.0;

    auto* amplitude = app.add_subcommand(
        "amplitude", "solve amplitudes A_n with period 2T/n");
    add_param_flags(amplitude, s);
    amplitude->add_option("--n", ns, "orbit indices")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    amplitude->add_option("--out", s.out, "CSV output path");

    auto* simulate = app.add_subcommand(
        "simulate", "integrate the DDE from an elliptic history");
    add_param_flags(simulate, s);
    add_sim_flags(simulate, s);

    auto* floquet = app.add_subcommand(
        "floquet", "simulate and fit the Floquet exponent from H(t)");
    add_param_flags(floquet, s);
    add_sim_flags(floquet, s);

    auto* classify_cmd = app.add_subcommand(
        "classify", "stability verdicts over a (T, n) grid");
    add_param_flags(classify_cmd, s);
    classify_cmd->add_option("--n", ns, "orbit indices")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    classify_cmd->add_option("--T-list", Ts, "delays")->delimiter(',');
    classify_cmd->add_option("--out", s.out, "CSV output path");

    auto* characteristic = app.add_subcommand(
        "characteristic", "Floquet multipliers over a (T, n) grid");
    add_param_flags(characteristic, s);
    characteristic->add_option("--n", ns, "orbit indices")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    characteristic->add_option("--T-list", Ts, "delays")->delimiter(',');
    characteristic->add_option("--out", s.out, "CSV output path");

    auto* tcrit = app.add_subcommand(
        "tcrit", "torus-onset delay boundary T_crit");
    add_param_flags(tcrit, s);
    tcrit->add_option("--parity", parity_name, "n parity: odd|even")
        ->check(CLI::IsMember({"odd", "even"}));
    tcrit->add_option("--k", ks, "odd boundary indices")->delimiter(',');

    auto* torus = app.add_subcommand(
        "torus", "simulate and probe for sustained H(t) oscillation");
    add_param_flags(torus, s);
    add_sim_flags(torus, s);

    auto* verify = app.add_subcommand(
        "verify", "run the invariant checklist");
    verify
        ->add_option("--inject-pstar-error", inject_pstar,
                     "fault injection: perturb the p* constant")
        ->default_val(0.0);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*amplitude) return cmd_amplitude(s, ns);
        if (*simulate) return cmd_simulate(s);
        if (*floquet) return cmd_floquet(s);
        if (*classify_cmd) return cmd_classify(s, Ts, ns);
        if (*characteristic) return cmd_characteristic(s, Ts, ns);
        if (*tcrit) return cmd_tcrit(s, parity_name, ks);
        if (*torus) return cmd_torus(s);
        if (*verify) return cmd_verify(inject_pstar);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
