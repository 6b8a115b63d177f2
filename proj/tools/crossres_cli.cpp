// Command-line driver: hypothesis checks, single-method resonance runs,
// full h-sweeps and plot-data extraction.
//
// Exit codes: 0 success, 2 hypothesis failure, 3 numerical failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "crossres/action.hpp"
#include "crossres/errors.hpp"
#include "crossres/harness.hpp"
#include "crossres/model.hpp"
#include "crossres/quantization.hpp"
#include "crossres/shooting.hpp"
#include "crossres/spectral.hpp"

using namespace crossres;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitHypothesis = 2;
constexpr int kExitNumerical = 3;

int print_hypotheses(const HypothesisReport& rep) {
    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name
                  << (c.message.empty() ? "" : "  (" + c.message + ")") << '\n';
    return rep.all_pass() ? kExitOk : kExitHypothesis;
}

// loads the problem and enforces the hypothesis gate unless forced
ProblemSetup load_checked(const std::string& path, bool force) {
    ProblemSetup setup = build_problem_file(path);
    HypothesisReport rep = validate_hypotheses(setup);
    if (!rep.all_pass() && !force) {
        std::cerr << "hypothesis check failed (use --force for diagnostic runs):\n";
        for (const auto& c : rep.checks)
            if (!c.pass) std::cerr << "  FAIL " << c.name << ": " << c.message << '\n';
        std::exit(kExitHypothesis);
    }
    return setup;
}

EnergyRectangle make_rect(const ProblemSetup& setup, double h, double r, double M) {
    if (M <= 0.0) M = 2.0 / period_T(setup, setup.E0).real();
    return EnergyRectangle{setup.E0, r, M, h};
}

void csv_header() { std::cout << "method,h,n,re_E,im_E,residual,stability\n"; }

void csv_row(const std::string& method, double h, long n, cplx E, double residual,
             int stability) {
    std::cout << method << ',' << fmt17(h) << ',' << n << ',' << fmt17(E.real()) << ','
              << fmt17(E.imag()) << ',' << fmt17(residual) << ',' << stability << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonances of a 1D two-channel semiclassical Schrodinger system"};
    app.require_subcommand(1);

    std::string config, sweep_path, report_path, outdir = ".";
    double h = 0.1, r = 2.0, M = 0.0, L = 0.0, Mprime = 0.0;
    int N = 0;
    bool force = false;

    auto* c_check = app.add_subcommand("check", "validate the model hypotheses");
    c_check->add_option("config", config)->required();

    auto* c_pseudo = app.add_subcommand("pseudo", "pseudo-resonances (quantization roots)");
    c_pseudo->set_help_flag("--help"); // frees -h/--h for the semiclassical parameter
    c_pseudo->add_option("config", config)->required();
    c_pseudo->add_option("--h", h)->required();
    c_pseudo->add_option("--r", r);
    c_pseudo->add_option("--M", M);
    c_pseudo->add_flag("--force", force, "skip the hypothesis gate");

    auto* c_spec = app.add_subcommand("spectrum", "distorted-operator eigenvalues");
    c_spec->set_help_flag("--help");
    c_spec->add_option("config", config)->required();
    c_spec->add_option("--h", h)->required();
    c_spec->add_option("--r", r);
    c_spec->add_option("--M", M);
    c_spec->add_option("--N", N);
    c_spec->add_option("--L", L);
    c_spec->add_option("--Mprime", Mprime);
    c_spec->add_flag("--force", force);

    auto* c_shoot = app.add_subcommand("shoot", "shooting-determinant roots");
    c_shoot->set_help_flag("--help");
    c_shoot->add_option("config", config)->required();
    c_shoot->add_option("--h", h)->required();
    c_shoot->add_option("--r", r);
    c_shoot->add_option("--M", M);
    c_shoot->add_flag("--force", force);

    auto* c_sweep = app.add_subcommand("sweep", "h-sweep with cross-method matching");
    c_sweep->add_option("sweep-config", sweep_path)->required();

    auto* c_plot = app.add_subcommand("plotdata", "plot-ready CSV from a sweep report");
    c_plot->add_option("report", report_path)->required();
    c_plot->add_option("--outdir", outdir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) {
            ProblemSetup setup = build_problem_file(config);
            return print_hypotheses(validate_hypotheses(setup));
        }
        if (c_pseudo->parsed()) {
            ProblemSetup setup = load_checked(config, force);
            EnergyRectangle rect = make_rect(setup, h, r, M);
            csv_header();
            for (const auto& pr : pseudo_resonances(setup, rect))
                csv_row("pseudo", h, pr.n, pr.E, pr.residual, 1);
            return kExitOk;
        }
        if (c_spec->parsed()) {
            ProblemSetup setup = load_checked(config, force);
            EnergyRectangle rect = make_rect(setup, h, r, M);
            SpectralOptions opts;
            opts.N = N;
            opts.L = L;
            opts.M_prime = Mprime;
            auto res = resonances_spectral(setup, rect, opts);
            csv_header();
            long ord = 0;
            for (const auto& e : res.eigenvalues)
                csv_row("spectral", h, ord++, e.E, e.grid_shift, e.stable ? 1 : 0);
            return kExitOk;
        }
        if (c_shoot->parsed()) {
            ProblemSetup setup = load_checked(config, force);
            EnergyRectangle rect = make_rect(setup, h, r, M);
            csv_header();
            long ord = 0;
            for (const auto& s : find_resonances_shooting(setup, rect))
                csv_row("shooting", h, ord++, s.E, std::abs(s.det_value),
                        s.converged ? 1 : 0);
            return kExitOk;
        }
        if (c_sweep->parsed()) {
            SweepConfig cfg = SweepConfig::parse_file(sweep_path);
            ProblemSetup setup = load_checked(cfg.problem_path, false);
            MatchReport rep = run_sweep(setup, cfg);
            std::ofstream csv(cfg.outdir + "/resonances.csv");
            write_csv(rep, csv);
            nlohmann::json j = report_to_json(rep);
            std::ofstream js(cfg.outdir + "/report.json");
            js << j.dump(2) << '\n';
            write_plotdata(j, cfg.outdir);
            // failed cells are recorded in the report, not fatal
            for (const auto& cell : rep.cells)
                for (const auto& m : cell.methods)
                    if (!m.ok)
                        std::cerr << "cell h=" << cell.h << " method=" << m.method
                                  << " failed: " << m.error << '\n';
            std::cout << "report written to " << cfg.outdir << '\n';
            return kExitOk;
        }
        if (c_plot->parsed()) {
            std::ifstream in(report_path);
            if (!in) throw Error("cannot open report: " + report_path);
            nlohmann::json j;
            in >> j;
            write_plotdata(j, outdir);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
