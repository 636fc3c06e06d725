// lifemodes: command-line runner for the transition-matrix and life-expectancy
// experiments.
//
//   lifemodes run --mode quantum1 --N 5 --out out/ --plot
//   lifemodes reproduce-paper --out out/
//   lifemodes verify
//   lifemodes spectrum --mode quantum1 --N 5
//
// Exit codes: 0 success, 1 ordering/oracle failure, 2 numerical error, 3 bad
// arguments.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lifemodes/errors.hpp"
#include "lifemodes/experiment.hpp"
#include "lifemodes/io.hpp"
#include "lifemodes/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitBadArgs = 3;

void print_error_json(const std::string& kind, const std::string& message,
                      const nlohmann::json& extra = nlohmann::json::object()) {
    nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
    j["error"].update(extra);
    std::cerr << j.dump() << '\n';
}

struct BadArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

lifemodes::ExperimentConfig make_config(const std::vector<std::string>& modes,
                                        const std::vector<std::size_t>& cutoffs, double a2m2_half,
                                        int dim, std::size_t horizon, const std::string& out,
                                        const std::string& format, bool plot, int death) {
    using namespace lifemodes;
    ExperimentConfig cfg;
    cfg.modes.clear();
    for (const auto& m : modes) {
        const auto parsed = parse_experiment_mode(m);
        if (!parsed) throw BadArgument("unknown mode '" + m + "' (quantum1, realquantum1, quantum1-sp)");
        cfg.modes.push_back(*parsed);
    }
    cfg.cutoffs = cutoffs;
    cfg.half_bare_mass_sq = a2m2_half;
    cfg.dimension = dim;
    cfg.horizon = horizon;
    cfg.out_dir = out;
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    cfg.plot = plot;
    cfg.death_index = death;

    if (a2m2_half < 0.0) throw BadArgument("--a2m2-half must be >= 0");
    if (dim < 1) throw BadArgument("--dim must be >= 1");
    if (horizon < 1) throw BadArgument("--horizon must be >= 1");
    for (auto n : cutoffs) {
        if (n < 3) throw BadArgument("--N must be >= 3");
        if (death < 1 || static_cast<std::size_t>(death) > n) {
            throw BadArgument("--death-state must lie in 1..N");
        }
    }
    for (auto mode : cfg.modes) {
        if (mode == ExperimentMode::Quantum1Superposition && death != 1) {
            throw BadArgument("quantum1-sp only contains the basis death state 1");
        }
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    using namespace lifemodes;

    CLI::App app{"Transition matrices and life expectancies for candidate modes of experience "
                 "in a 1D lattice scalar field toy universe"};
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.require_subcommand(1);

    std::vector<std::string> modes{"quantum1"};
    std::vector<std::size_t> cutoffs{5, 9, 13};
    double a2m2_half = 0.1;
    int dim = 1;
    std::size_t horizon = 10000;
    std::string out = "out";
    std::string format = "csv";
    bool plot = false;
    int death = 1;
    double perturb_eta = 0.0;

    app.add_option("--mode", modes, "quantum1 | realquantum1 | quantum1-sp (repeatable)")->capture_default_str();
    app.add_option("--N", cutoffs, "cutoff: number of even occupation levels (repeatable)")->capture_default_str();
    app.add_option("--a2m2-half", a2m2_half, "bare mass combination a^2 m^2 / 2")->capture_default_str();
    app.add_option("--dim", dim, "spacetime dimension D entering eta")->capture_default_str();
    app.add_option("--horizon", horizon, "maximum number of tabulated survival steps")->capture_default_str();
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_flag("--plot", plot, "emit SVG heatmaps");
    app.add_option("--death-state", death, "level index k of the absorbing state")->capture_default_str();
    app.add_option("--perturb-eta", perturb_eta, "verify: shift eta in the closed-form vertex check");

    auto* run_cmd = app.add_subcommand("run", "compute and write one or more experiments");
    auto* reproduce_cmd = app.add_subcommand("reproduce-paper", "all modes at every N plus the ordering report");
    auto* verify_cmd = app.add_subcommand("verify", "run the oracle cross-checks");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "print the spectrum of M as JSON");
    for (auto* sub : {run_cmd, reproduce_cmd, verify_cmd, spectrum_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        if (*verify_cmd) {
            oracle::SuiteOptions options;
            options.perturb_eta = perturb_eta;
            const auto checks = oracle::run_suite(options);
            std::cout << format_checks(checks);
            const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
            std::cout << (all ? "all checks passed\n" : "some checks FAILED\n");
            return all ? kExitOk : kExitFailure;
        }

        const ExperimentConfig cfg =
            make_config(modes, cutoffs, a2m2_half, dim, horizon, out, format, plot, death);

        if (*spectrum_cmd) {
            nlohmann::json spectra = nlohmann::json::array();
            for (auto mode : cfg.modes) {
                const ModeSpec spec = amplitude_mode(mode);
                const double eta_value = eta(spec, cfg.half_bare_mass_sq, cfg.dimension);
                for (auto n : cfg.cutoffs) {
                    const std::size_t cutoff =
                        mode == ExperimentMode::Quantum1Superposition ? superposition_cutoff(n) : n;
                    nlohmann::json j = io::spectrum_json(solve_half_line(spec, eta_value, cutoff));
                    j["mode"] = to_string(mode);
                    j["N"] = n;
                    j["eta"] = eta_value;
                    spectra.push_back(std::move(j));
                }
            }
            std::cout << nlohmann::json{{"spectra", std::move(spectra)}}.dump(2) << '\n';
            return kExitOk;
        }

        if (*run_cmd) {
            const auto results = run_experiments(cfg);
            int code = kExitOk;
            for (const auto& r : results) {
                if (!r.ok()) {
                    print_error_json(r.error->kind, r.error->message,
                                     {{"mode", to_string(r.mode)}, {"N", r.n}});
                    code = kExitNumerical;
                }
            }
            return code;
        }

        if (*reproduce_cmd) {
            const ComparisonReport report = reproduce_paper(cfg);
            std::ifstream text(cfg.out_dir / "report.txt");
            std::cout << text.rdbuf();
            return report.ordering_one_holds() && report.ordering_two_holds() ? kExitOk : kExitFailure;
        }
    } catch (const BadArgument& e) {
        print_error_json("BadArgument", e.what());
        return kExitBadArgs;
    } catch (const NumericalError& e) {
        print_error_json(e.kind(), e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        print_error_json("Error", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}
