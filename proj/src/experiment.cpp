#include "lifemodes/experiment.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "lifemodes/errors.hpp"
#include "lifemodes/io.hpp"

namespace lifemodes {

namespace {

std::string file_prefix(const ExperimentResult& r) {
    return std::string(to_string(r.mode)) + "_N" + std::to_string(r.n);
}

nlohmann::json summary_json(const ExperimentResult& r, const ExperimentConfig& cfg) {
    nlohmann::json j{{"mode", to_string(r.mode)},
                     {"N", r.n},
                     {"cutoff", r.half_line ? r.half_line->cutoff : 0},
                     {"half_bare_mass_sq", r.params.half_bare_mass_sq},
                     {"dimension", r.params.dimension},
                     {"eta", r.params.eta},
                     {"death_state", label(BasisState{cfg.death_index})},
                     {"status", r.ok() ? "ok" : "error"}};
    if (r.half_line) {
        j["lambda_max"] = {{"re", r.half_line->renorm_eigenvalue.real()},
                           {"im", r.half_line->renorm_eigenvalue.imag()}};
    }
    nlohmann::json life = nlohmann::json::array();
    for (const auto& t : r.life) {
        life.push_back({{"state", label(t.initial_state)},
                        {"matched_index", matched_index(t.initial_state)},
                        {"expectancy", t.expectancy}});
    }
    j["life_expectancy"] = std::move(life);
    if (r.ok()) {
        j["matched_mean_expectancy"] = r.matched_mean_expectancy();
    } else {
        j["error"] = {{"kind", r.error->kind}, {"message", r.error->message}};
    }
    return j;
}

const ExperimentResult* find_result(const std::vector<ExperimentResult>& results, ExperimentMode mode,
                                    std::size_t n) {
    for (const auto& r : results) {
        if (r.mode == mode && r.n == n) return &r;
    }
    return nullptr;
}

} // namespace

std::string_view to_string(ExperimentMode mode) {
    switch (mode) {
    case ExperimentMode::Quantum1: return "quantum1";
    case ExperimentMode::RealQuantum1: return "realquantum1";
    case ExperimentMode::Quantum1Superposition: return "quantum1-sp";
    }
    return "unknown";
}

std::optional<ExperimentMode> parse_experiment_mode(std::string_view text) {
    for (auto mode : {ExperimentMode::Quantum1, ExperimentMode::RealQuantum1,
                      ExperimentMode::Quantum1Superposition}) {
        if (text == to_string(mode)) return mode;
    }
    return std::nullopt;
}

ModeSpec amplitude_mode(ExperimentMode mode) {
    return mode == ExperimentMode::RealQuantum1 ? ModeSpec::real() : ModeSpec::quantum();
}

double ExperimentResult::matched_mean_expectancy() const {
    double total = 0.0;
    int count = 0;
    for (const auto& t : life) {
        const int k = matched_index(t.initial_state);
        if (k >= 2 && k <= static_cast<int>(n) - 1) {
            total += t.expectancy;
            ++count;
        }
    }
    return count > 0 ? total / count : 0.0;
}

ExperimentResult compute_experiment(ExperimentMode mode, std::size_t n, const ExperimentConfig& cfg) {
    const ModeSpec spec = amplitude_mode(mode);
    ExperimentResult result;
    result.mode = mode;
    result.n = n;
    try {
        result.params = LatticeParams::make(spec, cfg.half_bare_mass_sq, cfg.dimension);
        const bool superposed = mode == ExperimentMode::Quantum1Superposition;
        result.half_line = solve_half_line(spec, result.params.eta, superposed ? superposition_cutoff(n) : n);
        result.transition = superposed
                                ? superposition_transition_matrix(*result.half_line, spec, result.params, n)
                                : basis_transition_matrix(*result.half_line, spec, result.params);
        const ReducedMatrix reduced = reduce(*result.transition, {BasisState{cfg.death_index}});
        result.life = life_tables(reduced, {cfg.horizon});
    } catch (const NumericalError& e) {
        result.error = ErrorInfo{e.kind(), e.what()};
    }
    return result;
}

void write_experiment(const ExperimentResult& r, const ExperimentConfig& cfg) {
    const auto base = cfg.out_dir / file_prefix(r);
    const auto path = [&](const std::string& suffix) { return base.string() + suffix; };
    if (r.half_line) {
        nlohmann::json spectrum = io::spectrum_json(*r.half_line);
        spectrum["mode"] = to_string(r.mode);
        spectrum["N"] = r.n;
        spectrum["eta"] = r.params.eta;
        io::write_json(path("_spectrum.json"), spectrum);
    }
    if (r.transition) {
        if (cfg.format == OutputFormat::Csv) {
            io::write_text(path("_transition.csv"), io::transition_csv(*r.transition));
        } else {
            io::write_json(path("_transition.json"), io::transition_json(*r.transition));
        }
        if (cfg.plot) {
            const std::string title = "p(next|prev), " + std::string(to_string(r.mode)) +
                                      ", N=" + std::to_string(r.n) + ", eta=" + io::format_number(r.params.eta);
            io::write_text(path("_heatmap.svg"), io::heatmap_svg(*r.transition, title));
        }
    }
    if (!r.life.empty()) {
        if (cfg.format == OutputFormat::Csv) {
            io::write_text(path("_life.csv"), io::life_csv(r.life));
            io::write_text(path("_survival.csv"), io::survival_csv(r.life));
        } else {
            io::write_json(path("_life.json"), io::life_json(r.life));
        }
    }
    io::write_json(path("_summary.json"), summary_json(r, cfg));
}

std::vector<ExperimentResult> run_experiments(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::vector<std::pair<ExperimentMode, std::size_t>> jobs;
    for (auto mode : cfg.modes) {
        for (auto n : cfg.cutoffs) jobs.emplace_back(mode, n);
    }
    std::vector<ExperimentResult> results(jobs.size());
    std::vector<std::string> io_errors(jobs.size());

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(jobs.size()); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        results[idx] = compute_experiment(jobs[idx].first, jobs[idx].second, cfg);
        try {
            write_experiment(results[idx], cfg);
        } catch (const std::exception& e) {
            io_errors[idx] = e.what();
        }
    }
    for (const auto& e : io_errors) {
        if (!e.empty()) throw std::runtime_error(e);
    }

    nlohmann::json experiments = nlohmann::json::array();
    for (const auto& r : results) experiments.push_back(summary_json(r, cfg));
    io::write_json(cfg.out_dir / "summary.json", {{"experiments", std::move(experiments)}});
    return results;
}

bool ComparisonReport::ordering_one_holds() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.quantum_beats_real; });
}

bool ComparisonReport::ordering_two_holds() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) {
        return r.quantum_beats_superposition && r.superposition_margin_smaller;
    });
}

ComparisonReport compare_modes(const std::vector<ExperimentResult>& results) {
    std::vector<std::size_t> cutoffs;
    for (const auto& r : results) {
        if (std::find(cutoffs.begin(), cutoffs.end(), r.n) == cutoffs.end()) cutoffs.push_back(r.n);
    }
    ComparisonReport report;
    for (std::size_t n : cutoffs) {
        OrderingRow row;
        row.n = n;
        const auto* q = find_result(results, ExperimentMode::Quantum1, n);
        const auto* re = find_result(results, ExperimentMode::RealQuantum1, n);
        const auto* sp = find_result(results, ExperimentMode::Quantum1Superposition, n);
        std::ostringstream note;
        if (q && re && q->ok() && re->ok()) {
            row.mean_quantum = q->matched_mean_expectancy();
            row.mean_real = re->matched_mean_expectancy();
            row.quantum_beats_real = !q->life.empty() && q->life.size() == re->life.size();
            for (std::size_t i = 0; i < q->life.size() && i < re->life.size(); ++i) {
                row.quantum_beats_real = row.quantum_beats_real && q->life[i].expectancy > re->life[i].expectancy;
            }
        }
        if (q && sp && re && q->ok() && sp->ok() && re->ok()) {
            row.mean_superposition = sp->matched_mean_expectancy();
            row.quantum_beats_superposition = row.mean_quantum > *row.mean_superposition;
            const double margin_sp = (row.mean_quantum - *row.mean_superposition) / row.mean_quantum;
            const double margin_real = (row.mean_quantum - row.mean_real) / row.mean_quantum;
            row.superposition_margin_smaller = margin_sp < margin_real;
        }
        for (const auto* r : {q, re, sp}) {
            if (r && !r->ok()) note << to_string(r->mode) << ": " << r->error->kind << "; ";
        }
        row.note = note.str();
        report.rows.push_back(std::move(row));
    }
    return report;
}

ComparisonReport reproduce_paper(ExperimentConfig cfg) {
    cfg.modes = {ExperimentMode::Quantum1, ExperimentMode::RealQuantum1, ExperimentMode::Quantum1Superposition};
    cfg.plot = true;
    const auto results = run_experiments(cfg);
    ComparisonReport report = compare_modes(results);

    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream text;
    for (const auto& row : report.rows) {
        rows.push_back({{"N", row.n},
                        {"quantum_beats_real", row.quantum_beats_real},
                        {"quantum_beats_superposition", row.quantum_beats_superposition},
                        {"superposition_margin_smaller", row.superposition_margin_smaller},
                        {"mean_quantum", row.mean_quantum},
                        {"mean_real", row.mean_real},
                        {"mean_superposition", row.mean_superposition ? nlohmann::json(*row.mean_superposition)
                                                                      : nlohmann::json(nullptr)},
                        {"note", row.note}});
        text << "N=" << row.n << ": mean <s> quantum=" << io::format_number(row.mean_quantum)
             << " superposition="
             << (row.mean_superposition ? io::format_number(*row.mean_superposition) : std::string("n/a"))
             << " real=" << io::format_number(row.mean_real) << '\n';
        text << "  quantum > real (every initial state): " << (row.quantum_beats_real ? "yes" : "NO") << '\n';
        text << "  quantum > superposition: " << (row.quantum_beats_superposition ? "yes" : "NO")
             << ", smaller margin than over real: " << (row.superposition_margin_smaller ? "yes" : "NO") << '\n';
        if (row.quantum_beats_real && row.quantum_beats_superposition && row.superposition_margin_smaller) {
            text << "  quantum > superposition > real\n";
        }
        if (!row.note.empty()) text << "  errors: " << row.note << '\n';
    }
    text << "ordering quantum > real: " << (report.ordering_one_holds() ? "holds" : "FAILS") << '\n';
    text << "ordering quantum > superposition (smaller margin): "
         << (report.ordering_two_holds() ? "holds" : "FAILS") << '\n';
    io::write_json(cfg.out_dir / "report.json", {{"rows", std::move(rows)},
                                                 {"quantum_beats_real", report.ordering_one_holds()},
                                                 {"quantum_beats_superposition", report.ordering_two_holds()}});
    io::write_text(cfg.out_dir / "report.txt", text.str());
    return report;
}

std::string format_checks(const std::vector<oracle::OracleCheck>& checks) {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  tolerance=" << io::format_number(c.tolerance)
           << " observed=" << io::format_number(c.observed);
        if (!c.detail.empty()) os << "  (" << c.detail << ')';
        os << '\n';
    }
    return os.str();
}

} // namespace lifemodes
