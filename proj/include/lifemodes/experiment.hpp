#pragma once

// Experiment runner behind the CLI: computes the transition matrices and life
// tables per (mode, N), writes them to disk, and checks the mode orderings.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lifemodes/halfline.hpp"
#include "lifemodes/lifetable.hpp"
#include "lifemodes/oracle.hpp"
#include "lifemodes/transition.hpp"

namespace lifemodes {

enum class ExperimentMode { Quantum1, RealQuantum1, Quantum1Superposition };

std::string_view to_string(ExperimentMode mode);
std::optional<ExperimentMode> parse_experiment_mode(std::string_view text);
ModeSpec amplitude_mode(ExperimentMode mode);

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::vector<ExperimentMode> modes{ExperimentMode::Quantum1};
    std::vector<std::size_t> cutoffs{5, 9, 13};
    double half_bare_mass_sq = 0.1;
    int dimension = 1;
    std::size_t horizon = 10000;
    std::filesystem::path out_dir = "out";
    OutputFormat format = OutputFormat::Csv;
    bool plot = false;
    int death_index = 1; // Basis(k) used as the absorbing state
};

struct ErrorInfo {
    std::string kind;
    std::string message;
};

struct ExperimentResult {
    ExperimentMode mode = ExperimentMode::Quantum1;
    std::size_t n = 0;
    LatticeParams params;
    std::optional<HalfLineVector> half_line; // cutoff N, or 2N - 2 for superpositions
    std::optional<TransitionMatrix> transition;
    std::vector<LifeTable> life;
    std::optional<ErrorInfo> error;

    bool ok() const noexcept { return !error.has_value(); }
    /// Mean expectancy over initial states whose matched index lies in
    /// [2, N - 1]; the set shared by all three modes.
    double matched_mean_expectancy() const;
};

/// Pure computation; numerical failures are captured in result.error.
ExperimentResult compute_experiment(ExperimentMode mode, std::size_t n, const ExperimentConfig& cfg);

/// Writes the per-experiment artifacts into cfg.out_dir.
void write_experiment(const ExperimentResult& result, const ExperimentConfig& cfg);

/// Every (mode, N) pair of cfg, computed in parallel; results ordered by
/// (mode, N) as listed in cfg. Also writes summary.json.
std::vector<ExperimentResult> run_experiments(const ExperimentConfig& cfg);

struct OrderingRow {
    std::size_t n = 0;
    bool quantum_beats_real = false;         // every alive initial index
    bool quantum_beats_superposition = false;
    bool superposition_margin_smaller = false;
    double mean_quantum = 0.0;
    double mean_real = 0.0;
    std::optional<double> mean_superposition; // empty when the superposition run failed
    std::string note;
};

struct ComparisonReport {
    std::vector<OrderingRow> rows;
    bool ordering_one_holds() const;
    bool ordering_two_holds() const;
};

ComparisonReport compare_modes(const std::vector<ExperimentResult>& results);

/// All three modes at cfg.cutoffs, with plots; writes report.json and
/// report.txt next to the per-experiment files.
ComparisonReport reproduce_paper(ExperimentConfig cfg);

/// Human-readable verify report, one line per check.
std::string format_checks(const std::vector<oracle::OracleCheck>& checks);

} // namespace lifemodes
