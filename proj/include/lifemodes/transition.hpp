#pragma once

// Conditional probabilities p(next | prev) between sequential candidate
// experiences localized on adjacent edges. Matrices are column-stochastic:
// column = previous state, row = next state.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lifemodes/amplitudes.hpp"
#include "lifemodes/halfline.hpp"
#include "lifemodes/linalg.hpp"

namespace lifemodes {

/// Level k (1-based) of the even ladder, particle number 2k - 2.
struct BasisState {
    int k = 1;
    friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// (|k1> + sign |k2>) / sqrt(2) with k1 < k2.
struct SuperposedState {
    int k1 = 1;
    int k2 = 2;
    int sign = 1;
    friend bool operator==(const SuperposedState&, const SuperposedState&) = default;
};

using StateLabel = std::variant<BasisState, SuperposedState>;

StateLabel make_superposed(int k1, int k2, int sign);

/// "n=0", "n=2", ... for basis states and "2+6", "2-6" for superpositions.
std::string label(const StateLabel& state);

/// (1-based level, coefficient) pairs of the state in the level basis.
std::vector<std::pair<int, double>> components(const StateLabel& state);

/// Level index used to match a state against basis states (k, or k1).
int matched_index(const StateLabel& state);

struct TransitionMatrix {
    std::vector<StateLabel> states;
    RMatrix p; // p(row = next, col = prev)
    std::optional<ModeSpec> mode;
    std::optional<LatticeParams> params;

    std::size_t size() const noexcept { return states.size(); }
    std::optional<std::size_t> index_of(const StateLabel& state) const;
};

inline constexpr double kColumnSumTol = 1e-10;

/// Throws std::logic_error if entries leave [0,1], are non-finite, or a column
/// sum misses 1 by more than kColumnSumTol.
void check_column_stochastic(const TransitionMatrix& t);

/// A(n|m) = U_n E_n V_{m+n} E_m U_m for even particle numbers m, n.
Complex basis_amplitude(const HalfLineVector& u, ModeSpec mode, double eta, int m, int n);

/// p(n|m) over the u.cutoff retained levels. Throws ZeroColumn if a column
/// has no weight.
TransitionMatrix basis_transition_matrix(const HalfLineVector& u, ModeSpec mode,
                                         const LatticeParams& params);

/// Cutoff that u must be built with for superposition_transition_matrix.
constexpr std::size_t superposition_cutoff(std::size_t n) { return 2 * n - 2; }

/// States Basis(1) followed by (k1 +- k1+N-1) for k1 = 2..N-1. Amplitudes are
/// expanded bilinearly in the basis amplitudes and normalized per column over
/// this state set.
TransitionMatrix superposition_transition_matrix(const HalfLineVector& u_ext, ModeSpec mode,
                                                 const LatticeParams& params, std::size_t n);

/// p(perm[c] | c) = 1.
TransitionMatrix deterministic_mode_matrix(const std::vector<std::size_t>& perm);

/// p(d | c) = dist[d] for every c.
TransitionMatrix ephemeral_mode_matrix(const std::vector<double>& dist);

} // namespace lifemodes
