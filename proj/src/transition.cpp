#include "lifemodes/transition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lifemodes/errors.hpp"

namespace lifemodes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<StateLabel> basis_states(std::size_t count) {
    std::vector<StateLabel> states;
    states.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) states.emplace_back(BasisState{static_cast<int>(k)});
    return states;
}

// Column normalization of |A|^2.
RMatrix normalize_columns(const Eigen::MatrixXcd& amplitudes) {
    RMatrix p = amplitudes.cwiseAbs2();
    for (Eigen::Index col = 0; col < p.cols(); ++col) {
        const double total = p.col(col).sum();
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw ZeroColumn("transition column " + std::to_string(col + 1) +
                             " has no finite weight; cutoff too small?");
        }
        p.col(col) /= total;
    }
    return p;
}

} // namespace

StateLabel make_superposed(int k1, int k2, int sign) {
    if (k1 < 1 || k2 <= k1) throw DomainError("superposed state needs 1 <= k1 < k2");
    if (sign != 1 && sign != -1) throw DomainError("superposed state sign must be +1 or -1");
    return SuperposedState{k1, k2, sign};
}

std::string label(const StateLabel& state) {
    return std::visit(overloaded{
                          [](const BasisState& b) { return "n=" + std::to_string(2 * b.k - 2); },
                          [](const SuperposedState& s) {
                              return std::to_string(s.k1) + (s.sign > 0 ? "+" : "-") +
                                     std::to_string(s.k2);
                          },
                      },
                      state);
}

std::vector<std::pair<int, double>> components(const StateLabel& state) {
    return std::visit(overloaded{
                          [](const BasisState& b) {
                              return std::vector<std::pair<int, double>>{{b.k, 1.0}};
                          },
                          [](const SuperposedState& s) {
                              const double c = 1.0 / std::numbers::sqrt2;
                              return std::vector<std::pair<int, double>>{{s.k1, c},
                                                                         {s.k2, s.sign * c}};
                          },
                      },
                      state);
}

int matched_index(const StateLabel& state) {
    return std::visit(overloaded{
                          [](const BasisState& b) { return b.k; },
                          [](const SuperposedState& s) { return s.k1; },
                      },
                      state);
}

std::optional<std::size_t> TransitionMatrix::index_of(const StateLabel& state) const {
    const auto it = std::find(states.begin(), states.end(), state);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

void check_column_stochastic(const TransitionMatrix& t) {
    if (static_cast<std::size_t>(t.p.rows()) != t.size() ||
        static_cast<std::size_t>(t.p.cols()) != t.size()) {
        throw std::logic_error("transition matrix shape does not match its state list");
    }
    if (!t.p.allFinite()) throw std::logic_error("transition matrix has non-finite entries");
    if (t.p.minCoeff() < 0.0 || t.p.maxCoeff() > 1.0) {
        throw std::logic_error("transition matrix entry outside [0, 1]");
    }
    for (Eigen::Index col = 0; col < t.p.cols(); ++col) {
        if (std::abs(t.p.col(col).sum() - 1.0) > kColumnSumTol) {
            throw std::logic_error("transition matrix column " + std::to_string(col + 1) +
                                   " does not sum to 1");
        }
    }
}

Complex basis_amplitude(const HalfLineVector& u, ModeSpec mode, double eta, int m, int n) {
    const Complex um = u.at_particle_number(m);
    const Complex un = u.at_particle_number(n);
    return un * edge_amplitude(mode, n) * vertex_amplitude(mode, eta, m + n) *
           edge_amplitude(mode, m) * um;
}

TransitionMatrix basis_transition_matrix(const HalfLineVector& u, ModeSpec mode,
                                         const LatticeParams& params) {
    const auto levels = static_cast<Eigen::Index>(u.cutoff);
    // The common factor E_m U_m of each column cancels in the normalization.
    Eigen::MatrixXcd weights(levels, levels);
    for (Eigen::Index m = 0; m < levels; ++m) {
        for (Eigen::Index n = 0; n < levels; ++n) {
            weights(n, m) = u.u(n) * edge_amplitude(mode, static_cast<int>(2 * n)) *
                            vertex_amplitude(mode, params.eta, static_cast<int>(2 * (m + n)));
        }
    }
    TransitionMatrix t{basis_states(u.cutoff), normalize_columns(weights), mode, params};
    check_column_stochastic(t);
    return t;
}

TransitionMatrix superposition_transition_matrix(const HalfLineVector& u_ext, ModeSpec mode,
                                                 const LatticeParams& params, std::size_t n) {
    if (n < 3) throw DomainError("superposition states need N >= 3");
    if (u_ext.cutoff < superposition_cutoff(n)) {
        throw RangeError("superposition states need u at cutoff " +
                         std::to_string(superposition_cutoff(n)) + ", got " +
                         std::to_string(u_ext.cutoff));
    }
    std::vector<StateLabel> states{BasisState{1}};
    const int big_n = static_cast<int>(n);
    for (int k1 = 2; k1 <= big_n - 1; ++k1) {
        states.push_back(make_superposed(k1, k1 + big_n - 1, +1));
        states.push_back(make_superposed(k1, k1 + big_n - 1, -1));
    }

    const auto size = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXcd amplitudes(size, size);
    for (Eigen::Index prev = 0; prev < size; ++prev) {
        const auto from = components(states[prev]);
        for (Eigen::Index next = 0; next < size; ++next) {
            Complex sum{0.0, 0.0};
            for (const auto& [a, ca] : from) {
                for (const auto& [b, cb] : components(states[next])) {
                    sum += ca * cb * basis_amplitude(u_ext, mode, params.eta, 2 * a - 2, 2 * b - 2);
                }
            }
            amplitudes(next, prev) = sum;
        }
    }
    TransitionMatrix t{std::move(states), normalize_columns(amplitudes), mode, params};
    check_column_stochastic(t);
    return t;
}

TransitionMatrix deterministic_mode_matrix(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    if (n == 0) throw DomainError("deterministic_mode_matrix: empty permutation");
    std::vector<bool> seen(n, false);
    for (std::size_t target : perm) {
        if (target >= n || seen[target]) throw DomainError("deterministic_mode_matrix: not a permutation");
        seen[target] = true;
    }
    RMatrix p = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
        p(static_cast<Eigen::Index>(perm[c]), static_cast<Eigen::Index>(c)) = 1.0;
    }
    return {basis_states(n), std::move(p), std::nullopt, std::nullopt};
}

TransitionMatrix ephemeral_mode_matrix(const std::vector<double>& dist) {
    if (dist.empty()) throw DomainError("ephemeral_mode_matrix: empty distribution");
    double total = 0.0;
    for (double x : dist) {
        if (!(x >= 0.0)) throw DomainError("ephemeral_mode_matrix: negative probability");
        total += x;
    }
    if (std::abs(total - 1.0) > kColumnSumTol) {
        throw DomainError("ephemeral_mode_matrix: distribution must sum to 1");
    }
    const auto n = static_cast<Eigen::Index>(dist.size());
    const Eigen::Map<const RVector> column(dist.data(), n);
    RMatrix p = column.replicate(1, n);
    return {basis_states(dist.size()), std::move(p), std::nullopt, std::nullopt};
}

} // namespace lifemodes
