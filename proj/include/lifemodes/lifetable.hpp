#pragma once

// Absorbing-chain analysis of a transition matrix: drop the death states to get
// the reduced (substochastic) matrix T, then q(s) = ||T^{s-1} v||_1,
// p_age(s) = q(s) - q(s+1) and <s> = ||(I - T)^{-1} v||_1.

#include <cstddef>
#include <vector>

#include "lifemodes/linalg.hpp"
#include "lifemodes/transition.hpp"

namespace lifemodes {

struct ReducedMatrix {
    std::vector<StateLabel> alive;
    ComplexMatrix t; // real-valued
};

struct LifeTable {
    StateLabel initial_state;
    std::vector<double> survival; // q(1), q(2), ...
    std::vector<double> age_dist; // p_age(s) = q(s) - q(s + 1), same length as survival
    double expectancy = 0.0;
};

/// Largest spectral radius accepted by life_expectancy.
inline constexpr double kMaxSpectralRadius = 1.0 - 1e-9;

/// Throws DomainError if a death state is not in P, EmptyAlive if nothing is
/// left alive. Remaining columns are not renormalized.
ReducedMatrix reduce(const TransitionMatrix& p, const std::vector<StateLabel>& death_states);

/// q(1..horizon) by repeated matrix-vector products.
std::vector<double> survival_curve(const ComplexMatrix& t, const RVector& v, std::size_t horizon);

/// Throws ImmortalChain if the spectral radius of T exceeds kMaxSpectralRadius
/// or I - T is singular.
double life_expectancy(const ComplexMatrix& t, const RVector& v);

struct LifeTableOptions {
    std::size_t horizon = 10000;
    /// Stop the survival curve early once q drops below this value.
    double survival_floor = 1e-10;
};

/// One table per alive state, each started from a point mass on that state.
/// Tables are computed in parallel and returned in alive-state order.
std::vector<LifeTable> life_tables(const ReducedMatrix& reduced, const LifeTableOptions& options = {});

namespace serial {
std::vector<LifeTable> life_tables(const ReducedMatrix& reduced, const LifeTableOptions& options = {});
}

} // namespace lifemodes
