#include "lifemodes/lifetable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "lifemodes/errors.hpp"

namespace lifemodes {

namespace {

std::string precise(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

RMatrix real_part(const ComplexMatrix& t) { return t.values().real(); }

LifeTable single_table(const ReducedMatrix& reduced, const RMatrix& t, std::size_t index,
                       const LifeTableOptions& options) {
    RVector v = RVector::Zero(t.rows());
    v(static_cast<Eigen::Index>(index)) = 1.0;

    LifeTable table{reduced.alive[index], {}, {}, life_expectancy(reduced.t, v)};
    // One extra q value so the last p_age is defined.
    std::vector<double> q;
    q.reserve(std::min<std::size_t>(options.horizon + 1, 4096));
    RVector state = v;
    for (std::size_t s = 1; s <= options.horizon + 1; ++s) {
        q.push_back(state.cwiseAbs().sum());
        if (s > options.horizon || q.back() < options.survival_floor) break;
        state = t * state;
    }
    if (q.size() == 1) q.push_back((t * v).cwiseAbs().sum());
    table.survival.assign(q.begin(), q.end() - 1);
    table.age_dist.resize(table.survival.size());
    for (std::size_t s = 0; s < table.survival.size(); ++s) {
        table.age_dist[s] = std::max(0.0, q[s] - q[s + 1]);
    }
    return table;
}

} // namespace

ReducedMatrix reduce(const TransitionMatrix& p, const std::vector<StateLabel>& death_states) {
    std::vector<bool> dead(p.size(), false);
    for (const auto& d : death_states) {
        const auto idx = p.index_of(d);
        if (!idx) throw DomainError("reduce: death state " + label(d) + " not in the state set");
        dead[*idx] = true;
    }
    std::vector<Eigen::Index> keep;
    std::vector<StateLabel> alive;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!dead[i]) {
            keep.push_back(static_cast<Eigen::Index>(i));
            alive.push_back(p.states[i]);
        }
    }
    if (keep.empty()) throw EmptyAlive("reduce: every state is a death state");
    RMatrix t(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t c = 0; c < keep.size(); ++c) {
            t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p.p(keep[r], keep[c]);
        }
    }
    return {std::move(alive), ComplexMatrix::from_real(t)};
}

std::vector<double> survival_curve(const ComplexMatrix& t, const RVector& v, std::size_t horizon) {
    const RMatrix real = real_part(t);
    std::vector<double> q;
    q.reserve(horizon);
    RVector state = v;
    for (std::size_t s = 1; s <= horizon; ++s) {
        q.push_back(state.cwiseAbs().sum());
        if (s < horizon) state = real * state;
    }
    return q;
}

double life_expectancy(const ComplexMatrix& t, const RVector& v) {
    const double radius = spectral_radius(t);
    if (radius > kMaxSpectralRadius) {
        throw ImmortalChain("life_expectancy: spectral radius " + precise(radius) +
                            " leaves no escape to death (limit 1 - 1e-9)");
    }
    const auto n = static_cast<Eigen::Index>(t.dim());
    const ComplexMatrix i_minus_t(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n) - t.values()));
    CVector x;
    try {
        x = solve_linear(i_minus_t, v.cast<Complex>());
    } catch (const SingularMatrix& e) {
        throw ImmortalChain(std::string("life_expectancy: ") + e.what());
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x(i).real();
        if (xi < -1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
            throw ImmortalChain("life_expectancy: negative expected occupation " + precise(xi));
        }
        total += std::max(0.0, xi);
    }
    return total;
}

std::vector<LifeTable> life_tables(const ReducedMatrix& reduced, const LifeTableOptions& options) {
    const RMatrix t = real_part(reduced.t);
    const auto count = static_cast<long>(reduced.alive.size());
    std::vector<std::optional<LifeTable>> slots(reduced.alive.size());
    std::vector<std::string> errors(reduced.alive.size());
    std::vector<char> failed(reduced.alive.size(), 0);

#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        try {
            slots[static_cast<std::size_t>(i)] = single_table(reduced, t, static_cast<std::size_t>(i), options);
        } catch (const ImmortalChain& e) {
            failed[static_cast<std::size_t>(i)] = 1;
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    std::vector<LifeTable> out;
    out.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (failed[i]) throw ImmortalChain(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

namespace serial {

std::vector<LifeTable> life_tables(const ReducedMatrix& reduced, const LifeTableOptions& options) {
    const RMatrix t = real_part(reduced.t);
    std::vector<LifeTable> out;
    out.reserve(reduced.alive.size());
    for (std::size_t i = 0; i < reduced.alive.size(); ++i) {
        out.push_back(single_table(reduced, t, i, options));
    }
    return out;
}

} // namespace serial

} // namespace lifemodes
