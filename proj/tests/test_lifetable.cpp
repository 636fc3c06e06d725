#include <numeric>
#include <random>

#include "doctest.h"
#include "lifemodes/errors.hpp"
#include "lifemodes/halfline.hpp"
#include "lifemodes/lifetable.hpp"
#include "test_support.hpp"

using namespace lifemodes;
using lifemodes::testing::random_substochastic;

namespace {

ComplexMatrix scalar(double x) {
    RMatrix m(1, 1);
    m << x;
    return ComplexMatrix::from_real(m);
}

RVector unit(Eigen::Index dim, Eigen::Index at) {
    RVector v = RVector::Zero(dim);
    v(at) = 1.0;
    return v;
}

std::vector<LifeTable> default_tables(ModeSpec mode, std::size_t n) {
    const LatticeParams params = LatticeParams::make(mode, 0.1, 1);
    const TransitionMatrix p = basis_transition_matrix(solve_half_line(mode, params.eta, n), mode, params);
    return life_tables(reduce(p, {BasisState{1}}));
}

} // namespace

TEST_CASE("reduce drops death rows and columns") {
    TransitionMatrix id = deterministic_mode_matrix({0, 1});
    const ReducedMatrix r = reduce(id, {BasisState{2}});
    CHECK(r.t.dim() == 1);
    CHECK(r.t(0, 0) == Complex(1.0, 0.0));
    CHECK(r.alive.size() == 1);
    CHECK(r.alive[0] == StateLabel{BasisState{1}});

    const ReducedMatrix e = reduce(ephemeral_mode_matrix({1.0 / 3, 1.0 / 3, 1.0 / 3}), {BasisState{1}});
    CHECK(e.t.dim() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) CHECK(e.t(i, j).real() == doctest::Approx(1.0 / 3));
    }

    const LatticeParams params = LatticeParams::make(ModeSpec::quantum(), 0.1, 1);
    const TransitionMatrix basis =
        basis_transition_matrix(solve_half_line(ModeSpec::quantum(), params.eta, 9), ModeSpec::quantum(), params);
    CHECK(reduce(basis, {BasisState{1}}).t.dim() == 8);

    CHECK_THROWS_AS(reduce(id, {BasisState{1}, BasisState{2}}), EmptyAlive);
    CHECK_THROWS_AS(reduce(id, {BasisState{3}}), DomainError);
}

TEST_CASE("survival curve small cases") {
    const std::vector<double> dead = survival_curve(scalar(0.0), unit(1, 0), 4);
    CHECK(dead == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    const std::vector<double> half = survival_curve(scalar(0.5), unit(1, 0), 20);
    for (std::size_t s = 0; s < half.size(); ++s) CHECK(half[s] == std::pow(0.5, double(s)));
}

TEST_CASE("life expectancy small cases") {
    CHECK(life_expectancy(scalar(0.5), unit(1, 0)) == doctest::Approx(2.0).epsilon(1e-14));
    const ComplexMatrix zero = ComplexMatrix::from_real(RMatrix::Zero(3, 3));
    CHECK(life_expectancy(zero, unit(3, 1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(life_expectancy(scalar(1.0), unit(1, 0)), ImmortalChain);
    CHECK_THROWS_AS(life_expectancy(ComplexMatrix::identity(2), unit(2, 0)), ImmortalChain);
}

TEST_CASE("expectancy equals the summed survival curve") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 1 + static_cast<std::size_t>(trial % 10);
        const ComplexMatrix t = ComplexMatrix::from_real(random_substochastic(rng, dim, 0.2, 0.95));
        const RVector v = unit(static_cast<Eigen::Index>(dim), 0);
        const std::vector<double> q = survival_curve(t, v, 2000);
        REQUIRE(q.back() < 1e-10);
        for (std::size_t s = 1; s < q.size(); ++s) CHECK(q[s] <= q[s - 1] * (1.0 + 1e-15));
        const double sum = std::accumulate(q.begin(), q.end(), 0.0);
        CHECK(std::abs(life_expectancy(t, v) - sum) <= 1e-6 * sum);
    }
}

TEST_CASE("shrinking T shortens life") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const RMatrix t = random_substochastic(rng, 6);
        const RVector v = unit(6, trial % 6);
        double prev = life_expectancy(ComplexMatrix::from_real(t), v);
        for (double lambda : {0.9, 0.7, 0.5, 0.2}) {
            const double cur = life_expectancy(ComplexMatrix::from_real(lambda * t), v);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("life tables carry the age distribution") {
    const ReducedMatrix r = reduce(ephemeral_mode_matrix({0.5, 0.25, 0.25}), {BasisState{1}});
    const std::vector<LifeTable> tables = life_tables(r);
    REQUIRE(tables.size() == 2);
    for (const LifeTable& lt : tables) {
        CHECK(lt.survival.front() == 1.0);
        CHECK(lt.expectancy == doctest::Approx(2.0));
        const double mass = std::accumulate(lt.age_dist.begin(), lt.age_dist.end(), 0.0);
        CHECK(mass >= 1.0 - 1e-8);
        CHECK(mass <= 1.0 + 1e-12);
        for (double p : lt.age_dist) CHECK(p >= 0.0);
    }
    CHECK(tables[1].initial_state == StateLabel{BasisState{3}});

    LifeTableOptions short_run;
    short_run.horizon = 3;
    const std::vector<LifeTable> cut = life_tables(r, short_run);
    CHECK(cut[0].survival.size() == 3);
    CHECK(cut[0].survival[2] == doctest::Approx(0.25));
}

TEST_CASE("parallel and serial life tables agree exactly") {
    std::mt19937_64 rng(13);
    TransitionMatrix p = ephemeral_mode_matrix(std::vector<double>(12, 1.0 / 12));
    p.p = RMatrix::Zero(12, 12);
    const RMatrix t = random_substochastic(rng, 11);
    p.p.bottomRightCorner(11, 11) = t;
    p.p.row(0).tail(11) = (1.0 - t.colwise().sum().array()).matrix();
    p.p(0, 0) = 1.0;
    const ReducedMatrix r = reduce(p, {BasisState{1}});
    const auto a = life_tables(r);
    const auto b = serial::life_tables(r);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].expectancy == b[i].expectancy);
        CHECK(a[i].survival == b[i].survival);
    }
}

TEST_CASE("frozen life expectancies at N = 5") {
    // reference values from an independent LAPACK-based evaluation
    const double quantum[] = {6.081859863955181, 8.532896946259992, 9.621841983795944, 10.162088027594272};
    const double real[] = {1.2239839426982257, 1.529875520012373, 1.8363743429402135, 2.091156809768321};
    const auto q = default_tables(ModeSpec::quantum(), 5);
    const auto r = default_tables(ModeSpec::real(), 5);
    REQUIRE(q.size() == 4);
    REQUIRE(r.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(q[i].expectancy == doctest::Approx(quantum[i]).epsilon(1e-8));
        CHECK(r[i].expectancy == doctest::Approx(real[i]).epsilon(1e-8));
    }
}
