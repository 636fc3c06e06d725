#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lifemodes/errors.hpp"
#include "lifemodes/halfline.hpp"
#include "lifemodes/oracle.hpp"
#include "lifemodes/transition.hpp"

using namespace lifemodes;

namespace {
const ModeSpec kQ = ModeSpec::quantum();
const ModeSpec kR = ModeSpec::real();
// exact Gaussian chain partition functions at eta = 1.1 and their eta = 1.5 ratios
const double kZ11[] = {1.689968438002694, 3.2063745754046598, 6.300852195304031};
const double kRatio[] = {0.8563488385776754, 0.692820323027551, 0.5454574314497967};
} // namespace

TEST_CASE("quadrature reproduces closed-form vertex amplitudes") {
    CHECK(oracle::quad_vertex_amplitude(kR, 1.1, 0).real() == doctest::Approx(1.689968438002694).epsilon(1e-9));
    CHECK(oracle::quad_vertex_amplitude(kR, 1.1, 4).real() ==
          doctest::Approx(0.75 * std::sqrt(std::numbers::pi) * std::pow(1.1, -2.5)).epsilon(1e-9));
    for (double e : {-0.9, 0.7}) {
        for (int n : {0, 2, 7, 24}) {
            const Complex closed = vertex_amplitude(kQ, e, n);
            const Complex quad = oracle::quad_vertex_amplitude(kQ, e, n);
            CHECK(std::abs(quad - closed) <= 1e-6 * std::abs(closed));
        }
    }
    CHECK_THROWS_AS(oracle::quad_vertex_amplitude(kR, -1.0, 0), DomainError);
    CHECK_THROWS_AS(oracle::quad_vertex_amplitude(kR, 1.0, 0, 1002), DomainError);
    // far too coarse a grid fails the step-doubling check
    CHECK_THROWS_AS(oracle::quad_vertex_amplitude(kR, 1.1, 24, 8), ToleranceNotMet);
}

TEST_CASE("quadrature with a potential stays below the free value") {
    const oracle::PotentialFn quartic = [](double r) { return 0.1 * r * r * r * r; };
    const double free = oracle::quad_vertex_amplitude(kR, 1.1, 2).real();
    const double with = oracle::quad_vertex_amplitude(kR, 1.1, 2, oracle::kDefaultQuadSteps, quartic).real();
    CHECK(with > 0.0);
    CHECK(with < free);
    CHECK_THROWS_AS(oracle::quad_vertex_amplitude(kQ, -0.9, 2, oracle::kDefaultQuadSteps, quartic), DomainError);
}

TEST_CASE("power iteration small cases") {
    Eigen::MatrixXcd d(2, 2);
    d << 2.0, 0.0, 0.0, 1.0;
    const CVector v = oracle::power_iteration_u(ComplexMatrix(d), 500, 1e-12);
    CHECK(std::abs(v(0) - Complex(1.0, 0.0)) < 1e-10);
    CHECK(std::abs(v(1)) < 1e-10);
    CHECK_THROWS_AS(oracle::power_iteration_u(ComplexMatrix::identity(3), 500, 1e-12), NoConvergence);
}

TEST_CASE("power iteration matches solve_u") {
    const ComplexMatrix m = build_M(kQ, -0.9, 5);
    const HalfLineVector hl = solve_u(m);
    const CVector p = oracle::power_iteration_u(m.scaled(1.0 / hl.renorm_eigenvalue), 500, 1e-12);
    CHECK(phase_distance(p, hl.u) < 1e-6);
}

TEST_CASE("finite chains") {
    // no vertices on either side: the bare edge-vertex-edge product
    const Complex bare = oracle::finite_chain_amplitude(kQ, -0.9, 0, 4, 2, 4);
    const Complex expected = edge_amplitude(kQ, 4) * vertex_amplitude(kQ, -0.9, 6) * edge_amplitude(kQ, 2);
    CHECK(std::abs(bare - expected) < 1e-14 * std::abs(expected));
    CHECK_THROWS_AS(oracle::finite_chain_amplitude(kQ, -0.9, 1, 4, 1, 0), RangeError);
    CHECK_THROWS_AS(oracle::finite_chain_amplitude(kQ, -0.9, 1, 4, 8, 0), RangeError);

    const LatticeParams params = LatticeParams::make(kR, 0.1, 1);
    const RMatrix fixed = basis_transition_matrix(solve_half_line(kR, params.eta, 3), kR, params).p;
    const RMatrix chain = oracle::finite_chain_probabilities(kR, params.eta, 30, 3);
    CHECK((fixed - chain).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("finite-chain growth rate is the square of the dominant eigenvalue") {
    // A_L carries the half-line factor on both sides, so A(L+1)/A(L) -> lambda^2.
    const HalfLineVector hl = solve_half_line(kR, 1.1, 5);
    const Complex a60 = oracle::finite_chain_amplitude(kR, 1.1, 60, 5, 0, 0);
    const Complex a61 = oracle::finite_chain_amplitude(kR, 1.1, 61, 5, 0, 0);
    const Complex lambda2 = hl.renorm_eigenvalue * hl.renorm_eigenvalue;
    CHECK(std::abs(a61 / a60 - lambda2) < 1e-6 * std::abs(lambda2));
}

TEST_CASE("field integral and particle sum") {
    const oracle::PotentialFn none;
    CHECK(oracle::direct_field_Z(1.1, none, 1) == doctest::Approx(std::sqrt(std::numbers::pi / 1.1)).epsilon(1e-10));
    for (std::size_t v = 1; v <= 3; ++v) {
        CHECK(oracle::particle_sum_Z(1.1, none, v) == doctest::Approx(kZ11[v - 1]).epsilon(1e-7));
        const double direct = oracle::direct_field_Z(1.5, none, v) / oracle::direct_field_Z(1.1, none, v);
        const double particle = oracle::particle_sum_Z(1.5, none, v) / oracle::particle_sum_Z(1.1, none, v);
        CHECK(direct == doctest::Approx(kRatio[v - 1]).epsilon(1e-8));
        CHECK(particle == doctest::Approx(kRatio[v - 1]).epsilon(1e-7));
    }
    CHECK_THROWS_AS(oracle::direct_field_Z(1.1, none, 5), DomainError);
    CHECK_THROWS_AS(oracle::direct_field_Z(1.1, none, 2, {9.0, 12}), ToleranceNotMet);
    CHECK_THROWS_AS(oracle::particle_sum_Z(-1.0, none, 2), DomainError);
}

TEST_CASE("suite passes and the negative control fails") {
    const auto checks = oracle::run_suite();
    CHECK(checks.size() >= 10);
    for (const auto& c : checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
        CHECK(c.observed <= c.tolerance);
    }
    oracle::SuiteOptions perturbed;
    perturbed.perturb_eta = 1e-3;
    const auto bad = oracle::vertex_amplitude_checks(perturbed);
    bool any_failed = false;
    for (const auto& c : bad) any_failed = any_failed || !c.passed;
    CHECK(any_failed);
}
