#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lifemodes/amplitudes.hpp"
#include "lifemodes/errors.hpp"

using namespace lifemodes;

namespace {
const ModeSpec kQ = ModeSpec::quantum();
const ModeSpec kR = ModeSpec::real();
} // namespace

TEST_CASE("eta for the two modes") {
    CHECK(eta(kQ, 0.1, 1) == -0.9);
    CHECK(eta(kR, 0.1, 1) == 1.1);
    CHECK(eta(kQ, 0.0, 2) == 0.0);
    CHECK_THROWS_AS(eta(kQ, -0.1, 1), DomainError);
    CHECK_THROWS_AS(eta(kR, 0.1, 0), DomainError);

    const LatticeParams p = LatticeParams::make(kR, 0.1, 1);
    CHECK(p.eta == 1.1);
    CHECK(p.dimension == 1);
}

TEST_CASE("half-integer gamma") {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    CHECK(gamma_half_integer(0) == doctest::Approx(sqrt_pi).epsilon(1e-15));
    CHECK(gamma_half_integer(1) == 1.0);
    CHECK(gamma_half_integer(2) == doctest::Approx(sqrt_pi / 2).epsilon(1e-15));
    for (int n = 0; n <= 60; ++n) {
        CHECK(gamma_half_integer(n) == doctest::Approx(std::tgamma((1.0 + n) / 2.0)).epsilon(1e-13));
    }
}

TEST_CASE("edge amplitudes") {
    CHECK(edge_amplitude(kQ, 0) == Complex(1.0, 0.0));
    CHECK(std::abs(edge_amplitude(kQ, 2) - Complex(-0.5, 0.0)) < 1e-16);
    CHECK(std::abs(edge_amplitude(kQ, 1) - Complex(0.0, -1.0)) < 1e-16);
    CHECK(edge_amplitude(kR, 3).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    // log-space branch stays finite and matches the tiny value 1/160!
    const double log_fact = std::lgamma(161.0);
    CHECK(std::log(std::abs(edge_amplitude(kR, 160))) == doctest::Approx(-log_fact).epsilon(1e-12));
    CHECK_THROWS_AS(edge_amplitude(kR, -1), DomainError);
}

TEST_CASE("vertex amplitude closed forms") {
    CHECK(vertex_amplitude(kR, 1.1, 0).real() ==
          doctest::Approx(std::sqrt(std::numbers::pi / 1.1)).epsilon(1e-14));
    CHECK(vertex_amplitude(kR, 1.1, 0).real() == doctest::Approx(1.689968438002694).epsilon(1e-14));
    CHECK(vertex_amplitude(kR, 1.1, 2).real() ==
          doctest::Approx(0.5 * std::sqrt(std::numbers::pi) * std::pow(1.1, -1.5)).epsilon(1e-14));

    // frozen from an independent evaluation of the principal-branch power
    const Complex v0 = vertex_amplitude(kQ, -0.9, 0);
    CHECK(std::abs(v0 - Complex(1.3211090992020038, 1.3211090992020036)) < 1e-13);
    const Complex v6 = vertex_amplitude(kQ, -0.9, 6);
    CHECK(std::abs(v6 - Complex(3.3979143497993904, -3.397914349799392)) < 1e-12);
    // the same value via std::pow on the principal branch
    const Complex via_pow = std::pow(Complex(0.0, -0.9), -0.5) * std::sqrt(std::numbers::pi);
    CHECK(std::abs(v0 - via_pow) < 1e-13);
}

TEST_CASE("quantum vertex modulus is branch independent") {
    for (double e : {-2.5, -0.9, -0.1, 0.3, 1.1, 4.0}) {
        for (int n = 0; n <= 40; n += 2) {
            const double expected = std::pow(std::abs(e), -(1.0 + n) / 2.0) * gamma_half_integer(n);
            CHECK(std::abs(vertex_amplitude(kQ, e, n)) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("real vertex amplitudes are positive and decreasing in eta") {
    for (int n = 0; n <= 30; ++n) {
        double prev = INFINITY;
        for (double e = 0.2; e < 5.0; e += 0.3) {
            const Complex v = vertex_amplitude(kR, e, n);
            CHECK(v.imag() == 0.0);
            CHECK(v.real() > 0.0);
            CHECK(v.real() < prev);
            prev = v.real();
        }
    }
}

TEST_CASE("vertex amplitude domain errors") {
    CHECK_THROWS_AS(vertex_amplitude(kR, 0.0, 0), DomainError);
    CHECK_THROWS_AS(vertex_amplitude(kR, -1.0, 2), DomainError);
    CHECK_THROWS_AS(vertex_amplitude(kQ, 0.0, 2), DomainError);
    CHECK_THROWS_AS(vertex_amplitude(kQ, 1.0, -2), DomainError);
    CHECK_NOTHROW(vertex_amplitude(kQ, 1.0, 2));
}
