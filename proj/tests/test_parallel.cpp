#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "lifemodes/parallel.hpp"

using namespace lifemodes;

TEST_CASE("simpson is exact for cubics") {
    const ScalarFn cubic = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    CHECK(simpson(cubic, 0.0, 2.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(serial::simpson(cubic, 0.0, 2.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(simpson(cubic, 0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(serial::simpson(cubic, 0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("parallel and serial simpson agree") {
    const ScalarFn gauss = [](double x) { return std::exp(-x * x); };
    for (std::size_t n : {2u, 100u, 4096u, 4098u, 100000u, 250002u}) {
        const double p = simpson(gauss, -8.0, 8.0, n);
        const double s = serial::simpson(gauss, -8.0, 8.0, n);
        CHECK(std::abs(p - s) <= 1e-12 * std::abs(s));
    }
    CHECK(simpson(gauss, -8.0, 8.0, 100000) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("parallel simpson is reproducible") {
    const ScalarFn f = [](double x) { return std::sin(3.0 * x) * std::exp(-0.1 * x); };
    const double a = simpson(f, 0.0, 30.0, 200000);
    const double b = simpson(f, 0.0, 30.0, 200000);
    CHECK(a == b);
}

TEST_CASE("grid sums agree with the serial reference and with closed forms") {
    const FieldFn chain = [](std::span<const double> phi) {
        double e = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            e -= 1.1 * phi[i] * phi[i];
            if (i + 1 < phi.size()) e += phi[i] * phi[i + 1];
        }
        return std::exp(e);
    };
    const double exact[] = {1.689968438002694, 3.2063745754046598, 6.300852195304031};
    for (std::size_t dims = 1; dims <= 3; ++dims) {
        const double p = simpson_grid(chain, dims, 9.0, 120);
        const double s = serial::simpson_grid(chain, dims, 9.0, 120);
        CHECK(std::abs(p - s) <= 1e-12 * s);
        CHECK(p == doctest::Approx(exact[dims - 1]).epsilon(1e-8));
    }
    CHECK_THROWS_AS(simpson_grid(chain, 0, 1.0, 4), std::invalid_argument);
    CHECK(kernel_threads() >= 1);
}
