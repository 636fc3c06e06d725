#pragma once

// Data-parallel quadrature kernels. The OpenMP versions split work into
// fixed-size blocks whose partial sums are combined in block order, so the
// result does not depend on the number of threads. The serial:: versions are
// straight loops kept as references for tests and benchmarks.

#include <cstddef>
#include <functional>
#include <span>

namespace lifemodes {

using ScalarFn = std::function<double(double)>;
/// Integrand over a point of the field grid, one coordinate per vertex.
using FieldFn = std::function<double(std::span<const double>)>;

inline constexpr std::size_t kReductionBlock = 4096;

/// Composite Simpson rule on [a, b] with `intervals` (even) subintervals.
double simpson(const ScalarFn& f, double a, double b, std::size_t intervals);

/// Tensor-product composite Simpson rule over [-half_width, half_width]^dims.
double simpson_grid(const FieldFn& f, std::size_t dims, double half_width, std::size_t intervals);

/// Number of OpenMP threads the kernels will use (1 without OpenMP).
int kernel_threads();

namespace serial {
double simpson(const ScalarFn& f, double a, double b, std::size_t intervals);
double simpson_grid(const FieldFn& f, std::size_t dims, double half_width, std::size_t intervals);
} // namespace serial

} // namespace lifemodes
