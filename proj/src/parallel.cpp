#include "lifemodes/parallel.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lifemodes {

namespace {

double simpson_weight(std::size_t i, std::size_t intervals) {
    if (i == 0 || i == intervals) return 1.0;
    return i % 2 == 1 ? 4.0 : 2.0;
}

void check_intervals(std::size_t intervals) {
    if (intervals < 2 || intervals % 2 != 0) {
        throw std::invalid_argument("Simpson rule needs an even number (>= 2) of intervals");
    }
}

std::size_t grid_points(std::size_t dims, std::size_t per_axis) {
    std::size_t total = 1;
    for (std::size_t d = 0; d < dims; ++d) total *= per_axis;
    return total;
}

// Decode a flat grid index into per-axis node indices and coordinates;
// returns the product of Simpson weights.
double decode(std::size_t flat, std::size_t dims, std::size_t intervals, double lo, double h,
              std::span<double> coords) {
    double weight = 1.0;
    for (std::size_t d = 0; d < dims; ++d) {
        const std::size_t i = flat % (intervals + 1);
        flat /= intervals + 1;
        coords[d] = lo + h * static_cast<double>(i);
        weight *= simpson_weight(i, intervals);
    }
    return weight;
}

} // namespace

int kernel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double simpson(const ScalarFn& f, double a, double b, std::size_t intervals) {
    check_intervals(intervals);
    const double h = (b - a) / static_cast<double>(intervals);
    const std::size_t points = intervals + 1;
    const std::size_t blocks = (points + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(blocks, 0.0);

#pragma omp parallel for schedule(static)
    for (long blk = 0; blk < static_cast<long>(blocks); ++blk) {
        const std::size_t begin = static_cast<std::size_t>(blk) * kReductionBlock;
        const std::size_t end = std::min(points, begin + kReductionBlock);
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            sum += simpson_weight(i, intervals) * f(a + h * static_cast<double>(i));
        }
        partial[static_cast<std::size_t>(blk)] = sum;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total * h / 3.0;
}

double simpson_grid(const FieldFn& f, std::size_t dims, double half_width, std::size_t intervals) {
    check_intervals(intervals);
    if (dims == 0) throw std::invalid_argument("simpson_grid: dims must be >= 1");
    const double h = 2.0 * half_width / static_cast<double>(intervals);
    const std::size_t points = grid_points(dims, intervals + 1);
    const std::size_t blocks = (points + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(blocks, 0.0);

#pragma omp parallel
    {
        std::vector<double> coords(dims);
#pragma omp for schedule(static)
        for (long blk = 0; blk < static_cast<long>(blocks); ++blk) {
            const std::size_t begin = static_cast<std::size_t>(blk) * kReductionBlock;
            const std::size_t end = std::min(points, begin + kReductionBlock);
            double sum = 0.0;
            for (std::size_t flat = begin; flat < end; ++flat) {
                const double w = decode(flat, dims, intervals, -half_width, h, coords);
                sum += w * f(coords);
            }
            partial[static_cast<std::size_t>(blk)] = sum;
        }
    }
    double total = 0.0;
    for (double s : partial) total += s;
    double scale = 1.0;
    for (std::size_t d = 0; d < dims; ++d) scale *= h / 3.0;
    return total * scale;
}

namespace serial {

double simpson(const ScalarFn& f, double a, double b, std::size_t intervals) {
    check_intervals(intervals);
    const double h = (b - a) / static_cast<double>(intervals);
    double sum = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
        sum += simpson_weight(i, intervals) * f(a + h * static_cast<double>(i));
    }
    return sum * h / 3.0;
}

double simpson_grid(const FieldFn& f, std::size_t dims, double half_width, std::size_t intervals) {
    check_intervals(intervals);
    if (dims == 0) throw std::invalid_argument("simpson_grid: dims must be >= 1");
    const double h = 2.0 * half_width / static_cast<double>(intervals);
    const std::size_t points = grid_points(dims, intervals + 1);
    std::vector<double> coords(dims);
    double sum = 0.0;
    for (std::size_t flat = 0; flat < points; ++flat) {
        const double w = decode(flat, dims, intervals, -half_width, h, coords);
        sum += w * f(coords);
    }
    double scale = 1.0;
    for (std::size_t d = 0; d < dims; ++d) scale *= h / 3.0;
    return sum * scale;
}

} // namespace serial

} // namespace lifemodes
