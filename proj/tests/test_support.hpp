#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "lifemodes/linalg.hpp"

namespace lifemodes::testing {

/// Entries uniform in the complex unit square [0,1) x [0,1).
inline ComplexMatrix random_complex_matrix(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(unit(rng), unit(rng));
    }
    return ComplexMatrix(m);
}

inline CVector random_complex_vector(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(unit(rng), unit(rng));
    return v;
}

/// Column-substochastic matrix: each column is a random distribution scaled
/// by a survival factor in [min_survival, max_survival].
inline RMatrix random_substochastic(std::mt19937_64& rng, std::size_t dim, double min_survival = 0.2,
                                    double max_survival = 0.98) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> survive(min_survival, max_survival);
    RMatrix t(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
        for (Eigen::Index r = 0; r < t.rows(); ++r) t(r, c) = unit(rng);
        t.col(c) *= survive(rng) / t.col(c).sum();
    }
    return t;
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace lifemodes::testing
