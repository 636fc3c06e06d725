#include "lifemodes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lifemodes/errors.hpp"

namespace lifemodes {

namespace {

void require_finite(const Eigen::MatrixXcd& m) {
    if (!m.allFinite()) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
}

// Parlett-Reinsch balancing by powers of two. Returns the diagonal D with
// balanced = D^-1 a D; eigenvalues are unchanged and eigenvectors map back
// as v = D w. Powers of two keep the similarity exact in floating point.
RVector balance_in_place(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    RVector d = RVector::Ones(n);
    constexpr double radix = 2.0;
    constexpr double radix_sq = radix * radix;
    for (int sweep = 0; sweep < 200; ++sweep) {
        bool converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix_sq;
            }
            g = r * radix;
            while (c >= g) {
                f /= radix;
                c /= radix_sq;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                d(i) *= f;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
        if (converged) break;
    }
    return d;
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd values) : m_(std::move(values)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw std::invalid_argument("ComplexMatrix: expected a non-empty square matrix");
    }
    require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return ComplexMatrix(Eigen::MatrixXcd::Identity(n, n));
}

ComplexMatrix ComplexMatrix::from_real(const RMatrix& values) {
    return ComplexMatrix(Eigen::MatrixXcd(values.cast<Complex>()));
}

void ComplexMatrix::set(std::size_t row, std::size_t col, Complex value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
    m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = value;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
    return ComplexMatrix(Eigen::MatrixXcd(m_ * factor));
}

bool eigenvalue_precedes(Complex lhs, Complex rhs) {
    const double ml = std::abs(lhs);
    const double mr = std::abs(rhs);
    if (ml != mr) return ml > mr;
    if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
    return lhs.imag() > rhs.imag();
}

CVector fix_phase(CVector v) {
    const double norm = v.norm();
    if (norm == 0.0) return v;
    v /= norm;
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best) {
            best = a;
            pivot = i;
        }
    }
    const Complex phase = std::conj(v(pivot)) / std::abs(v(pivot));
    v *= phase;
    v(pivot) = Complex(std::abs(v(pivot)), 0.0);
    return v;
}

double phase_distance(const CVector& a, const CVector& b) {
    const Complex overlap = b.dot(a); // conj(b) . a
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    return (a - phase * b).norm();
}

EigenResult eigen_decompose(const ComplexMatrix& a) {
    Eigen::MatrixXcd balanced = a.values();
    const RVector scale = balance_in_place(balanced);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
    solver.setMaxIterations(kSchurIterationsPerRow * balanced.rows());
    solver.compute(balanced, true);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eigen_decompose: Schur reduction did not converge within " +
                                 std::to_string(kSchurIterationsPerRow * balanced.rows()) +
                                 " iterations");
    }

    const Eigen::Index n = balanced.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const auto& values = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
        return eigenvalue_precedes(values(l), values(r));
    });

    EigenResult result;
    result.eigenvalues.reserve(order.size());
    result.eigenvectors.reserve(order.size());
    for (Eigen::Index idx : order) {
        result.eigenvalues.push_back(values(idx));
        CVector v = scale.cast<Complex>().cwiseProduct(solver.eigenvectors().col(idx));
        result.eigenvectors.push_back(fix_phase(std::move(v)));
    }
    return result;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
    Eigen::MatrixXcd balanced = a.values();
    balance_in_place(balanced);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
    solver.setMaxIterations(kSchurIterationsPerRow * balanced.rows());
    solver.compute(balanced, false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eigenvalues: Schur reduction did not converge");
    }
    std::vector<Complex> out(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
    std::stable_sort(out.begin(), out.end(), eigenvalue_precedes);
    return out;
}

double spectral_radius(const ComplexMatrix& a) {
    return std::abs(eigenvalues(a).front());
}

CVector solve_linear(const ComplexMatrix& a, const CVector& b) {
    if (static_cast<std::size_t>(b.size()) != a.dim()) {
        throw std::invalid_argument("solve_linear: dimension mismatch");
    }
    const Eigen::MatrixXcd& m = a.values();
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw SingularMatrix("solve_linear: zero matrix");

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < 1e-12 * scale) {
        throw SingularMatrix("solve_linear: pivot " + std::to_string(min_pivot) +
                             " below 1e-12 relative scale");
    }
    CVector x = lu.solve(b);
    const CVector residual = b - m * x;
    x += lu.solve(residual);
    return x;
}

} // namespace lifemodes
