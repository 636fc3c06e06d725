#pragma once

// Dense complex linear algebra for the small (<= ~64) matrices used by the
// half-line and life-expectancy computations.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace lifemodes {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Square complex matrix with finite entries. Indices are 0-based in code.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim);
    explicit ComplexMatrix(Eigen::MatrixXcd values);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix from_real(const RMatrix& values);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

    Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }
    void set(std::size_t row, std::size_t col, Complex value);

    const Eigen::MatrixXcd& values() const noexcept { return m_; }

    ComplexMatrix scaled(Complex factor) const;
    double frobenius_norm() const { return m_.norm(); }

private:
    Eigen::MatrixXcd m_;
};

struct EigenResult {
    /// Sorted by descending modulus, then descending real part, then
    /// descending imaginary part.
    std::vector<Complex> eigenvalues;
    /// Unit 2-norm; the first component of largest modulus is real and >= 0.
    std::vector<CVector> eigenvectors;
};

/// Iteration budget handed to the Schur reduction: 30 sweeps per row.
inline constexpr int kSchurIterationsPerRow = 30;

/// Throws ConvergenceFailure when the Schur reduction exhausts its budget.
EigenResult eigen_decompose(const ComplexMatrix& a);

/// Eigenvalues only (same ordering as eigen_decompose).
std::vector<Complex> eigenvalues(const ComplexMatrix& a);

/// Solve a x = b by partially pivoted LU plus one refinement step.
/// Throws SingularMatrix when a pivot falls below 1e-12 of the largest entry.
CVector solve_linear(const ComplexMatrix& a, const CVector& b);

/// Rotate v so that its first entry of largest modulus is real and
/// non-negative, and scale to unit 2-norm.
CVector fix_phase(CVector v);

/// min over unimodular c of ||a - c b||_2 for unit vectors a, b.
double phase_distance(const CVector& a, const CVector& b);

/// Strict ordering used for eigenvalue lists.
bool eigenvalue_precedes(Complex lhs, Complex rhs);

double spectral_radius(const ComplexMatrix& a);

} // namespace lifemodes
