#include "lifemodes/halfline.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "lifemodes/errors.hpp"

namespace lifemodes {

Complex HalfLineVector::at_particle_number(int n) const {
    if (n < 0 || n % 2 != 0) {
        throw RangeError("half-line sums exist only for even particle numbers, got " +
                         std::to_string(n));
    }
    const auto level = static_cast<std::size_t>(n / 2);
    if (level >= cutoff) {
        throw RangeError("particle number " + std::to_string(n) + " beyond cutoff " +
                         std::to_string(cutoff));
    }
    return u(static_cast<Eigen::Index>(level));
}

ComplexMatrix build_M(ModeSpec mode, double eta, std::size_t cutoff) {
    if (cutoff < 2) throw DomainError("build_M: cutoff must be >= 2");
    ComplexMatrix m(cutoff);
    for (std::size_t i = 0; i < cutoff; ++i) {
        for (std::size_t j = 0; j < cutoff; ++j) {
            const int vertex_n = static_cast<int>(2 * i + 2 * j);
            assert(vertex_n % 2 == 0);
            m.set(i, j, vertex_amplitude(mode, eta, vertex_n) *
                            edge_amplitude(mode, static_cast<int>(2 * j)));
        }
    }
    return m;
}

HalfLineVector solve_u(const ComplexMatrix& m) {
    EigenResult eig = eigen_decompose(m);
    if (eig.eigenvalues.size() > 1) {
        const double first = std::abs(eig.eigenvalues[0]);
        const double second = std::abs(eig.eigenvalues[1]);
        if (first - second < kDegenerateDominantTol * first) {
            throw DegenerateDominant("solve_u: two largest eigenvalue moduli coincide (" +
                                     std::to_string(first) + ")");
        }
    }
    HalfLineVector out;
    out.cutoff = m.dim();
    out.u = std::move(eig.eigenvectors.front());
    out.renorm_eigenvalue = eig.eigenvalues.front();
    out.full_spectrum = std::move(eig.eigenvalues);
    return out;
}

} // namespace lifemodes
