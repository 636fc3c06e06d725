#pragma once

// Half-line amplitude sums U_m on the even-occupation ladder. U solves the
// fixed-point equation U_m = sum_n U_n E_n V_{m+n}, i.e. u = M u with
// M(i, j) = V_{2i+2j} E_{2j} (0-based levels, particle number 2 * level), after
// M is renormalized by its largest-modulus eigenvalue.

#include <cstddef>
#include <vector>

#include "lifemodes/amplitudes.hpp"
#include "lifemodes/linalg.hpp"

namespace lifemodes {

struct HalfLineVector {
    std::size_t cutoff = 0;          // number of retained even levels
    CVector u;                       // u(level) = U_{2 level}, unit norm, phase fixed
    Complex renorm_eigenvalue;       // the divided-out eigenvalue of largest modulus
    std::vector<Complex> full_spectrum;

    /// U for an even particle number; throws RangeError outside the ladder.
    Complex at_particle_number(int n) const;
};

/// Relative gap below which the dominant eigenvector counts as ill-defined.
inline constexpr double kDegenerateDominantTol = 1e-6;

ComplexMatrix build_M(ModeSpec mode, double eta, std::size_t cutoff);

/// Dominant eigenpair of M; throws DegenerateDominant when the two largest
/// moduli agree to within kDegenerateDominantTol relative.
HalfLineVector solve_u(const ComplexMatrix& m);

inline HalfLineVector solve_half_line(ModeSpec mode, double eta, std::size_t cutoff) {
    return solve_u(build_M(mode, eta, cutoff));
}

} // namespace lifemodes
