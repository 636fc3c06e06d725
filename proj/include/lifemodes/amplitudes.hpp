#pragma once

// Edge and vertex weights of the particle (worldline) representation of a
// lattice real scalar field, for the complex-amplitude and the real-amplitude
// path integrals.

#include <string>
#include <string_view>

#include "lifemodes/linalg.hpp"

namespace lifemodes {

enum class ModeKind { Quantum1, RealQuantum1 };

/// Only the free theory (V = 0) has closed-form vertex amplitudes; general
/// potentials go through the quadrature oracle.
enum class Potential { Free };

struct ModeSpec {
    ModeKind kind = ModeKind::Quantum1;
    Potential potential = Potential::Free;

    static ModeSpec quantum() { return {ModeKind::Quantum1, Potential::Free}; }
    static ModeSpec real() { return {ModeKind::RealQuantum1, Potential::Free}; }

    bool is_quantum() const noexcept { return kind == ModeKind::Quantum1; }
    friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

std::string_view to_string(ModeKind kind);

/// Renormalized mass: a^2 m^2 / 2 + D - 2 for the complex theory, a^2 m^2 / 2 + D
/// for the real one.
double eta(ModeSpec mode, double half_bare_mass_sq, int dimension);

struct LatticeParams {
    double half_bare_mass_sq = 0.1; // a^2 m^2 / 2
    int dimension = 1;
    double eta = 0.0;

    static LatticeParams make(ModeSpec mode, double half_bare_mass_sq, int dimension);
};

/// Gamma((1 + n) / 2) from Gamma(1/2) = sqrt(pi), Gamma(1) = 1 and the
/// recurrence Gamma(x + 1) = x Gamma(x).
double gamma_half_integer(int n);

/// (-i)^n / n! (complex mode) or 1 / n! (real mode).
Complex edge_amplitude(ModeSpec mode, int n);

/// 2 int_0^inf r^n exp(-i eta r^2) dr = (i eta)^{-(1+n)/2} Gamma((1+n)/2) on the
/// principal branch (complex mode), or eta^{-(1+n)/2} Gamma((1+n)/2) (real
/// mode). Throws DomainError for eta <= 0 in real mode or eta == 0 in complex
/// mode.
Complex vertex_amplitude(ModeSpec mode, double eta, int n);

} // namespace lifemodes
