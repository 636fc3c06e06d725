#pragma once

// Brute-force cross-checks for every analytic shortcut in the pipeline. Each
// oracle takes a different numerical route from the code it validates:
//   quadrature          vs  closed-form Gamma vertex amplitudes
//   power iteration     vs  Schur-based dominant eigenvector
//   finite chains       vs  the infinite half-line fixed point
//   field-space grids   vs  the particle (occupation number) sum

#include <cstddef>
#include <string>
#include <vector>

#include "lifemodes/amplitudes.hpp"
#include "lifemodes/linalg.hpp"
#include "lifemodes/parallel.hpp"

namespace lifemodes::oracle {

/// Optional potential V(r) for the real-amplitude integrals; empty means V = 0.
using PotentialFn = ScalarFn;

inline constexpr std::size_t kDefaultQuadSteps = 100000;
inline constexpr double kQuadAgreement = 1e-6;

/// 2 int_0^inf r^n e^{-eta r^2 - V(r)} dr by composite Simpson (real mode), or
/// 2 int_0^inf r^n e^{-i eta r^2} dr along r = e^{i s pi/4} t with
/// s = -sign(eta) (complex mode, V = 0 only). Throws ToleranceNotMet if the
/// estimates at `steps` and `steps / 2` differ by more than 1e-6 relative.
Complex quad_vertex_amplitude(ModeSpec mode, double eta, int n,
                              std::size_t steps = kDefaultQuadSteps,
                              const PotentialFn& potential = {});

/// Dominant eigenvector by normalized power iteration from a uniform positive
/// seed, cross-checked from a second positive seed. Throws NoConvergence when
/// either run exhausts max_iter or the two runs disagree (degenerate dominant
/// eigenvalue).
CVector power_iteration_u(const ComplexMatrix& m, int max_iter, double tol);

/// Half-line sums of a chain with `length` vertices and free end: starts from
/// all ones and contracts one edge/vertex pair per step.
CVector finite_chain_half_line(ModeSpec mode, double eta, int length, std::size_t cutoff);

/// Amplitude with m particles on one edge and n on the adjacent edge, `length`
/// vertices on either side. length = 0 gives E_n V_{m+n} E_m.
Complex finite_chain_amplitude(ModeSpec mode, double eta, int length, std::size_t cutoff, int m,
                               int n);

/// Column-normalized |A_L(n|m)|^2 over the retained levels.
RMatrix finite_chain_probabilities(ModeSpec mode, double eta, int length, std::size_t cutoff);

struct FieldGrid {
    double field_cutoff = 9.0;   // integrate phi in [-field_cutoff, field_cutoff]
    std::size_t intervals = 240; // Simpson intervals per axis (even)
};

/// Real-amplitude partition function of an open chain by direct quadrature
/// over the field values, int prod dphi e^{-S}. Throws ToleranceNotMet if
/// halving the grid changes the value by more than 1e-8 relative.
double direct_field_Z(double eta, const PotentialFn& potential, std::size_t n_vertices,
                      const FieldGrid& grid = {});

/// The same partition function from the particle representation, raising the
/// occupation cutoff until the increment drops below 1e-8 relative.
double particle_sum_Z(double eta, const PotentialFn& potential, std::size_t n_vertices);

struct OracleCheck {
    std::string name;
    double tolerance = 0.0;
    double observed = 0.0; // error measure compared against tolerance
    bool passed = false;
    std::string detail;
};

struct SuiteOptions {
    /// Added to eta on the closed-form side of the vertex-amplitude checks;
    /// non-zero values serve as a negative control.
    double perturb_eta = 0.0;
    int max_vertex_n = 24;
};

std::vector<OracleCheck> vertex_amplitude_checks(const SuiteOptions& options = {});
std::vector<OracleCheck> power_iteration_checks();
std::vector<OracleCheck> finite_chain_checks();
std::vector<OracleCheck> field_integral_checks();

/// All of the above, in that order.
std::vector<OracleCheck> run_suite(const SuiteOptions& options = {});

} // namespace lifemodes::oracle
