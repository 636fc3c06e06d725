#include "lifemodes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lifemodes/errors.hpp"
#include "lifemodes/halfline.hpp"
#include "lifemodes/transition.hpp"

namespace lifemodes::oracle {

namespace {

constexpr double kTailBound = 1e-12;
constexpr double kGridAgreement = 1e-8;
constexpr double kParticleIncrement = 1e-8;

// Smallest R past the integrand peak with e^{-rate R^2} R^n < kTailBound.
double tail_cutoff(double rate, int n) {
    double r = std::sqrt(std::max(1.0, static_cast<double>(n)) / (2.0 * rate));
    const double log_bound = std::log(kTailBound);
    while (-rate * r * r + n * std::log(r) >= log_bound) r += 0.25;
    return r;
}

double relative_error(Complex value, Complex reference) {
    const double scale = std::abs(reference);
    return scale > 0.0 ? std::abs(value - reference) / scale : std::abs(value);
}

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

OracleCheck make_check(std::string name, double tolerance, double observed, std::string detail = {}) {
    return {std::move(name), tolerance, observed, observed <= tolerance, std::move(detail)};
}

// Edge and vertex weight tables for even occupations 0, 2, ..., covering
// every vertex total 2a + 2b with a, b < levels.
struct WeightTables {
    std::vector<Complex> edge;   // edge[a] = E(2a)
    std::vector<Complex> vertex; // vertex[a] = V(2a)
};

WeightTables weight_tables(ModeSpec mode, double eta, std::size_t levels,
                           const PotentialFn& potential = {}) {
    WeightTables w;
    for (std::size_t a = 0; a < levels; ++a) w.edge.push_back(edge_amplitude(mode, static_cast<int>(2 * a)));
    for (std::size_t a = 0; a < 2 * levels; ++a) {
        const int n = static_cast<int>(2 * a);
        w.vertex.push_back(potential ? quad_vertex_amplitude(mode, eta, n, kDefaultQuadSteps, potential)
                                     : vertex_amplitude(mode, eta, n));
    }
    return w;
}

// Open real chain with n_vertices and even edge occupations below 2 * levels.
double chain_partition_sum(const WeightTables& w, std::size_t n_vertices, std::size_t levels) {
    if (n_vertices == 1) return w.vertex[0].real();
    // f(a): sum over everything left of the current edge, which carries 2a.
    std::vector<double> f(levels);
    for (std::size_t a = 0; a < levels; ++a) f[a] = (w.vertex[a] * w.edge[a]).real();
    for (std::size_t edge = 1; edge + 1 < n_vertices; ++edge) {
        std::vector<double> next(levels, 0.0);
        for (std::size_t b = 0; b < levels; ++b) {
            for (std::size_t a = 0; a < levels; ++a) {
                next[b] += f[a] * (w.vertex[a + b] * w.edge[b]).real();
            }
        }
        f = std::move(next);
    }
    double z = 0.0;
    for (std::size_t a = 0; a < levels; ++a) z += f[a] * w.vertex[a].real();
    return z;
}

} // namespace

Complex quad_vertex_amplitude(ModeSpec mode, double eta, int n, std::size_t steps,
                              const PotentialFn& potential) {
    if (n < 0) throw DomainError("quad_vertex_amplitude: n must be >= 0");
    if (steps < 4 || steps % 4 != 0) {
        throw DomainError("quad_vertex_amplitude: steps must be a positive multiple of 4");
    }
    if (mode.is_quantum()) {
        if (potential) throw DomainError("quad_vertex_amplitude: potentials need the real mode");
        if (eta == 0.0) throw DomainError("quad_vertex_amplitude: eta must be non-zero");
    } else if (!(eta > 0.0)) {
        throw DomainError("quad_vertex_amplitude: real mode needs eta > 0");
    }

    // After rotating the contour, -i eta r^2 becomes -|eta| t^2.
    const double rate = std::abs(eta);
    const double upper = tail_cutoff(rate, n);
    const ScalarFn integrand = [&](double t) {
        const double v = potential ? potential(t) : 0.0;
        return 2.0 * std::pow(t, n) * std::exp(-rate * t * t - v);
    };
    const double fine = simpson(integrand, 0.0, upper, steps);
    const double coarse = simpson(integrand, 0.0, upper, steps / 2);
    if (std::abs(fine - coarse) > kQuadAgreement * std::abs(fine)) {
        throw ToleranceNotMet("quad_vertex_amplitude: step doubling disagrees for n = " +
                              std::to_string(n));
    }
    if (!mode.is_quantum()) return {fine, 0.0};
    const double sigma = eta < 0.0 ? 1.0 : -1.0;
    return std::polar(fine, sigma * std::numbers::pi * (n + 1) / 4.0);
}

CVector power_iteration_u(const ComplexMatrix& m, int max_iter, double tol) {
    const auto dim = static_cast<Eigen::Index>(m.dim());
    const auto run = [&](CVector x) {
        x.normalize();
        for (int it = 0; it < max_iter; ++it) {
            CVector y = m.values() * x;
            const double norm = y.norm();
            if (!(norm > 0.0)) throw NoConvergence("power_iteration_u: iterate vanished");
            y /= norm;
            // Align the global phase with the previous iterate before comparing.
            const Complex overlap = y.dot(x);
            if (std::abs(overlap) > 0.0) y *= overlap / std::abs(overlap);
            const double change = (y - x).norm();
            x = std::move(y);
            if (change < tol) return fix_phase(x);
        }
        throw NoConvergence("power_iteration_u: no convergence after " + std::to_string(max_iter) +
                            " iterations");
    };

    const CVector uniform = CVector::Ones(dim);
    CVector ramp(dim);
    for (Eigen::Index i = 0; i < dim; ++i) ramp(i) = static_cast<double>(i + 1);

    CVector first = run(uniform);
    const CVector second = run(ramp);
    if (phase_distance(first, second) > std::max(1e-6, 10.0 * tol)) {
        throw NoConvergence("power_iteration_u: seeds converge to different vectors; "
                            "dominant eigenvalue is degenerate");
    }
    return first;
}

CVector finite_chain_half_line(ModeSpec mode, double eta, int length, std::size_t cutoff) {
    if (length < 0) throw DomainError("finite chain length must be >= 0");
    if (cutoff < 1) throw DomainError("finite chain cutoff must be >= 1");
    const WeightTables w = weight_tables(mode, eta, cutoff);
    const auto levels = static_cast<Eigen::Index>(cutoff);
    CVector half = CVector::Ones(levels);
    for (int step = 0; step < length; ++step) {
        CVector next = CVector::Zero(levels);
        for (Eigen::Index a = 0; a < levels; ++a) {
            for (Eigen::Index b = 0; b < levels; ++b) {
                next(a) += half(b) * w.edge[static_cast<std::size_t>(b)] *
                           w.vertex[static_cast<std::size_t>(a + b)];
            }
        }
        half = std::move(next);
    }
    return half;
}

Complex finite_chain_amplitude(ModeSpec mode, double eta, int length, std::size_t cutoff, int m,
                               int n) {
    if (m < 0 || n < 0 || m % 2 != 0 || n % 2 != 0) {
        throw RangeError("finite_chain_amplitude: occupations must be even and >= 0");
    }
    if (static_cast<std::size_t>(std::max(m, n) / 2) >= cutoff) {
        throw RangeError("finite_chain_amplitude: occupation beyond cutoff");
    }
    const CVector half = finite_chain_half_line(mode, eta, length, cutoff);
    return half(n / 2) * edge_amplitude(mode, n) * vertex_amplitude(mode, eta, m + n) *
           edge_amplitude(mode, m) * half(m / 2);
}

RMatrix finite_chain_probabilities(ModeSpec mode, double eta, int length, std::size_t cutoff) {
    const CVector half = finite_chain_half_line(mode, eta, length, cutoff);
    const auto levels = static_cast<Eigen::Index>(cutoff);
    RMatrix p(levels, levels);
    for (Eigen::Index m = 0; m < levels; ++m) {
        for (Eigen::Index n = 0; n < levels; ++n) {
            p(n, m) = std::norm(half(n) * edge_amplitude(mode, static_cast<int>(2 * n)) *
                                vertex_amplitude(mode, eta, static_cast<int>(2 * (m + n))));
        }
        p.col(m) /= p.col(m).sum();
    }
    return p;
}

double direct_field_Z(double eta, const PotentialFn& potential, std::size_t n_vertices,
                      const FieldGrid& grid) {
    if (n_vertices < 1 || n_vertices > 4) throw DomainError("direct_field_Z: 1 to 4 vertices");
    if (!(eta > 0.0)) throw DomainError("direct_field_Z: eta must be > 0");
    if (grid.intervals < 4 || grid.intervals % 4 != 0) {
        throw DomainError("direct_field_Z: intervals must be a positive multiple of 4");
    }
    const FieldFn integrand = [&](std::span<const double> phi) {
        double exponent = 0.0;
        for (std::size_t x = 0; x < phi.size(); ++x) {
            exponent -= eta * phi[x] * phi[x];
            if (potential) exponent -= potential(phi[x]);
            if (x + 1 < phi.size()) exponent += phi[x] * phi[x + 1];
        }
        return std::exp(exponent);
    };
    const double fine = simpson_grid(integrand, n_vertices, grid.field_cutoff, grid.intervals);
    const double coarse = simpson_grid(integrand, n_vertices, grid.field_cutoff, grid.intervals / 2);
    if (std::abs(fine - coarse) > kGridAgreement * std::abs(fine)) {
        throw ToleranceNotMet("direct_field_Z: grid halving changes Z by " +
                              format_double(std::abs(fine - coarse) / std::abs(fine)));
    }
    return fine;
}

double particle_sum_Z(double eta, const PotentialFn& potential, std::size_t n_vertices) {
    if (n_vertices < 1) throw DomainError("particle_sum_Z: need at least one vertex");
    if (!(eta > 0.0)) throw DomainError("particle_sum_Z: eta must be > 0");
    constexpr std::size_t kMaxLevels = 64;
    constexpr std::size_t kLevelStep = 4;
    const WeightTables w = weight_tables(ModeSpec::real(), eta, kMaxLevels, potential);
    double previous = chain_partition_sum(w, n_vertices, kLevelStep);
    for (std::size_t levels = 2 * kLevelStep; levels <= kMaxLevels; levels += kLevelStep) {
        const double z = chain_partition_sum(w, n_vertices, levels);
        if (std::abs(z - previous) < kParticleIncrement * std::abs(z)) return z;
        previous = z;
    }
    throw ToleranceNotMet("particle_sum_Z: occupation sum not converged at " +
                          std::to_string(kMaxLevels) + " levels");
}

std::vector<OracleCheck> vertex_amplitude_checks(const SuiteOptions& options) {
    std::vector<OracleCheck> checks;
    const std::pair<ModeSpec, double> cases[] = {{ModeSpec::quantum(), -0.9}, {ModeSpec::real(), 1.1}};
    for (const auto& [mode, eta] : cases) {
        double worst = 0.0;
        int worst_n = 0;
        for (int n = 0; n <= options.max_vertex_n; ++n) {
            const Complex closed = vertex_amplitude(mode, eta + options.perturb_eta, n);
            const Complex quad = quad_vertex_amplitude(mode, eta, n);
            const double err = relative_error(closed, quad);
            if (err > worst) {
                worst = err;
                worst_n = n;
            }
        }
        checks.push_back(make_check("vertex amplitude: closed form vs quadrature, " +
                                        std::string(to_string(mode.kind)) + " eta=" +
                                        format_double(eta) + " n=0.." +
                                        std::to_string(options.max_vertex_n),
                                    kQuadAgreement, worst, "worst n=" + std::to_string(worst_n)));
    }
    return checks;
}

std::vector<OracleCheck> power_iteration_checks() {
    std::vector<OracleCheck> checks;
    const std::pair<ModeSpec, double> cases[] = {{ModeSpec::quantum(), -0.9}, {ModeSpec::real(), 1.1}};
    for (const auto& [mode, eta] : cases) {
        for (std::size_t cutoff : {5, 9, 13, 8, 16, 24}) {
            const ComplexMatrix m = build_M(mode, eta, cutoff);
            const HalfLineVector hl = solve_u(m);
            const CVector power = power_iteration_u(m.scaled(1.0 / hl.renorm_eigenvalue), 500, 1e-12);
            checks.push_back(make_check("dominant eigenvector: Schur vs power iteration, " +
                                            std::string(to_string(mode.kind)) +
                                            " N=" + std::to_string(cutoff),
                                        1e-6, phase_distance(power, hl.u)));
        }
    }
    return checks;
}

std::vector<OracleCheck> finite_chain_checks() {
    std::vector<OracleCheck> checks;
    {
        const ModeSpec mode = ModeSpec::real();
        const LatticeParams params = LatticeParams::make(mode, 0.1, 1);
        const TransitionMatrix fixed = basis_transition_matrix(solve_half_line(mode, params.eta, 3), mode, params);
        const RMatrix chain = finite_chain_probabilities(mode, params.eta, 30, 3);
        checks.push_back(make_check("p(n|m): finite chain L=30 vs fixed point, realquantum1 N=3", 1e-3,
                                    (chain - fixed.p).cwiseAbs().maxCoeff()));
    }
    const std::pair<ModeSpec, double> cases[] = {{ModeSpec::quantum(), -0.9}, {ModeSpec::real(), 1.1}};
    for (const auto& [mode, eta] : cases) {
        constexpr std::size_t cutoff = 5;
        constexpr int length = 60;
        const HalfLineVector hl = solve_half_line(mode, eta, cutoff);
        const Complex ratio = finite_chain_amplitude(mode, eta, length + 1, cutoff, 2, 4) /
                              finite_chain_amplitude(mode, eta, length, cutoff, 2, 4);
        const Complex lambda_sq = hl.renorm_eigenvalue * hl.renorm_eigenvalue;
        checks.push_back(make_check("chain growth A(L+1)/A(L) vs lambda_max^2, " +
                                        std::string(to_string(mode.kind)) + " N=5 L=60",
                                    1e-6, relative_error(ratio, lambda_sq)));
    }
    return checks;
}

std::vector<OracleCheck> field_integral_checks() {
    std::vector<OracleCheck> checks;
    constexpr double eta_a = 1.1;
    constexpr double eta_b = 1.5;
    const auto add = [&](std::size_t vertices, const PotentialFn& potential, const std::string& tag) {
        const double field = direct_field_Z(eta_b, potential, vertices) / direct_field_Z(eta_a, potential, vertices);
        const double particle = particle_sum_Z(eta_b, potential, vertices) / particle_sum_Z(eta_a, potential, vertices);
        checks.push_back(make_check("Z(eta=1.5)/Z(eta=1.1): field grid vs particle sum, " +
                                        std::to_string(vertices) + " vertices" + tag,
                                    1e-4, std::abs(field - particle) / std::abs(particle),
                                    "field=" + format_double(field) + " particle=" + format_double(particle)));
    };
    for (std::size_t vertices = 1; vertices <= 3; ++vertices) add(vertices, {}, "");
    add(2, [](double phi) { return 0.1 * phi * phi * phi * phi; }, ", V=0.1 phi^4");
    return checks;
}

std::vector<OracleCheck> run_suite(const SuiteOptions& options) {
    std::vector<OracleCheck> all = vertex_amplitude_checks(options);
    for (auto part : {power_iteration_checks(), finite_chain_checks(), field_integral_checks()}) {
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

} // namespace lifemodes::oracle
