#include "lifemodes/amplitudes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lifemodes/errors.hpp"

namespace lifemodes {

namespace {

// Beyond this the direct products leave double range; switch to logs.
constexpr int kLogSpaceThreshold = 150;

} // namespace

std::string_view to_string(ModeKind kind) {
    switch (kind) {
    case ModeKind::Quantum1: return "quantum1";
    case ModeKind::RealQuantum1: return "realquantum1";
    }
    return "unknown";
}

double eta(ModeSpec mode, double half_bare_mass_sq, int dimension) {
    if (half_bare_mass_sq < 0.0) throw DomainError("eta: a^2 m^2 / 2 must be >= 0");
    if (dimension < 1) throw DomainError("eta: dimension must be >= 1");
    const double shift = mode.is_quantum() ? dimension - 2.0 : static_cast<double>(dimension);
    return half_bare_mass_sq + shift;
}

LatticeParams LatticeParams::make(ModeSpec mode, double half_bare_mass_sq, int dimension) {
    return {half_bare_mass_sq, dimension, lifemodes::eta(mode, half_bare_mass_sq, dimension)};
}

double gamma_half_integer(int n) {
    if (n < 0) throw DomainError("gamma_half_integer: n must be >= 0");
    if (n > 2 * kLogSpaceThreshold) return std::exp(std::lgamma(0.5 * (1 + n)));
    if (n % 2 == 0) {
        // Gamma(k + 1/2), k = n / 2
        double g = std::sqrt(std::numbers::pi);
        for (int j = 0; j < n / 2; ++j) g *= j + 0.5;
        return g;
    }
    // Gamma(k + 1) = k!, k = (n - 1) / 2
    double g = 1.0;
    for (int j = 2; j <= (n - 1) / 2; ++j) g *= j;
    return g;
}

Complex edge_amplitude(ModeSpec mode, int n) {
    if (n < 0) throw DomainError("edge_amplitude: occupation must be >= 0");
    double magnitude;
    if (n > kLogSpaceThreshold) {
        magnitude = std::exp(-std::lgamma(n + 1.0));
    } else {
        magnitude = 1.0;
        for (int j = 2; j <= n; ++j) magnitude /= j;
    }
    if (!mode.is_quantum()) return {magnitude, 0.0};
    // (-i)^n cycles through 1, -i, -1, i
    switch (n % 4) {
    case 0: return {magnitude, 0.0};
    case 1: return {0.0, -magnitude};
    case 2: return {-magnitude, 0.0};
    default: return {0.0, magnitude};
    }
}

Complex vertex_amplitude(ModeSpec mode, double eta, int n) {
    if (n < 0) throw DomainError("vertex_amplitude: occupation must be >= 0");
    const double power = 0.5 * (1 + n);
    if (!mode.is_quantum()) {
        if (!(eta > 0.0)) throw DomainError("vertex_amplitude: real mode needs eta > 0");
        if (n > 2 * kLogSpaceThreshold) {
            return {std::exp(std::lgamma(power) - power * std::log(eta)), 0.0};
        }
        return {std::pow(eta, -power) * gamma_half_integer(n), 0.0};
    }
    if (eta == 0.0) throw DomainError("vertex_amplitude: complex mode needs eta != 0");
    // Principal branch: arg(i eta) = +pi/2 for eta > 0 and -pi/2 for eta < 0.
    const double arg = eta > 0.0 ? 0.5 * std::numbers::pi : -0.5 * std::numbers::pi;
    const double magnitude = n > 2 * kLogSpaceThreshold
                                 ? std::exp(std::lgamma(power) - power * std::log(std::abs(eta)))
                                 : std::pow(std::abs(eta), -power) * gamma_half_integer(n);
    return std::polar(magnitude, -power * arg);
}

} // namespace lifemodes
