#include "aqrm/adiabatic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aqrm {

namespace {

void require_pair_indices(int n, int l) {
    if (n < 0) throw std::invalid_argument("pair index n must be non-negative");
    if (l < 0) throw std::invalid_argument("bias index l must be non-negative");
    if (n + l > 160) {
        throw std::invalid_argument("pair indices out of supported range (n + l <= 160)");
    }
}

}  // namespace

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: degree must be non-negative");
    if (!std::isfinite(alpha) || !std::isfinite(x)) {
        throw std::invalid_argument("laguerre: arguments must be finite");
    }
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double factorial_ratio_sqrt(int n, int l) {
    if (n < 0 || l < 0) {
        throw std::invalid_argument("factorial_ratio_sqrt: indices must be non-negative");
    }
    double r = 1.0;
    for (int j = 1; j <= l; ++j) r /= std::sqrt(static_cast<double>(n + j));
    return r;
}

double displaced_fock_coefficient(int m, int n, double alpha) {
    if (m < 0 || n < 0) {
        throw std::invalid_argument("displaced_fock_coefficient: indices must be non-negative");
    }
    if (m < n) return displaced_fock_coefficient(n, m, -alpha);
    const int d = m - n;
    return factorial_ratio_sqrt(n, d) * std::pow(alpha, d) * std::exp(-0.5 * alpha * alpha) *
           laguerre(n, static_cast<double>(d), alpha * alpha);
}

double aa_tunneling(const ModelParams& params, int n, int l) {
    validate(params);
    require_pair_indices(n, l);
    const double u = params.g / params.omega;
    return params.delta * std::exp(-2.0 * u * u) * std::pow(-2.0 * u, l) *
           factorial_ratio_sqrt(n, l) * laguerre(n, static_cast<double>(l), 4.0 * u * u);
}

double pair_shift(const ModelParams& params, int n, int l) {
    validate(params);
    require_pair_indices(n, l);
    return (n + 0.5 * l) * params.omega - params.g * params.g / params.omega;
}

BlockEigenpair aa_eigenpair(const ModelParams& params, int n, int l) {
    const double omega_nl = aa_tunneling(params, n, l);
    const double shift = pair_shift(params, n, l);
    const double detuning = params.epsilon - l * params.omega;
    const double r = std::hypot(omega_nl, detuning);
    return BlockEigenpair{n,
                          l,
                          shift - 0.5 * r,
                          shift + 0.5 * r,
                          std::atan2(omega_nl, detuning),
                          omega_nl,
                          TunnelingKind::aa};
}

std::vector<double> unpaired_energies(const ModelParams& params, int l) {
    validate(params);
    if (l < 0) throw std::invalid_argument("bias index l must be non-negative");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(l));
    const double base = -params.g * params.g / params.omega - 0.5 * params.epsilon;
    for (int k = 0; k < l; ++k) out.push_back(k * params.omega + base);
    return out;
}

}  // namespace aqrm
