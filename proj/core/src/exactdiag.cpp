#include "aqrm/exactdiag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "aqrm/adiabatic.hpp"
#include "aqrm/errors.hpp"

namespace aqrm {

namespace {

constexpr int kMaxGrownNmax = 4096;        // doubling budget for converged_spectrum
constexpr std::size_t kMaxDim = 1000000;   // hard cap on matrix dimension

std::size_t checked_dim(int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    const std::size_t dim = 2u * (static_cast<std::size_t>(n_max) + 1u);
    if (dim > kMaxDim) throw std::invalid_argument("truncated dimension exceeds 1e6");
    return dim;
}

ModelParams folded(const ModelParams& params) {
    ModelParams p = params;
    p.epsilon = std::abs(p.epsilon);
    return p;
}

int initial_cutoff(const ModelParams& p, const TruncationConfig& cfg) {
    const double u = p.g / p.omega;
    const int displaced = cfg.k_levels + static_cast<int>(std::ceil(8.0 * u * u));
    return std::max({cfg.n_max, 16, displaced});
}

}  // namespace

linalg::Matrix build_hamiltonian(const ModelParams& params, int n_max) {
    validate(params);
    const std::size_t dim = checked_dim(n_max);
    linalg::Matrix h(dim);
    const std::size_t stride = static_cast<std::size_t>(n_max) + 1u;
    for (std::size_t n = 0; n < stride; ++n) {
        const double osc = static_cast<double>(n) * params.omega;
        h(n, n) = osc + 0.5 * params.delta;
        h(stride + n, stride + n) = osc - 0.5 * params.delta;
        // sigma_x bias couples the spin sectors at equal n
        h(n, stride + n) = 0.5 * params.epsilon;
        h(stride + n, n) = 0.5 * params.epsilon;
        // sigma_x (a' + a) couples (s, n+1) <-> (1-s, n)
        if (n + 1 < stride) {
            const double t = params.g * std::sqrt(static_cast<double>(n + 1));
            h(n + 1, stride + n) = t;
            h(stride + n, n + 1) = t;
            h(n, stride + n + 1) = t;
            h(stride + n + 1, n) = t;
        }
    }
    return h;
}

linalg::Matrix parity_matrix(int n_max) {
    const std::size_t dim = checked_dim(n_max);
    const std::size_t stride = dim / 2;
    linalg::Matrix p(dim);
    for (std::size_t n = 0; n < stride; ++n) {
        const double fock_sign = (n % 2 == 0) ? 1.0 : -1.0;
        p(n, n) = fock_sign;
        p(stride + n, stride + n) = -fock_sign;
    }
    return p;
}

linalg::Eigensystem diagonalize(const ModelParams& params, int n_max) {
    return linalg::eigh(build_hamiltonian(params, n_max));
}

std::vector<double> spectrum_fixed(const ModelParams& params, int n_max, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const auto sys = diagonalize(params, n_max);
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), sys.values.size());
    return std::vector<double>(sys.values.begin(), sys.values.begin() + take);
}

SpectrumResult converged_spectrum(const ModelParams& params, const TruncationConfig& cfg) {
    validate(params);
    if (cfg.k_levels < 1) throw std::invalid_argument("k_levels must be positive");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (cfg.n_max < 1) throw std::invalid_argument("n_max must be positive");

    const ModelParams p = folded(params);
    int n_max = initial_cutoff(p, cfg);
    std::vector<double> prev = spectrum_fixed(p, n_max, cfg.k_levels);
    while (true) {
        if (n_max * 2 > kMaxGrownNmax) {
            throw ConvergenceError("spectrum not converged at Fock cutoff " +
                                   std::to_string(n_max) + " (budget " +
                                   std::to_string(kMaxGrownNmax) + ")");
        }
        n_max *= 2;
        std::vector<double> cur = spectrum_fixed(p, n_max, cfg.k_levels);
        double worst = 0.0;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            worst = std::max(worst, std::abs(cur[i] - prev[i]));
        }
        if (worst < cfg.tol) {
            SpectrumResult out;
            out.params = params;
            out.method = Method::exact;
            out.energies = std::move(cur);
            out.n_max_used = n_max;
            return out;
        }
        prev = std::move(cur);
    }
}

double level_gap(const ModelParams& params, int n, const TruncationConfig& cfg) {
    validate(params);
    if (n < 0) throw std::invalid_argument("pair index n must be non-negative");

    const ModelParams p = folded(params);
    const int l = nearest_bias_index(p.epsilon, p.omega);

    TruncationConfig local = cfg;
    local.k_levels = std::max(cfg.k_levels, 2 * (n + 1) + l + 2);
    const auto converged = converged_spectrum(p, local);
    const auto sys = diagonalize(p, converged.n_max_used);

    const std::size_t k_search = static_cast<std::size_t>(local.k_levels);
    std::vector<std::size_t> keep(k_search);
    std::iota(keep.begin(), keep.end(), std::size_t{0});

    if (l > 0) {
        // weight of each eigenvector on the l partnerless displaced states
        // D(g/w)|m> (x) |sigma_x = -1>, m = 0 .. l-1
        const std::size_t stride = sys.vectors.dim() / 2;
        const double alpha = p.g / p.omega;
        std::vector<double> weight(k_search, 0.0);
        for (std::size_t i = 0; i < k_search; ++i) {
            for (int m = 0; m < l; ++m) {
                double dot = 0.0;
                for (std::size_t kf = 0; kf < stride; ++kf) {
                    const double c = displaced_fock_coefficient(static_cast<int>(kf), m, alpha);
                    dot += c * (sys.vectors(kf, i) - sys.vectors(stride + kf, i));
                }
                weight[i] += 0.5 * dot * dot;
            }
        }
        std::vector<std::size_t> order(k_search);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&weight](std::size_t a, std::size_t b) {
            return weight[a] > weight[b];
        });
        std::vector<bool> unpaired(k_search, false);
        for (int m = 0; m < l; ++m) unpaired[order[static_cast<std::size_t>(m)]] = true;
        keep.clear();
        for (std::size_t i = 0; i < k_search; ++i) {
            if (!unpaired[i]) keep.push_back(i);
        }
    }

    const std::size_t lo = 2u * static_cast<std::size_t>(n);
    if (lo + 1 >= keep.size()) {
        throw std::invalid_argument("pair index n outside the converged level window");
    }
    return sys.values[keep[lo + 1]] - sys.values[keep[lo]];
}

}  // namespace aqrm
