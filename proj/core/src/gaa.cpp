#include "aqrm/gaa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aqrm {

namespace {

void require_pair_indices(int n, int l) {
    if (n < 0) throw std::invalid_argument("pair index n must be non-negative");
    if (l < 0) throw std::invalid_argument("bias index l must be non-negative");
    if (n + l > 160) {
        throw std::invalid_argument("pair indices out of supported range (n + l <= 160)");
    }
}

BlockEigenpair eigenpair_from(const ModelParams& params, int n, int l, double omega_nl,
                              TunnelingKind kind) {
    const double shift = pair_shift(params, n, l);
    const double detuning = params.epsilon - l * params.omega;
    const double r = std::hypot(omega_nl, detuning);
    return BlockEigenpair{n,     l,
                          shift - 0.5 * r,
                          shift + 0.5 * r,
                          std::atan2(omega_nl, detuning),
                          omega_nl,
                          kind};
}

}  // namespace

double gaa_tunneling(const ModelParams& params, int n, int l, bool use_kbar) {
    validate(params);
    require_pair_indices(n, l);
    const double core = use_kbar ? kbar_constraint(n, params) : normalized_constraint(n, params);
    const double u = params.g / params.omega;
    return params.delta * std::exp(-2.0 * u * u) * std::pow(-2.0 * u, l) *
           factorial_ratio_sqrt(n, l) * core;
}

double tunneling_strength(TunnelingKind kind, const ModelParams& params, int n, int l) {
    switch (kind) {
        case TunnelingKind::aa: return aa_tunneling(params, n, l);
        case TunnelingKind::gaa: return gaa_tunneling(params, n, l, false);
        case TunnelingKind::gaa_kbar: return gaa_tunneling(params, n, l, true);
    }
    throw std::logic_error("unknown tunnelling kind");
}

BlockEigenpair gaa_eigenpair(const ModelParams& params, int n, int l, bool use_kbar) {
    const TunnelingKind kind = use_kbar ? TunnelingKind::gaa_kbar : TunnelingKind::gaa;
    return eigenpair_from(params, n, l, gaa_tunneling(params, n, l, use_kbar), kind);
}

BlockEigenpair block_eigenpair(TunnelingKind kind, const ModelParams& params, int n, int l) {
    return eigenpair_from(params, n, l, tunneling_strength(kind, params, n, l), kind);
}

EffectiveBlock effective_hamiltonian(TunnelingKind kind, const ModelParams& params, int n,
                                     int l) {
    const double omega_nl = tunneling_strength(kind, params, n, l);
    const double d = params.epsilon - l * params.omega;
    return EffectiveBlock{pair_shift(params, n, l),
                          linalg::SymMat2{0.5 * d, 0.5 * omega_nl, -0.5 * d}};
}

CiSet locate_cis(int n, int l, double delta, double omega, const JuddianScanOptions& opts) {
    const JuddianScan scan = juddian_roots(n, l, delta, omega, opts);
    CiSet out;
    out.diagnostics = scan.diagnostics;
    out.points.reserve(scan.roots.size());
    for (const JuddianRoot& r : scan.roots) {
        ConicalIntersection ci;
        ci.n = r.n;
        ci.l = r.l;
        ci.g_star = r.g_star;
        ci.epsilon_star = r.l * omega;
        ci.energy = r.energy;
        ci.rescaled_energy = r.rescaled_energy;
        ci.certified = r.certified;
        ci.gap = r.gap;
        out.points.push_back(ci);
    }
    return out;
}

SpectrumResult approx_spectrum(const ModelParams& params, Method method, int k) {
    validate(params);
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (method == Method::exact) {
        throw std::invalid_argument("approx_spectrum covers block methods only; "
                                    "use converged_spectrum for the exact spectrum");
    }
    const TunnelingKind kind = tunneling_kind(method);

    ModelParams p = params;
    p.epsilon = std::abs(p.epsilon);
    const int l = nearest_bias_index(p.epsilon, p.omega);

    std::vector<double> energies = unpaired_energies(p, l);
    const int n_top = k + 8;
    energies.reserve(energies.size() + 2u * (static_cast<std::size_t>(n_top) + 1u));
    for (int n = 0; n <= n_top; ++n) {
        const BlockEigenpair pair = block_eigenpair(kind, p, n, l);
        energies.push_back(pair.e_minus);
        energies.push_back(pair.e_plus);
    }
    std::sort(energies.begin(), energies.end());
    energies.resize(static_cast<std::size_t>(k));

    SpectrumResult out;
    out.params = params;
    out.method = method;
    out.energies = std::move(energies);
    out.n_max_used = n_top + 1;
    return out;
}

std::optional<std::string> validity_diagnostic(const ModelParams& params) {
    validate(params);
    const double x = std::abs(params.epsilon) / params.omega;
    const int l = nearest_bias_index(params.epsilon, params.omega);
    const double miss = std::abs(x - l);
    if (miss <= 0.25) return std::nullopt;
    std::ostringstream os;
    os.precision(6);
    os << "bias sits between resonances: |epsilon|/omega = " << x << " is " << miss
       << " from the nearest integer " << l
       << " (> 0.25); paired-block approximations degrade here";
    return os.str();
}

}  // namespace aqrm
