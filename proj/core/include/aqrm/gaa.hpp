// gaa.hpp — Generalized adiabatic approximation (GAA).
//
// The GAA keeps the displaced-oscillator pair structure of the adiabatic
// approximation but replaces the Laguerre factor in the tunnelling
// amplitude with the normalized constraint function evaluated at the
// actual bias and qubit splitting. The payoff: on resonance the GAA
// tunnelling vanishes exactly at the Juddian couplings, so the
// approximate bands reproduce the true level crossings (conical
// intersections in the (g, epsilon) plane) instead of spurious avoided
// crossings.

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aqrm/adiabatic.hpp"
#include "aqrm/constraints.hpp"
#include "aqrm/exactdiag.hpp"
#include "aqrm/linalg.hpp"
#include "aqrm/model.hpp"

namespace aqrm {

// Tunnelling amplitude with the constraint-function core:
//   Omega^GAA_{n,l} = delta exp(-2g^2/w^2) (-2g/w)^l sqrt(n!/(n+l)!) K_n(params).
// With use_kbar the compressed form (1/2) arctan(P_n) replaces K_n.
double gaa_tunneling(const ModelParams& params, int n, int l, bool use_kbar = false);

// Dispatch over the three block tunnelling models.
double tunneling_strength(TunnelingKind kind, const ModelParams& params, int n, int l);

BlockEigenpair gaa_eigenpair(const ModelParams& params, int n, int l, bool use_kbar = false);
BlockEigenpair block_eigenpair(TunnelingKind kind, const ModelParams& params, int n, int l);

// 2x2 pair block split into scalar shift and traceless part
//   [[d/2, Omega/2], [Omega/2, -d/2]],  d = epsilon - l*omega.
struct EffectiveBlock {
    double shift{0.0};
    linalg::SymMat2 traceless{};
};

EffectiveBlock effective_hamiltonian(TunnelingKind kind, const ModelParams& params, int n, int l);

// Degeneracy point of the GAA bands: bias exactly l*omega, coupling at a
// zero of K_n. Energies are those of the crossing pair.
struct ConicalIntersection {
    int n{0};
    int l{0};
    double g_star{0.0};
    double epsilon_star{0.0};     // l * omega
    double energy{0.0};           // (n + l/2) w - g*^2/w
    double rescaled_energy{0.0};  // (n + l/2) w, stored exactly
    bool certified{false};
    // exact doublet gap when certified, NaN until then
    double gap{std::numeric_limits<double>::quiet_NaN()};
};

struct CiSet {
    std::vector<ConicalIntersection> points;
    std::vector<std::string> diagnostics;
};

// All conical intersections of pair (n, l) with g <= opts.g_max.
CiSet locate_cis(int n, int l, double delta, double omega, const JuddianScanOptions& opts = {});

// Approximate spectrum assembled from the l partnerless levels plus the
// block eigenvalues for pairs n = 0, 1, ...; lowest k levels, ascending.
// Negative bias folds onto |epsilon|. For block methods n_max_used holds
// the number of pair blocks generated. Method::exact is rejected here;
// use converged_spectrum.
SpectrumResult approx_spectrum(const ModelParams& params, Method method, int k);

inline SpectrumResult spectrum_aa(const ModelParams& params, int k) {
    return approx_spectrum(params, Method::aa, k);
}
inline SpectrumResult spectrum_gaa(const ModelParams& params, int k, bool use_kbar = false) {
    return approx_spectrum(params, use_kbar ? Method::gaa_kbar : Method::gaa, k);
}

// Warns when the bias sits between resonances (|eps|/w more than 0.25
// from the nearest integer), where the paired-block picture degrades.
std::optional<std::string> validity_diagnostic(const ModelParams& params);

}  // namespace aqrm
