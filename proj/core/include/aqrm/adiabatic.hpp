// adiabatic.hpp — Displaced-oscillator (adiabatic) treatment of the AQRM.
//
// For delta = 0 the model is a pair of displaced harmonic ladders split
// by the bias. A small delta couples the ladders; near resonance
// epsilon ~ l*omega the levels organize into 2x2 blocks indexed by
// (n, l) with tunnelling amplitude Omega_{n,l} plus l unpaired levels.

#pragma once

#include <vector>

#include "aqrm/model.hpp"

namespace aqrm {

// Generalized Laguerre polynomial L_n^(alpha)(x), real alpha, by the
// three-term recurrence. Exact for n = 0, 1.
double laguerre(int n, double alpha, double x);

// sqrt(n! / (n+l)!), evaluated as a product of inverse square roots so
// no intermediate factorial is formed. Requires n, l >= 0.
double factorial_ratio_sqrt(int n, int l);

// Franck-Condon overlap <m|D(alpha)|n> of Fock states under the
// displacement D(alpha) = exp(alpha (a' - a)), real alpha.
double displaced_fock_coefficient(int m, int n, double alpha);

// Tunnelling amplitude of the adiabatic approximation:
//   Omega_{n,l} = delta * exp(-2g^2/w^2) * (-2g/w)^l
//                 * sqrt(n!/(n+l)!) * L_n^l(4g^2/w^2).
// Requires n, l >= 0 and n + l <= 160 (beyond that the factorial ratio
// underflows past any physically meaningful scale).
double aa_tunneling(const ModelParams& params, int n, int l);

// Block center S = (n + l/2) omega - g^2/omega.
double pair_shift(const ModelParams& params, int n, int l);

// Eigenvalues and mixing angle of one 2x2 level-pair block
//   [[S + d/2, Omega/2], [Omega/2, S - d/2]],  d = epsilon - l*omega.
struct BlockEigenpair {
    int n{0};
    int l{0};
    double e_minus{0.0};  // S - r/2, r = hypot(Omega, d)
    double e_plus{0.0};   // S + r/2
    double theta{0.0};    // atan2(Omega, d), in (-pi, pi]
    double tunneling{0.0};
    TunnelingKind kind{TunnelingKind::aa};
};

BlockEigenpair aa_eigenpair(const ModelParams& params, int n, int l);

// Energies of the l partnerless levels present when epsilon ~ l*omega:
//   k*omega - g^2/omega - epsilon/2,  k = 0 .. l-1.
std::vector<double> unpaired_energies(const ModelParams& params, int l);

}  // namespace aqrm
