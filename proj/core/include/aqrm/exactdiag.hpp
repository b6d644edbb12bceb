// exactdiag.hpp — Truncated-Fock-space diagonalization of the AQRM.
//
// Basis: sigma_z product states, spin-major; row index s*(n_max+1) + n
// with s = 0 for sigma_z = +1. The truncated Hamiltonian is real
// symmetric, so the dense solver in linalg.hpp applies directly.
// Truncation is controlled by doubling n_max until the requested lowest
// levels stop moving; by the variational principle they approach the
// true values from above.

#pragma once

#include <vector>

#include "aqrm/linalg.hpp"
#include "aqrm/model.hpp"

namespace aqrm {

struct TruncationConfig {
    int n_max{60};     // initial Fock cutoff; grown automatically
    double tol{1e-9};  // max per-level change accepted between doublings
    int k_levels{16};  // number of lowest levels required to converge
};

// Matrix of H in the truncated product basis; dimension 2*(n_max + 1).
linalg::Matrix build_hamiltonian(const ModelParams& params, int n_max);

// Diagonal parity operator sigma_z * (-1)^(a'a); commutes with H at
// epsilon = 0.
linalg::Matrix parity_matrix(int n_max);

// Full spectral decomposition at fixed truncation.
linalg::Eigensystem diagonalize(const ModelParams& params, int n_max);

// Lowest k levels at fixed truncation, ascending.
std::vector<double> spectrum_fixed(const ModelParams& params, int n_max, int k);

struct SpectrumResult {
    ModelParams params;
    Method method{Method::exact};
    std::vector<double> energies;  // ascending
    int n_max_used{0};
};

// Lowest cfg.k_levels levels with truncation grown until converged.
// Negative bias is folded onto |epsilon| (the spectrum is even in the
// bias), so outputs are bitwise identical for +-epsilon. Throws
// ConvergenceError if the cutoff exceeds its growth budget.
SpectrumResult converged_spectrum(const ModelParams& params, const TruncationConfig& cfg = {});

// Gap E_upper - E_lower of coupled level pair n at the bias resonance
// index l = nearest_bias_index. The l partnerless levels are identified
// by their weight on the low displaced states of the sigma_x = -1 ladder
// and excluded before pairing the sorted spectrum as (0,1), (2,3), ...
double level_gap(const ModelParams& params, int n, const TruncationConfig& cfg = {});

}  // namespace aqrm
