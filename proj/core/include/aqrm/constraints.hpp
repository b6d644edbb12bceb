// constraints.hpp — Constraint polynomials and Juddian degeneracy points.
//
// The degree-n constraint polynomial attached to level index n vanishes
// exactly where the spectral curve at bias epsilon = l*omega carries a
// doubly degenerate (Juddian) level with energy
//   E = (n + l/2) omega - g^2/omega.
// The normalized form K_n divides out the zero-coupling value and stays
// O(1), which is what the root scan and the generalized adiabatic
// approximation consume; for large n a rescaled recurrence avoids the
// (n!)^2 growth of the raw polynomial.

#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "aqrm/model.hpp"

namespace aqrm {

// ---- polynomial family ----

// Member P_k, 0 <= k <= n, of the recurrence attached to level n:
//   P_0 = 1,
//   P_k = (4k g^2 + delta^2/4 - k^2 w^2 - k eps w) P_{k-1}
//         - 4 k (k-1) (n-k+1) g^2 w^2 P_{k-2}.
// Every P_k is homogeneous of degree 2k in (g, delta, eps, w), so the
// normalized form depends only on (g/w, delta/w, eps/w). Raw values grow
// like (k!)^2 w^2k, hence the guard n <= 60.
double constraint_poly(int n, int k, const ModelParams& params);

// P_n at g = delta = epsilon = 0: (-1)^n (n!)^2 w^2n. Requires n <= 60.
double constraint_norm(int n, double omega);

// K_n = P_n / constraint_norm(n). Dispatches to the rescaled recurrence
// for n > 60; both paths agree where they overlap.
double normalized_constraint(int n, const ModelParams& params);

// K_n evaluated entirely in rescaled form (every partial sum is divided
// by its own zero-coupling magnitude, so nothing grows factorially).
double normalized_constraint_scaled(int n, const ModelParams& params);

// Compressed form (1/2) arctan(P_n), valued in (-pi/4, pi/4), with the
// same zero set as P_n. For n > 60 the raw P_n overflows and |P_n| is
// astronomically large except inside exponentially narrow root windows,
// so the value saturates to sign(P_n) * pi/4 there.
double kbar_constraint(int n, const ModelParams& params);

// ---- root location ----

namespace detail {

struct RootScan {
    std::vector<double> roots;  // ascending
    std::vector<std::string> diagnostics;
};

// Sign-change scan of f over [0, x_max] on a uniform grid with
// cells_per_unit cells per unit length, each cell also probed at its
// midpoint; every bracketed root is bisected to an interval of width
// <= x_tol. Diagnostics flag cells holding two sign changes (grid
// resolution marginal) and near-zero grazes without a sign change
// (possible double root).
RootScan scan_sign_changes(const std::function<double(double)>& f, double x_max,
                           int cells_per_unit, double x_tol);

}  // namespace detail

struct JuddianRoot {
    int n{0};
    int l{0};
    double g_star{0.0};
    double energy{0.0};           // (n + l/2) w - g*^2/w
    double rescaled_energy{0.0};  // (n + l/2) w, stored exactly
    bool certified{false};
    double gap{std::numeric_limits<double>::quiet_NaN()};  // exact doublet gap when certified
};

struct JuddianScanOptions {
    double g_max{1.5};
    int cells_per_unit{512};  // scan density in u = g^2
    double u_tol{1e-14};      // bisection interval target in u
    bool certify{false};      // cross-check each root against exact levels
    double certify_gap_tol{1e-6};
    double certify_energy_tol{1e-5};
    double certify_spectrum_tol{1e-9};
};

struct JuddianScan {
    int n{0};
    int l{0};
    std::vector<JuddianRoot> roots;
    std::vector<std::string> diagnostics;
};

// All zeros of K_n at bias epsilon = l*omega with 0 < g <= g_max. The
// scan runs in u = g^2, where the constraint is a polynomial of degree n
// (at delta = 0 exactly a scaled Laguerre polynomial). With certify set,
// each root is checked to carry a true doublet: the exact level nearest
// the Juddian energy must sit within certify_energy_tol of it and its
// gap to the adjacent level must be below certify_gap_tol.
JuddianScan juddian_roots(int n, int l, double delta, double omega,
                          const JuddianScanOptions& opts = {});

}  // namespace aqrm
