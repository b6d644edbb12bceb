// berry.hpp — Geometric phases of the pair bands around conical
// intersections in the (g, epsilon) plane.
//
// Each level pair carries the effective block S*I + (rho/2) *
// [[0, e^-i*theta], [e^i*theta, 0]] with theta = atan2(Omega, epsilon -
// l*omega). The Berry phase of a band around a closed loop is set by the
// winding number m of theta: gamma = +m*pi for the lower band, -m*pi for
// the upper. A counterclockwise loop enclosing a single conical
// intersection picks up m = -sign(dOmega/dg there), so the phase is
// quantized at 0 or +-pi and every enclosed intersection contributes
// its own sign.
//
// Two evaluation routes are provided: the analytic one accumulates the
// theta winding directly, and the Wilson-loop one multiplies discrete
// state overlaps, which stays meaningful for any externally supplied
// single-valued family of states.

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "aqrm/gaa.hpp"
#include "aqrm/model.hpp"

namespace aqrm {

// ---- loops ----

struct LoopPoint {
    double g{0.0};
    double epsilon{0.0};
};

// Closed polyline; points.front() == points.back() exactly.
struct LoopTrajectory {
    std::vector<LoopPoint> points;
};

// Axis-aligned rectangle traversed counterclockwise from (g_min,
// epsilon_min), discretized into exactly `steps` segments (at least one
// per edge, corners sampled exactly). steps >= 4.
LoopTrajectory rectangle_loop(double g_min, double g_max, double epsilon_min,
                              double epsilon_max, int steps);

// Throws ProximityError if any loop segment passes within min_clearance
// of a conical intersection; distances are measured with both axes in
// units of omega.
void check_loop_clearance(const LoopTrajectory& loop,
                          const std::vector<ConicalIntersection>& cis, double omega,
                          double min_clearance = 1e-6);

// ---- pair-band field ----

enum class Band { lower, upper };

// Tunnelling / mixing-angle field of one level pair over the (g,
// epsilon) plane. The bias keeps its sign here; the winding lives in the
// signed detuning.
struct PairField {
    double delta{1.0};
    double omega{1.0};
    BlockIndex idx{};
    TunnelingKind kind{TunnelingKind::gaa};

    double tunneling(const LoopPoint& r) const;
    double detuning(const LoopPoint& r) const { return r.epsilon - idx.l * omega; }
    // atan2(Omega, detuning); throws DegeneracyError when both vanish
    double theta(const LoopPoint& r) const;
    // fixed smooth gauge: lower (-e^-i*theta, 1)/sqrt2, upper (1, e^i*theta)/sqrt2
    std::array<std::complex<double>, 2> eigenstate(Band band, const LoopPoint& r) const;
};

struct ComplexBlock {
    std::complex<double> h00, h01, h10, h11;
};

// S*I + (1/2) [[0, d - i*Omega], [d + i*Omega, 0]]; hermitian, with the
// PairField eigenstates as eigenvectors.
ComplexBlock complexified_block(const PairField& field, const LoopPoint& r);

// ---- phases ----

// Net winding of theta along the loop. Segments whose wrapped increment
// exceeds pi/2 are bisected adaptively; failure to resolve (loop through
// or numerically at a degeneracy) raises ConvergenceError.
int winding_number(const PairField& field, const LoopTrajectory& loop);

enum class PhaseMethod { analytic_winding, wilson_loop };

struct BerryPhaseResult {
    int n{0};
    int l{0};
    Band band{Band::lower};
    int winding{0};
    double phase{0.0};
    PhaseMethod method{PhaseMethod::analytic_winding};
};

// gamma = -+ winding * pi (lower band +, upper band -), via the theta
// winding.
BerryPhaseResult berry_phase(const PairField& field, const LoopTrajectory& loop, Band band);

// Discrete Wilson loop over an arbitrary single-valued normalized state
// family: gamma = -sum_k arg <psi(R_k)|psi(R_k+1)>, accumulated
// segment-wise so windings beyond one turn survive. Throws
// ConvergenceError when an adjacent overlap magnitude drops below 0.1
// (discretization too coarse to trust).
using StateProvider = std::function<std::array<std::complex<double>, 2>(const LoopPoint&)>;
double wilson_loop_phase(const StateProvider& state, const LoopTrajectory& loop);

// Wilson loop over the PairField band eigenstates.
BerryPhaseResult wilson_berry_phase(const PairField& field, const LoopTrajectory& loop,
                                    Band band);

}  // namespace aqrm
