// model.hpp — Parameters, validation, and index conventions for the
// asymmetric quantum Rabi model (AQRM).
//
// Conventions used throughout the library:
//   * omega is always an explicit parameter; no unit system is implied.
//   * The bias index l is the integer nearest to |epsilon|/omega, with
//     exact half-integer ratios rounded to even.
//   * The spectrum is symmetric under epsilon -> -epsilon, so routines
//     that assemble spectra fold negative bias onto |epsilon|. Routines
//     that evaluate pointwise fields in the (g, epsilon) plane keep the
//     sign (the geometric-phase machinery depends on it).

#pragma once

#include <string_view>

namespace aqrm {

// Physical parameters of
//   H = (delta/2) sigma_z + omega a'a + g sigma_x (a' + a) + (epsilon/2) sigma_x.
struct ModelParams {
    double delta{1.0};    // qubit splitting, >= 0
    double omega{1.0};    // field frequency, > 0
    double g{0.0};        // qubit-field coupling, >= 0
    double epsilon{0.0};  // bias, any sign
};

// Returns params unchanged; throws std::invalid_argument when a field
// violates its constraint or is non-finite.
const ModelParams& validate(const ModelParams& params);

// Integer nearest to |epsilon|/omega, ties rounded to even.
int nearest_bias_index(double epsilon, double omega);

// E + g^2/omega, the shift that places level crossings at (half-)integer values.
inline double rescaled_energy(double energy, double g, double omega) {
    return energy + g * g / omega;
}

// Coordinates of one coupled level pair: pair index n and bias index l.
struct BlockIndex {
    int n{0};
    int l{0};

    // l derived from params via nearest_bias_index.
    static BlockIndex for_params(const ModelParams& params, int n);
};

// Spectrum-producing methods exposed by the toolkit.
enum class Method { exact, aa, gaa, gaa_kbar };

// Tunnelling-strength models for the 2x2 level-pair blocks.
enum class TunnelingKind { aa, gaa, gaa_kbar };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);  // throws std::invalid_argument
TunnelingKind tunneling_kind(Method m);      // throws for Method::exact

}  // namespace aqrm
