#include "aqrm/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aqrm {

const ModelParams& validate(const ModelParams& params) {
    const auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(params.delta) || !finite(params.omega) || !finite(params.g) ||
        !finite(params.epsilon)) {
        throw std::invalid_argument("model parameters must be finite");
    }
    if (params.omega <= 0.0) {
        throw std::invalid_argument("omega must be positive");
    }
    if (params.delta < 0.0) {
        throw std::invalid_argument("delta must be non-negative");
    }
    if (params.g < 0.0) {
        throw std::invalid_argument("g must be non-negative");
    }
    return params;
}

int nearest_bias_index(double epsilon, double omega) {
    if (omega <= 0.0) {
        throw std::invalid_argument("omega must be positive");
    }
    const double x = std::abs(epsilon) / omega;
    const double lo = std::floor(x);
    const double frac = x - lo;
    if (frac < 0.5) return static_cast<int>(lo);
    if (frac > 0.5) return static_cast<int>(lo) + 1;
    // exact tie: round half to even
    const auto lo_int = static_cast<int>(lo);
    return (lo_int % 2 == 0) ? lo_int : lo_int + 1;
}

BlockIndex BlockIndex::for_params(const ModelParams& params, int n) {
    if (n < 0) throw std::invalid_argument("pair index n must be non-negative");
    return BlockIndex{n, nearest_bias_index(params.epsilon, params.omega)};
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::aa: return "aa";
        case Method::gaa: return "gaa";
        case Method::gaa_kbar: return "gaa-kbar";
    }
    throw std::logic_error("unknown method");
}

Method parse_method(std::string_view name) {
    if (name == "exact") return Method::exact;
    if (name == "aa") return Method::aa;
    if (name == "gaa") return Method::gaa;
    if (name == "gaa-kbar" || name == "gaa_kbar") return Method::gaa_kbar;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected exact, aa, gaa, or gaa-kbar)");
}

TunnelingKind tunneling_kind(Method m) {
    switch (m) {
        case Method::aa: return TunnelingKind::aa;
        case Method::gaa: return TunnelingKind::gaa;
        case Method::gaa_kbar: return TunnelingKind::gaa_kbar;
        case Method::exact: break;
    }
    throw std::invalid_argument("method has no block tunnelling model");
}

}  // namespace aqrm
