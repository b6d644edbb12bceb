#include "aqrm/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aqrm/exactdiag.hpp"

namespace aqrm {

namespace {

void require_level(int n, int cap) {
    if (n < 0) throw std::invalid_argument("level index n must be non-negative");
    if (cap > 0 && n > cap) {
        throw std::invalid_argument("raw constraint polynomial limited to n <= 60; "
                                    "use the normalized forms beyond that");
    }
}

double recurrence_coeff(int k, double g2, double d2q, double omega, double epsilon) {
    return 4.0 * k * g2 + d2q - static_cast<double>(k) * k * omega * omega -
           k * epsilon * omega;
}

}  // namespace

// ---- polynomial family ----

double constraint_poly(int n, int k, const ModelParams& params) {
    validate(params);
    require_level(n, 60);
    if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
    const double g2 = params.g * params.g;
    const double d2q = 0.25 * params.delta * params.delta;
    const double w2 = params.omega * params.omega;
    double prev2 = 0.0;
    double prev = 1.0;
    for (int j = 1; j <= k; ++j) {
        // the two-step term carries omega^2 so every P_j is homogeneous of
        // degree 2j and the normalized form is scale invariant
        const double cur = recurrence_coeff(j, g2, d2q, params.omega, params.epsilon) * prev -
                           4.0 * j * (j - 1.0) * (n - j + 1.0) * g2 * w2 * prev2;
        prev2 = prev;
        prev = cur;
    }
    return prev;
}

double constraint_norm(int n, double omega) {
    require_level(n, 60);
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    double norm = 1.0;
    for (int j = 1; j <= n; ++j) norm *= static_cast<double>(j) * j * omega * omega;
    return (n % 2 == 0) ? norm : -norm;
}

double normalized_constraint_scaled(int n, const ModelParams& params) {
    validate(params);
    require_level(n, 0);
    const double g2 = params.g * params.g;
    const double d2q = 0.25 * params.delta * params.delta;
    const double w2 = params.omega * params.omega;
    double prev2 = 0.0;
    double prev = 1.0;  // Q_0
    for (int j = 1; j <= n; ++j) {
        double cur = -recurrence_coeff(j, g2, d2q, params.omega, params.epsilon) /
                     (static_cast<double>(j) * j * w2) * prev;
        if (j >= 2) cur -= 4.0 * (n - j + 1.0) * g2 / (j * (j - 1.0) * w2) * prev2;
        prev2 = prev;
        prev = cur;
    }
    return prev;
}

double normalized_constraint(int n, const ModelParams& params) {
    if (n > 60) return normalized_constraint_scaled(n, params);
    return constraint_poly(n, n, params) / constraint_norm(n, params.omega);
}

double kbar_constraint(int n, const ModelParams& params) {
    validate(params);
    require_level(n, 0);
    if (n <= 60) return 0.5 * std::atan(constraint_poly(n, n, params));
    const double q = normalized_constraint_scaled(n, params);
    const double signed_p = (n % 2 == 0) ? q : -q;
    if (signed_p == 0.0) return 0.0;
    return std::copysign(std::atan(1.0), signed_p);  // (1/2) atan(+-inf) = +-pi/4
}

// ---- root location ----

namespace detail {

namespace {

constexpr double kGrazeTol = 1e-6;

double bisect(const std::function<double(double)>& f, double a, double fa, double b,
              double x_tol) {
    while (b - a > x_tol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

std::string near(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

RootScan scan_sign_changes(const std::function<double(double)>& f, double x_max,
                           int cells_per_unit, double x_tol) {
    if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
    if (cells_per_unit < 1) throw std::invalid_argument("cells_per_unit must be positive");
    if (!(x_tol > 0.0)) throw std::invalid_argument("x_tol must be positive");

    const int cells = std::max(1, static_cast<int>(std::ceil(x_max * cells_per_unit)));
    const int points = 2 * cells + 1;  // endpoints and midpoints
    const double h = x_max / (2.0 * cells);
    std::vector<double> x(points);
    std::vector<double> fx(points);
    for (int i = 0; i < points; ++i) {
        x[i] = (i == points - 1) ? x_max : i * h;
        fx[i] = f(x[i]);
    }

    RootScan out;
    for (int i = 0; i + 1 < points; ++i) {
        if (fx[i] == 0.0) {
            out.roots.push_back(x[i]);
            continue;
        }
        if ((fx[i] < 0.0) != (fx[i + 1] < 0.0) && fx[i + 1] != 0.0) {
            out.roots.push_back(bisect(f, x[i], fx[i], x[i + 1], x_tol));
        }
    }
    if (fx[points - 1] == 0.0) out.roots.push_back(x[points - 1]);

    // cells whose endpoints agree in sign but whose midpoint does not
    // hold two roots each; the grid barely resolved them
    for (int c = 0; c < cells; ++c) {
        const double f0 = fx[2 * c];
        const double fm = fx[2 * c + 1];
        const double f1 = fx[2 * c + 2];
        if (f0 != 0.0 && fm != 0.0 && f1 != 0.0 && (f0 < 0.0) == (f1 < 0.0) &&
            (f0 < 0.0) != (fm < 0.0)) {
            out.diagnostics.push_back("two sign changes inside one scan cell near x = " +
                                      near(x[2 * c + 1]) +
                                      "; grid resolution marginal, increase cells_per_unit");
        }
    }

    // near-zero local minima of |f| with no adjacent sign change suggest
    // a grazing (double) root the scan cannot bracket
    for (int i = 1; i + 1 < points; ++i) {
        const double a = std::abs(fx[i]);
        if (a != 0.0 && a < kGrazeTol && a <= std::abs(fx[i - 1]) && a <= std::abs(fx[i + 1]) &&
            (fx[i - 1] < 0.0) == (fx[i] < 0.0) && (fx[i + 1] < 0.0) == (fx[i] < 0.0)) {
            out.diagnostics.push_back("function grazes zero near x = " + near(x[i]) +
                                      " without a sign change; possible double root");
        }
    }

    // merge duplicates from roots landing exactly on shared grid points
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end(),
                                [x_tol](double a, double b) { return b - a <= 4.0 * x_tol; }),
                    out.roots.end());
    return out;
}

}  // namespace detail

namespace {

void certify_root(JuddianRoot& root, double delta, double omega,
                  const JuddianScanOptions& opts) {
    const ModelParams p{delta, omega, root.g_star, root.l * omega};
    TruncationConfig cfg;
    cfg.k_levels = 2 * root.n + root.l + 6;
    cfg.tol = opts.certify_spectrum_tol;
    const auto spec = converged_spectrum(p, cfg);

    std::size_t nearest = 0;
    for (std::size_t i = 1; i < spec.energies.size(); ++i) {
        if (std::abs(spec.energies[i] - root.energy) <
            std::abs(spec.energies[nearest] - root.energy)) {
            nearest = i;
        }
    }
    double gap = std::numeric_limits<double>::infinity();
    if (nearest + 1 < spec.energies.size()) {
        gap = spec.energies[nearest + 1] - spec.energies[nearest];
    }
    if (nearest > 0) {
        gap = std::min(gap, spec.energies[nearest] - spec.energies[nearest - 1]);
    }
    root.gap = gap;
    root.certified = std::abs(spec.energies[nearest] - root.energy) <= opts.certify_energy_tol &&
                     gap <= opts.certify_gap_tol;
}

}  // namespace

JuddianScan juddian_roots(int n, int l, double delta, double omega,
                          const JuddianScanOptions& opts) {
    if (n < 0) throw std::invalid_argument("level index n must be non-negative");
    if (l < 0) throw std::invalid_argument("bias index l must be non-negative");
    if (!(opts.g_max > 0.0)) throw std::invalid_argument("g_max must be positive");
    const ModelParams base{delta, omega, 0.0, l * omega};
    validate(base);

    const auto k_of_u = [&](double u) {
        ModelParams p = base;
        p.g = std::sqrt(u);
        return normalized_constraint(n, p);
    };
    const auto scan = detail::scan_sign_changes(k_of_u, opts.g_max * opts.g_max,
                                                opts.cells_per_unit, opts.u_tol);

    JuddianScan out;
    out.n = n;
    out.l = l;
    out.diagnostics = scan.diagnostics;
    for (double u : scan.roots) {
        if (u <= 0.0) continue;  // a zero at g = 0 is not a Juddian point
        JuddianRoot root;
        root.n = n;
        root.l = l;
        root.g_star = std::sqrt(u);
        root.rescaled_energy = (n + 0.5 * l) * omega;
        root.energy = root.rescaled_energy - u / omega;
        if (opts.certify) certify_root(root, delta, omega, opts);
        out.roots.push_back(root);
    }
    return out;
}

}  // namespace aqrm
