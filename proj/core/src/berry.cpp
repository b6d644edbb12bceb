#include "aqrm/berry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "aqrm/errors.hpp"

namespace aqrm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_closed(const LoopTrajectory& loop) {
    if (loop.points.size() < 4) {
        throw std::invalid_argument("loop needs at least 3 segments");
    }
    const LoopPoint& a = loop.points.front();
    const LoopPoint& b = loop.points.back();
    if (a.g != b.g || a.epsilon != b.epsilon) {
        throw std::invalid_argument("loop must be closed (first point repeated last)");
    }
}

double point_segment_distance(double px, double py, double ax, double ay, double bx,
                              double by) {
    const double vx = bx - ax;
    const double vy = by - ay;
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((px - ax) * vx + (py - ay) * vy) / len2, 0.0, 1.0);
    return std::hypot(px - (ax + t * vx), py - (ay + t * vy));
}

}  // namespace

// ---- loops ----

LoopTrajectory rectangle_loop(double g_min, double g_max, double epsilon_min,
                              double epsilon_max, int steps) {
    if (!std::isfinite(g_min) || !std::isfinite(g_max) || !std::isfinite(epsilon_min) ||
        !std::isfinite(epsilon_max)) {
        throw std::invalid_argument("rectangle bounds must be finite");
    }
    if (g_min < 0.0) throw std::invalid_argument("g_min must be non-negative");
    if (!(g_max > g_min)) throw std::invalid_argument("need g_max > g_min");
    if (!(epsilon_max > epsilon_min)) throw std::invalid_argument("need epsilon_max > epsilon_min");
    if (steps < 4) throw std::invalid_argument("need at least 4 loop steps");

    const LoopPoint corners[4] = {{g_min, epsilon_min},
                                  {g_max, epsilon_min},
                                  {g_max, epsilon_max},
                                  {g_min, epsilon_max}};
    const double w = g_max - g_min;
    const double h = epsilon_max - epsilon_min;
    const double per = 2.0 * (w + h);

    int s[4];
    s[0] = std::clamp(static_cast<int>(std::llround(steps * w / per)), 1, steps - 3);
    s[1] = std::clamp(static_cast<int>(std::llround(steps * h / per)), 1, steps - s[0] - 2);
    s[2] = std::clamp(s[0], 1, steps - s[0] - s[1] - 1);
    s[3] = steps - s[0] - s[1] - s[2];

    LoopTrajectory loop;
    loop.points.reserve(static_cast<std::size_t>(steps) + 1u);
    for (int e = 0; e < 4; ++e) {
        const LoopPoint& a = corners[e];
        const LoopPoint& b = corners[(e + 1) % 4];
        for (int j = 0; j < s[e]; ++j) {
            const double t = static_cast<double>(j) / s[e];
            loop.points.push_back(LoopPoint{a.g + t * (b.g - a.g),
                                            a.epsilon + t * (b.epsilon - a.epsilon)});
        }
    }
    loop.points.push_back(loop.points.front());
    return loop;
}

void check_loop_clearance(const LoopTrajectory& loop,
                          const std::vector<ConicalIntersection>& cis, double omega,
                          double min_clearance) {
    require_closed(loop);
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(min_clearance > 0.0)) throw std::invalid_argument("min_clearance must be positive");
    for (const ConicalIntersection& ci : cis) {
        for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
            const LoopPoint& a = loop.points[i];
            const LoopPoint& b = loop.points[i + 1];
            const double dist =
                point_segment_distance(ci.g_star / omega, ci.epsilon_star / omega,
                                       a.g / omega, a.epsilon / omega, b.g / omega,
                                       b.epsilon / omega);
            if (dist < min_clearance) {
                std::ostringstream os;
                os.precision(6);
                os << "loop passes within " << dist << " (< " << min_clearance
                   << ", omega units) of the conical intersection at g = " << ci.g_star
                   << ", epsilon = " << ci.epsilon_star;
                throw ProximityError(os.str(), ci.g_star, ci.epsilon_star);
            }
        }
    }
}

// ---- pair-band field ----

double PairField::tunneling(const LoopPoint& r) const {
    return tunneling_strength(kind, ModelParams{delta, omega, r.g, r.epsilon}, idx.n, idx.l);
}

double PairField::theta(const LoopPoint& r) const {
    const double omega_nl = tunneling(r);
    const double d = detuning(r);
    if (omega_nl == 0.0 && d == 0.0) {
        throw DegeneracyError("mixing angle undefined: evaluation point is a degeneracy "
                              "of the pair block");
    }
    return std::atan2(omega_nl, d);
}

std::array<std::complex<double>, 2> PairField::eigenstate(Band band,
                                                          const LoopPoint& r) const {
    const double th = theta(r);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    if (band == Band::upper) {
        return {inv_sqrt2, std::polar(inv_sqrt2, th)};
    }
    return {-std::polar(inv_sqrt2, -th), inv_sqrt2};
}

ComplexBlock complexified_block(const PairField& field, const LoopPoint& r) {
    const ModelParams p{field.delta, field.omega, r.g, r.epsilon};
    const double shift = pair_shift(p, field.idx.n, field.idx.l);
    const double omega_nl = field.tunneling(r);
    const double d = field.detuning(r);
    const std::complex<double> off{0.5 * d, -0.5 * omega_nl};
    return ComplexBlock{shift, off, std::conj(off), shift};
}

// ---- phases ----

namespace {

double theta_increment(const PairField& field, const LoopPoint& a, double theta_a,
                       const LoopPoint& b, double theta_b, int depth) {
    const double raw = std::remainder(theta_b - theta_a, kTwoPi);
    if (std::abs(raw) <= 0.5 * std::numbers::pi) return raw;
    if (depth >= 40) {
        throw ConvergenceError("theta winding unresolved after 40 bisections; the loop "
                               "passes too close to a degeneracy");
    }
    const LoopPoint mid{0.5 * (a.g + b.g), 0.5 * (a.epsilon + b.epsilon)};
    const double theta_mid = field.theta(mid);
    return theta_increment(field, a, theta_a, mid, theta_mid, depth + 1) +
           theta_increment(field, mid, theta_mid, b, theta_b, depth + 1);
}

}  // namespace

int winding_number(const PairField& field, const LoopTrajectory& loop) {
    require_closed(loop);
    double total = 0.0;
    double theta_prev = field.theta(loop.points.front());
    for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
        const double theta_next = field.theta(loop.points[i + 1]);
        total += theta_increment(field, loop.points[i], theta_prev, loop.points[i + 1],
                                 theta_next, 0);
        theta_prev = theta_next;
    }
    const long m = std::lround(total / kTwoPi);
    if (std::abs(total - static_cast<double>(m) * kTwoPi) > 1e-3) {
        throw ConvergenceError("accumulated theta winding is not an integer multiple of "
                               "2*pi; loop resolution insufficient");
    }
    return static_cast<int>(m);
}

BerryPhaseResult berry_phase(const PairField& field, const LoopTrajectory& loop, Band band) {
    const int m = winding_number(field, loop);
    BerryPhaseResult out;
    out.n = field.idx.n;
    out.l = field.idx.l;
    out.band = band;
    out.winding = m;
    out.phase = (band == Band::lower ? 1.0 : -1.0) * m * std::numbers::pi;
    out.method = PhaseMethod::analytic_winding;
    return out;
}

double wilson_loop_phase(const StateProvider& state, const LoopTrajectory& loop) {
    require_closed(loop);
    double acc = 0.0;
    std::array<std::complex<double>, 2> prev = state(loop.points.front());
    for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
        const std::array<std::complex<double>, 2> cur = state(loop.points[i + 1]);
        const std::complex<double> overlap =
            std::conj(prev[0]) * cur[0] + std::conj(prev[1]) * cur[1];
        if (std::abs(overlap) < 0.1) {
            throw ConvergenceError("Wilson-loop overlap nearly vanishes between adjacent "
                                   "samples; refine the loop discretization");
        }
        acc -= std::arg(overlap);
        prev = cur;
    }
    return acc;
}

BerryPhaseResult wilson_berry_phase(const PairField& field, const LoopTrajectory& loop,
                                    Band band) {
    const double phase = wilson_loop_phase(
        [&field, band](const LoopPoint& r) { return field.eigenstate(band, r); }, loop);
    BerryPhaseResult out;
    out.n = field.idx.n;
    out.l = field.idx.l;
    out.band = band;
    out.winding = static_cast<int>(
        std::lround((band == Band::lower ? phase : -phase) / std::numbers::pi));
    out.phase = phase;
    out.method = PhaseMethod::wilson_loop;
    return out;
}

}  // namespace aqrm
