#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aqrm/adiabatic.hpp"
#include "aqrm/constraints.hpp"
#include "testutil.hpp"

using namespace aqrm;

namespace {

// degree-2 normalized constraint at omega = 1, expanded by hand
double k2_closed(double g, double delta, double eps) {
    const double g2 = g * g;
    const double d2 = delta * delta;
    return 1.0 - 8.0 * g2 + 8.0 * g2 * g2 + 1.5 * eps - 4.0 * g2 * eps + 0.5 * eps * eps +
           d2 * (-5.0 / 16.0 + 0.75 * g2 - 3.0 / 16.0 * eps) + d2 * d2 / 64.0;
}

}  // namespace

TEST_CASE("base cases of the polynomial family") {
    const ModelParams p{0.7, 1.0, 0.4, 0.3};
    CHECK(constraint_poly(5, 0, p) == 1.0);
    const double p1 = 4.0 * p.g * p.g + 0.25 * p.delta * p.delta - 1.0 - p.epsilon;
    CHECK(constraint_poly(5, 1, p) == doctest::Approx(p1).epsilon(1e-15));
}

TEST_CASE("degree-2 member against the hand expansion") {
    testutil::Rng rng(88101);
    for (int trial = 0; trial < 50; ++trial) {
        const ModelParams p{rng.uniform(0.0, 2.0), 1.0, rng.uniform(0.0, 1.4),
                            rng.uniform(-2.0, 2.0)};
        const double expect = 4.0 * k2_closed(p.g, p.delta, p.epsilon);  // norm(2) = 4
        CHECK(constraint_poly(2, 2, p) ==
              doctest::Approx(expect).epsilon(1e-12).scale(std::max(1.0, std::abs(expect))));
        CHECK(normalized_constraint(2, p) ==
              doctest::Approx(k2_closed(p.g, p.delta, p.epsilon)).epsilon(1e-12));
    }
}

TEST_CASE("zero-coupling normalization") {
    CHECK(constraint_norm(0, 1.0) == 1.0);
    CHECK(constraint_norm(1, 1.0) == -1.0);
    CHECK(constraint_norm(1, 3.0) == -9.0);
    CHECK(constraint_norm(2, 2.0) == 64.0);
    CHECK(constraint_norm(3, 1.0) == -36.0);
    CHECK_THROWS_AS(constraint_norm(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(constraint_norm(61, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(constraint_poly(61, 61, ModelParams{}), std::invalid_argument);
}

TEST_CASE("zero-splitting constraint collapses to a Laguerre polynomial") {
    testutil::Rng rng(88102);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = rng.uniform_int(0, 12);
        const double omega = rng.uniform(0.5, 2.0);
        const ModelParams p{0.0, omega, rng.uniform(0.0, 1.5), rng.uniform(0.0, 3.0)};
        const double k = normalized_constraint(n, p);
        const double ref = laguerre(n, p.epsilon / omega, 4.0 * p.g * p.g / (omega * omega));
        CHECK(std::abs(k - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("raw and rescaled evaluations agree where both run") {
    testutil::Rng rng(88103);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = rng.uniform_int(0, 60);
        const ModelParams p{rng.uniform(0.0, 1.5), rng.uniform(0.5, 1.5),
                            rng.uniform(0.0, 1.2), rng.uniform(-1.0, 3.0)};
        const double raw = constraint_poly(n, n, p) / constraint_norm(n, p.omega);
        const double scaled = normalized_constraint_scaled(n, p);
        CHECK(std::abs(raw - scaled) <= 1e-9 * std::max(1.0, std::abs(raw)));
    }
}

TEST_CASE("polynomial scales homogeneously in omega") {
    testutil::Rng rng(88104);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.uniform_int(1, 8);
        const int k = rng.uniform_int(0, n);
        const double w = rng.uniform(0.5, 2.5);
        const ModelParams p{rng.uniform(0.0, 1.5), w, rng.uniform(0.0, 1.2),
                            rng.uniform(-1.0, 2.0)};
        const ModelParams unit{p.delta / w, 1.0, p.g / w, p.epsilon / w};
        const double lhs = constraint_poly(n, k, p);
        const double rhs = std::pow(w, 2 * k) * constraint_poly(n, k, unit);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
        // the normalized form is therefore scale invariant
        CHECK(std::abs(normalized_constraint(n, p) - normalized_constraint(n, unit)) <=
              1e-11 * std::max(1.0, std::abs(normalized_constraint(n, p))));
    }
}

TEST_CASE("large-n rescaled path stays consistent with the Laguerre limit") {
    const ModelParams p{0.0, 1.0, 0.6, 1.0};
    for (const int n : {61, 75, 90}) {
        const double k = normalized_constraint(n, p);
        const double ref = laguerre(n, p.epsilon, 4.0 * p.g * p.g);
        CHECK(std::abs(k - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("compressed constraint: definition, range, saturation") {
    testutil::Rng rng(88105);
    for (int trial = 0; trial < 40; ++trial) {
        const ModelParams p{rng.uniform(0.0, 1.5), 1.0, rng.uniform(0.0, 1.2),
                            rng.uniform(0.0, 2.0)};
        const int n = rng.uniform_int(0, 10);
        CHECK(kbar_constraint(n, p) ==
              doctest::Approx(0.5 * std::atan(constraint_poly(n, n, p))).epsilon(1e-14));
        CHECK(std::abs(kbar_constraint(n, p)) < std::numbers::pi / 4);
    }
    // beyond the raw range the value saturates but keeps the sign of P_n
    const ModelParams big{0.8, 1.0, 0.7, 0.0};
    for (const int n : {70, 101}) {
        const double kb = kbar_constraint(n, big);
        CHECK(std::abs(kb) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
        const double q = normalized_constraint_scaled(n, big);
        const double sign_p = (n % 2 == 0) ? q : -q;
        CHECK(kb * sign_p > 0.0);
    }
}

TEST_CASE("sign-change scan finds simple roots to tolerance") {
    const auto f = [](double x) { return (x - 0.2) * (x - 0.21) * (x - 0.8); };
    const auto scan = detail::scan_sign_changes(f, 1.0, 512, 1e-14);
    REQUIRE(scan.roots.size() == 3);
    CHECK(std::abs(scan.roots[0] - 0.2) <= 1e-13);
    CHECK(std::abs(scan.roots[1] - 0.21) <= 1e-13);
    CHECK(std::abs(scan.roots[2] - 0.8) <= 1e-13);
    CHECK(scan.diagnostics.empty());
}

TEST_CASE("scan flags a barely resolved root pair in one cell") {
    // both roots inside a single 1/512-wide cell, straddling its midpoint
    const double c = 256.5 / 512.0;
    const double r = 1e-4;
    const auto f = [c, r](double x) { return (x - c) * (x - c) - r * r; };
    const auto scan = detail::scan_sign_changes(f, 1.0, 512, 1e-14);
    REQUIRE(scan.roots.size() == 2);
    CHECK(std::abs(scan.roots[0] - (c - r)) <= 1e-13);
    CHECK(std::abs(scan.roots[1] - (c + r)) <= 1e-13);
    REQUIRE(scan.diagnostics.size() == 1);
    CHECK(scan.diagnostics[0].find("grid resolution marginal") != std::string::npos);
}

TEST_CASE("scan reports a graze with no sign change") {
    const double c = 256.5 / 512.0;
    const auto f = [c](double x) { return (x - c) * (x - c) + 1e-9; };
    const auto scan = detail::scan_sign_changes(f, 1.0, 512, 1e-14);
    CHECK(scan.roots.empty());
    REQUIRE(!scan.diagnostics.empty());
    CHECK(scan.diagnostics[0].find("possible double root") != std::string::npos);
}

TEST_CASE("scan argument validation") {
    const auto f = [](double x) { return x - 0.5; };
    CHECK_THROWS_AS(detail::scan_sign_changes(f, 0.0, 512, 1e-14), std::invalid_argument);
    CHECK_THROWS_AS(detail::scan_sign_changes(f, 1.0, 0, 1e-14), std::invalid_argument);
    CHECK_THROWS_AS(detail::scan_sign_changes(f, 1.0, 512, 0.0), std::invalid_argument);
}

TEST_CASE("single Juddian root with a closed-form location") {
    // K_1 at bias omega is linear in g^2: root at g^2 = (2 - delta^2/4)/4
    const auto scan = juddian_roots(1, 1, 0.3, 1.0);
    REQUIRE(scan.roots.size() == 1);
    const JuddianRoot& root = scan.roots[0];
    const double expect = std::sqrt((2.0 - 0.09 / 4.0) / 4.0);
    CHECK(std::abs(root.g_star - expect) <= 1e-13);
    CHECK(root.energy == doctest::Approx(1.5 - expect * expect).epsilon(1e-12));
    CHECK(root.rescaled_energy == 1.5);  // exact by construction
    CHECK(!root.certified);
    CHECK(std::isnan(root.gap));
}

TEST_CASE("two Juddian roots of the second pair at zero bias") {
    const auto scan = juddian_roots(2, 0, 1.0, 1.0);
    REQUIRE(scan.roots.size() == 2);
    CHECK(std::abs(scan.roots[0].g_star - 0.33232814639060750152) <= 5e-14);
    CHECK(std::abs(scan.roots[1].g_star - 0.89208071558384387612) <= 5e-14);
    CHECK(scan.diagnostics.empty());
}

TEST_CASE("zero-splitting roots sit at the Laguerre zeros") {
    const auto scan = juddian_roots(2, 0, 0.0, 1.0);
    REQUIRE(scan.roots.size() == 2);
    // zeros of L_2(4u): u = (2 -+ sqrt2)/4
    CHECK(std::abs(scan.roots[0].g_star - 0.38268343236508977173) <= 1e-13);
    CHECK(std::abs(scan.roots[1].g_star - 0.92387953251128675613) <= 1e-13);
}

TEST_CASE("level zero has no constraint roots") {
    CHECK(juddian_roots(0, 0, 1.0, 1.0).roots.empty());
    CHECK(juddian_roots(0, 1, 0.5, 1.0).roots.empty());
}

TEST_CASE("certification accepts true doublets and respects its tolerance") {
    JuddianScanOptions opts;
    opts.g_max = 1.2;
    opts.certify = true;
    const auto scan = juddian_roots(2, 0, 1.0, 1.0, opts);
    REQUIRE(scan.roots.size() == 2);
    for (const JuddianRoot& root : scan.roots) {
        CHECK(root.certified);
        CHECK(root.gap < 1e-10);
    }
    // an unreachable gap tolerance flips the verdict but keeps the gap
    opts.certify_gap_tol = 1e-16;
    const auto strict = juddian_roots(2, 0, 1.0, 1.0, opts);
    REQUIRE(strict.roots.size() == 2);
    for (const JuddianRoot& root : strict.roots) {
        CHECK(!root.certified);
        CHECK(std::isfinite(root.gap));
    }
}

TEST_CASE("scan options are validated") {
    JuddianScanOptions opts;
    opts.g_max = 0.0;
    CHECK_THROWS_AS(juddian_roots(1, 0, 1.0, 1.0, opts), std::invalid_argument);
    CHECK_THROWS_AS(juddian_roots(-1, 0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(juddian_roots(1, -1, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(juddian_roots(1, 0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(juddian_roots(1, 0, 1.0, 0.0), std::invalid_argument);
}
