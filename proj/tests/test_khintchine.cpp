#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cube.hpp"
#include "khintchine.hpp"
#include "util.hpp"

using namespace cubelab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("biased distribution invariants") {
    for (double p : {0.5, 0.6, 0.75, 0.9, 0.999}) {
        BiasedDist d = BiasedDist::from_p(p);
        CHECK(std::abs(d.prob_plus * d.v_plus + (1.0 - d.prob_plus) * d.v_minus) < 1e-15);
        CHECK(std::abs(d.moment(2) - 1.0) < 1e-15);
        CHECK(d.moment(4) >= 1.0);
    }
    CHECK_THROWS_AS(BiasedDist::from_p(1.0), std::invalid_argument);
    CHECK_THROWS_AS(BiasedDist::from_p(0.3), std::invalid_argument);
    // time parameterization: t = ln 2 gives p = 3/4
    CHECK(BiasedDist::from_time(std::log(2.0)).p == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("exact_mean_abs worked values") {
    BiasedDist d34 = BiasedDist::from_p(0.75);
    CHECK(exact_mean_abs(d34, std::vector<double>{1.0}) ==
          doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

    BiasedDist d12 = BiasedDist::from_p(0.5);
    CHECK(exact_mean_abs(d12, std::vector<double>{1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(exact_mean_abs(d12, std::vector<double>{r, r}) == doctest::Approx(r).epsilon(1e-14));
}

TEST_CASE("exact_mean_abs never exceeds 1") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.raw() % 10);
        const double p = 0.5 + 0.45 * rng.uniform();
        BiasedDist d = BiasedDist::from_p(p);
        CHECK(exact_mean_abs(d, random_unit_vector(n, rng)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("q_exact_small values at p = 3/4") {
    BiasedDist d = BiasedDist::from_p(0.75);
    CHECK(q_exact_small(d, 1) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
    // frozen from the enumeration oracle itself (n = 2 attains the same
    // value as n = 3, 4 at this bias)
    const double q2 = q_exact_small(d, 2);
    CHECK(q2 == doctest::Approx(0.91855865354369177).epsilon(1e-12));
    for (int n = 2; n <= 4; ++n) {
        const double q = q_exact_small(d, n);
        CHECK(q < 1.0);
        CHECK(q >= q2 - 1e-12);
    }

    BiasedDist half = BiasedDist::from_p(0.5);
    CHECK(q_exact_small(half, 2) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(q_exact_small(half, 5), std::invalid_argument);
}

TEST_CASE("q_lower matches the exact oracle after multistart") {
    MultistartConfig cfg;
    cfg.restarts = 24;
    BiasedDist d = BiasedDist::from_p(0.75);
    for (int n = 1; n <= 4; ++n) {
        SphereAscentResult r = q_lower(d, n, cfg);
        CHECK(std::abs(r.value - q_exact_small(d, n)) < 1e-10);
    }
    // p = 1/2: the coordinate vector already attains 1
    BiasedDist half = BiasedDist::from_p(0.5);
    for (int n : {1, 3, 6}) {
        SphereAscentResult r = q_lower(half, n, cfg);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("cumulant moments: closed forms and enumeration oracle") {
    BiasedDist half = BiasedDist::from_p(0.5);
    MomentReport a = cumulant_moments(half, std::vector<double>{1.0});
    CHECK(a.ell4 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.var_ell2 == doctest::Approx(0.0).epsilon(1e-14));

    const double r = 1.0 / std::numbers::sqrt2;
    MomentReport b = cumulant_moments(half, std::vector<double>{r, r});
    CHECK(b.ell4 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(b.var_ell2 == doctest::Approx(1.0).epsilon(1e-13));

    // n = 6 random lambda vs direct weighted enumeration
    Rng rng(17);
    BiasedDist d = BiasedDist::from_p(0.75);
    std::vector<double> lam = random_unit_vector(6, rng);
    MomentReport m = cumulant_moments(d, lam);
    double e2 = 0, e4 = 0, e6 = 0, e8 = 0;
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        double s = 0.0, w = 1.0;
        for (int i = 0; i < 6; ++i) {
            const bool minus = (mask >> i) & 1;
            s += lam[static_cast<std::size_t>(i)] * (minus ? d.v_minus : d.v_plus);
            w *= minus ? 0.25 : 0.75;
        }
        const double s2 = s * s;
        e2 += w * s2;
        e4 += w * s2 * s2;
        e6 += w * s2 * s2 * s2;
        e8 += w * s2 * s2 * s2 * s2;
    }
    CHECK(m.ell2 == doctest::Approx(e2).epsilon(1e-12));
    CHECK(m.ell4 == doctest::Approx(e4).epsilon(1e-12));
    CHECK(m.ell6 == doctest::Approx(e6).epsilon(1e-12));
    CHECK(m.ell8 == doctest::Approx(e8).epsilon(1e-12));

    // cross-check: E ell^4 = sum lambda^4 (E xi^4 - 3) + 3
    double l4 = 0.0;
    for (double x : lam) l4 += x * x * x * x;
    CHECK(m.ell4 == doctest::Approx(l4 * (d.moment(4) - 3.0) + 3.0).epsilon(1e-12));
    CHECK(m.x4 == doctest::Approx(m.ell8 - 4.0 * m.ell6 + 6.0 * m.ell4 - 3.0).epsilon(1e-12));
}

TEST_CASE("variance lower bound 2(1 - sum lambda^4)") {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.raw() % 12);
        const double p = 0.5 + 0.45 * rng.uniform();
        BiasedDist d = BiasedDist::from_p(p);
        std::vector<double> lam = random_unit_vector(n, rng);
        double l4 = 0.0;
        for (double x : lam) l4 += x * x * x * x;
        MomentReport m = cumulant_moments(d, lam);
        CHECK(m.var_ell2 >= 2.0 * (1.0 - l4) - 1e-12);
    }
}

TEST_CASE("Paley-Zygmund at t = 1/2 against exact enumeration") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.raw() % 9);  // n <= 10
        const double p = 0.55 + 0.35 * rng.uniform();
        BiasedDist d = BiasedDist::from_p(p);
        std::vector<double> lam = random_unit_vector(n, rng);
        MomentReport m = cumulant_moments(d, lam);
        if (m.x2 <= 0.0) continue;
        const double threshold = 0.5 * std::sqrt(m.x2);
        double prob = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            double s = 0.0, w = 1.0;
            for (int i = 0; i < n; ++i) {
                const bool minus = (mask >> i) & 1;
                s += lam[static_cast<std::size_t>(i)] * (minus ? d.v_minus : d.v_plus);
                w *= minus ? (1.0 - p) : p;
            }
            if (std::abs(s * s - 1.0) >= threshold) prob += w;
        }
        CHECK(prob >= (9.0 / 16.0) / m.ratio_B - 1e-12);
    }
}

TEST_CASE("certificate at p = 3/4") {
    CertifiedBound c = certify_epsilon(0.75);
    CHECK(c.epsilon > 0.0);
    CHECK(c.q_upper < 1.0);
    CHECK(c.branch2 == doctest::Approx(std::sqrt(3.0) / 2.0 + 0.1).epsilon(1e-12));
    CHECK(c.branch2 < 0.97);
    // the two contradiction conditions hold strictly
    CHECK(2.0 * c.epsilon < 9.0 / (16.0 * c.b_bound));
    const double s = std::sqrt(c.epsilon + 2.0 * c.epsilon * c.epsilon);
    CHECK(s * (1.0 + s) < 0.07);
    // frozen golden for this implementation of the moment bound
    CHECK(c.epsilon == doctest::Approx(5.6841614437816322e-08).epsilon(1e-9));

    // sandwiched against the exact small-n oracle
    BiasedDist d = BiasedDist::from_p(0.75);
    for (int n = 1; n <= 4; ++n) CHECK(q_exact_small(d, n) <= c.q_upper + 1e-12);
}

TEST_CASE("certificate failure modes") {
    // branch 2 exceeds 1 when p is too close to 1/2 at theta = 0.99
    CHECK_THROWS_AS(certify_epsilon(0.6), CertificationError);
    CHECK_THROWS_AS(certify_epsilon(1.0), std::invalid_argument);
    CHECK_THROWS_AS(certify_epsilon(0.5), std::invalid_argument);
    // near p = 1 the eighth-moment bound blows up and the certified drop
    // underflows; recorded as failure rather than a vacuous q_upper = 1
    CHECK_THROWS_AS(certify_epsilon(0.97), CertificationError);
    // arithmetic check of the precondition boundary: 2 sqrt(p(1-p)) + 0.1 < 1
    const double p_ok = 0.75;
    CHECK(2.0 * std::sqrt(p_ok * (1.0 - p_ok)) + 0.1 < 1.0);
    const double p_bad = 0.6;
    CHECK(2.0 * std::sqrt(p_bad * (1.0 - p_bad)) + 0.1 >= 1.0);
}

TEST_CASE("improved bound machinery") {
    // quadrature self-check: integral of drho/sqrt(1-rho^2) = pi/2
    CHECK(std::abs(rho_quadrature_selfcheck(2000) - kPi / 2.0) < 1e-10);
    // certificates disabled: recovers the trivial pi/2 exactly
    CHECK(std::abs(improved_cdual_bound(1000, false) - kPi / 2.0) < 1e-8);
    // certificates on: strictly below pi/2 (margin is tiny; see ledger)
    const double b = improved_cdual_bound(1000, true);
    CHECK(b < kPi / 2.0);
    CHECK(b > kPi / 2.0 - 1e-8);
    CHECK_THROWS_AS(improved_cdual_bound(50), std::invalid_argument);
}

TEST_CASE("time-parameterized distribution matches the gradient flow (est1)") {
    // at the extremal pair the identity ||grad P_t g||_inf =
    // e^-t/sqrt(1-e^-2t) E|sum lambda xi^t| is exact
    for (double p : {0.75, 0.8}) {
        const double rho = 2.0 * p - 1.0;
        const double t = -std::log(rho);
        BiasedDist d = BiasedDist::from_time(t);
        CHECK(d.p == doctest::Approx(p).epsilon(1e-14));
        for (int n = 2; n <= 4; ++n) {
            std::vector<double> signs;
            SphereVector lam;
            q_exact_small(d, n, &signs, &lam);
            const double q = exact_mean_abs(d, lam.coords);
            CubeFunction g(n, signs);  // outcome mask == vertex mask
            const double lhs = sup_ell2_norm(gradient(semigroup(g, t)));
            const double rhs = std::exp(-t) / std::sqrt(1.0 - std::exp(-2.0 * t)) * q;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}
