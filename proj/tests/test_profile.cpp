#include <doctest.h>

#include <cmath>
#include <numbers>

#include "profile.hpp"
#include "util.hpp"

using namespace cubelab;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
}

TEST_CASE("quantile inverts the cdf") {
    for (double x : {1e-10, 1e-6, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0 - 1e-6, 1.0 - 1e-10}) {
        CHECK(std::abs(gauss::cdf(gauss::quantile(x)) - x) <= 1e-13 * std::max(x, 1.0 - x));
    }
    CHECK(gauss::quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(gauss::quantile(0.0), std::invalid_argument);
}

TEST_CASE("profile worked values") {
    ProfileTriple t = profile_eval(0.5);
    CHECK(t.value == doctest::Approx(1.0 / kSqrt2Pi).epsilon(1e-13));
    CHECK(t.d1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.d2 == doctest::Approx(-kSqrt2Pi).epsilon(1e-12));

    // golden from an independent normal-distribution evaluation
    CHECK(profile_eval(0.75).value == doctest::Approx(0.31777657268410703).epsilon(1e-12));

    CHECK_THROWS_AS(profile_eval(0.0), std::invalid_argument);
    CHECK_THROWS_AS(profile_eval(1.0), std::invalid_argument);
}

TEST_CASE("profile symmetry and curvature identity on a grid") {
    for (int i = 0; i < 10000; ++i) {
        const double x = 1e-6 + (1.0 - 2e-6) * i / 9999.0;
        const double I = gauss::profile(x);
        CHECK(std::abs(I - gauss::profile(1.0 - x)) < 1e-12);
        CHECK(std::abs(gauss::profile_d2(x) * I + 1.0) < 1e-9);
    }
}

TEST_CASE("derivatives agree with finite differences (independent oracle)") {
    // the reported I' and I'' are closed forms; check them against central
    // differences of I itself away from the endpoints
    const double h = 1e-4;
    for (int i = 1; i <= 18; ++i) {
        const double x = 0.05 * i;
        const double I0 = gauss::profile(x);
        const double Ip = gauss::profile(x + h);
        const double Im = gauss::profile(x - h);
        const double fd1 = (Ip - Im) / (2.0 * h);
        const double fd2 = (Ip - 2.0 * I0 + Im) / (h * h);
        CHECK(std::abs(fd1 - gauss::profile_d1(x)) < 1e-6);
        CHECK(std::abs(fd2 - gauss::profile_d2(x)) < 1e-4);
    }
}

TEST_CASE("two-point defect: zero on the diagonal, sign change at sqrt(2pi)") {
    CHECK(two_point_defect(0.3, 0.3, 5.0) == 0.0);
    CHECK(two_point_defect(0.3, 0.3, kSqrt2Pi) == 0.0);
    // k slightly above sqrt(2pi) fails near a = b = 1/2
    CHECK(two_point_defect(0.4995, 0.5005, kSqrt2Pi + 0.01) < 0.0);
    CHECK_THROWS_AS(two_point_defect(0.0, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("two-point defect nonnegative at k = sqrt(2pi) on a dense grid") {
    // 2001 x 2001 over (0.0005, 0.9995)^2, profile precomputed per row
    const int grid = 2001;
    std::vector<double> xs(grid), I(grid), dI(grid);
    for (int i = 0; i < grid; ++i) {
        xs[static_cast<std::size_t>(i)] = 0.0005 + 0.999 * i / (grid - 1);
        ProfileTriple t = profile_eval(xs[static_cast<std::size_t>(i)]);
        I[static_cast<std::size_t>(i)] = t.value;
        dI[static_cast<std::size_t>(i)] = t.d1;
    }
    double mn = 0.0;
    for (int ia = 0; ia < grid; ++ia)
        for (int ib = 0; ib < grid; ++ib) {
            const double diff = xs[static_cast<std::size_t>(ia)] - xs[static_cast<std::size_t>(ib)];
            const double d = I[static_cast<std::size_t>(ib)] - I[static_cast<std::size_t>(ia)] +
                             dI[static_cast<std::size_t>(ib)] * diff -
                             0.5 * kSqrt2Pi * diff * diff;
            if (d < mn) mn = d;
        }
    CHECK(mn >= -1e-12);
}

TEST_CASE("curvature-weighted two-point inequality always fails") {
    for (double c : {1.0, 0.01, 10.0}) {
        CurvatureWitness w = two_point_curvature_fails(c);
        CHECK(w.value < 0.0);
        CHECK(w.a == 0.5);
        CHECK(w.b <= 1e-6);  // the scan returns the smallest-b witness
        CHECK(w.a != w.b);
    }
    CHECK_THROWS_AS(two_point_curvature_fails(0.0), std::invalid_argument);
}

TEST_CASE("M_B functional") {
    const int grid = 4001;  // odd count keeps x = 1/2 on the grid
    std::vector<double> xq(grid), q(grid), q2(grid), bi(grid), bi2(grid);
    for (int i = 0; i < grid; ++i) {
        const double x = (i + 1) / static_cast<double>(grid + 1);
        xq[static_cast<std::size_t>(i)] = x;
        q[static_cast<std::size_t>(i)] = x * (1.0 - x);
        q2[static_cast<std::size_t>(i)] = -2.0;
        bi[static_cast<std::size_t>(i)] = gauss::profile(x);
        bi2[static_cast<std::size_t>(i)] = gauss::profile_d2(x);
    }
    CHECK(mb_functional(q, q2) == 0.125);  // exactly
    CHECK(mb_functional(bi, bi2) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-9));

    // scale invariance: M_(cB) = M_B
    std::vector<double> q_scaled(q), q2_scaled(q2);
    for (double& v : q_scaled) v *= 2.0;
    for (double& v : q2_scaled) v *= 2.0;
    CHECK(mb_functional(q_scaled, q2_scaled) == doctest::Approx(0.125).epsilon(1e-15));

    // x(1-x) minimizes M_B within the candidate family x^a (1-x)^a
    const double m_quad = 0.125;
    for (double a : {0.6, 0.8, 1.2, 1.4}) {
        std::vector<double> b(grid), b2(grid);
        bool concave = true;
        for (int i = 0; i < grid; ++i) {
            const double x = xq[static_cast<std::size_t>(i)];
            b[static_cast<std::size_t>(i)] = std::pow(x * (1.0 - x), a);
            // d2/dx2 of (x(1-x))^a
            const double u = x * (1.0 - x);
            const double du = 1.0 - 2.0 * x;
            const double d2u = -2.0;
            b2[static_cast<std::size_t>(i)] =
                a * std::pow(u, a - 2.0) * ((a - 1.0) * du * du + u * d2u);
            if (-b2[static_cast<std::size_t>(i)] <= 0.0) concave = false;
        }
        if (!concave) continue;  // outside the admissible family on this grid
        CHECK(mb_functional(b, b2) >= m_quad - 1e-12);
    }

    // nonconcave candidate rejected
    std::vector<double> bad(q), bad2(q2);
    bad2[100] = 0.5;
    CHECK_THROWS_AS(mb_functional(bad, bad2), std::invalid_argument);
}

TEST_CASE("two-valued functions constant") {
    TwoValueResult r = two_value_constant();
    CHECK(r.value == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-9));
    CHECK(r.argmax == doctest::Approx(0.5).epsilon(1e-9));
    // p = 1/2 evaluates to sqrt(pi/2) exactly (up to profile precision)
    CHECK(0.5 / gauss::profile(0.5) == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-13));
    // the ratio at p = 0.99 is far below the max
    CHECK(2.0 * 0.99 * 0.01 / gauss::profile(0.99) < r.value);
}

TEST_CASE("bobkov inequality") {
    // constant 1/2: zero defect
    CHECK(bobkov_check(CubeFunction::constant(3, 0.5)) == doctest::Approx(0.0).epsilon(1e-14));

    // indicators: E|grad f| >= I(p)
    Rng rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.raw() % 6);
        std::vector<double> v(std::size_t{1} << n);
        for (double& x : v) x = rng.uniform() < 0.5 ? 0.0 : 1.0;
        CubeFunction f(n, v);
        CHECK(bobkov_check(f) >= -1e-12);
    }

    // random [0,1]-valued suite
    for (int trial = 0; trial < 10000; ++trial) {
        Rng rng2(9000 + static_cast<std::uint64_t>(trial));
        const int n = 1 + static_cast<int>(rng2.raw() % 6);
        std::vector<double> v(std::size_t{1} << n);
        for (double& x : v) x = rng2.uniform();
        CHECK(bobkov_check(CubeFunction(n, std::move(v))) >= -1e-12);
    }

    CubeFunction out_of_range(1, {0.5, 1.5});
    CHECK_THROWS_AS(bobkov_check(out_of_range), std::invalid_argument);
}

TEST_CASE("symmetric set constants") {
    SymmetricSetReport r = symmetric_set_constants();
    CHECK(r.c1 == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-12));
    CHECK(r.c2 == doctest::Approx(0.55629240948597479).epsilon(1e-10));  // 1/(4 sqrt2 I(3/4))
    CHECK(r.c2 < r.c1);
    CHECK(r.ana_max == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-9));
    CHECK(r.ana_argmax == doctest::Approx(0.5).epsilon(1e-9));
}
