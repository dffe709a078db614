#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cube.hpp"
#include "dualnorm.hpp"
#include "kernel.hpp"
#include "util.hpp"

using namespace cubelab;

namespace {

CubeFunction random_function(int n, Rng& rng) {
    std::vector<double> v(std::size_t{1} << n);
    for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
    return CubeFunction(n, std::move(v));
}

double max_abs_diff(const CubeFunction& a, const CubeFunction& b) {
    REQUIRE(a.values.size() == b.values.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

double max_abs(const CubeFunction& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

// g = min(x1,x2) = (x1 x2 + x1 + x2 - 1)/2; the recurring worked example.
CubeFunction min_x1_x2() {
    // masks: 0 -> (1,1), 1 -> (-1,1), 2 -> (1,-1), 3 -> (-1,-1)
    return CubeFunction(2, {1.0, -1.0, -1.0, -1.0});
}

}  // namespace

TEST_CASE("walsh transform basics") {
    CubeFunction one = CubeFunction::constant(2, 1.0);
    WalshSpectrum s = walsh_transform(one);
    CHECK(s.coeffs[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.coeffs[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.coeffs[2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.coeffs[3] == doctest::Approx(0.0).epsilon(1e-15));

    CubeFunction x1 = CubeFunction::monomial(1, 0b1);
    WalshSpectrum s1 = walsh_transform(x1);
    CHECK(s1.coeffs[0] == doctest::Approx(0.0));
    CHECK(s1.coeffs[1] == doctest::Approx(1.0));
}

TEST_CASE("walsh round trip at n=6") {
    Rng rng(99);
    CubeFunction f = random_function(6, rng);
    CHECK(max_abs_diff(inverse_walsh(walsh_transform(f)), f) < 1e-12);
}

TEST_CASE("parseval") {
    Rng rng(7);
    CubeFunction f = random_function(5, rng);
    WalshSpectrum s = walsh_transform(f);
    double coeff_sq = 0.0;
    for (double c : s.coeffs) coeff_sq += c * c;
    CHECK(coeff_sq == doctest::Approx(inner_product(f, f)).epsilon(1e-12));
}

TEST_CASE("partial derivative on monomials") {
    CHECK(max_abs_diff(partial(CubeFunction::monomial(1, 0b1), 1),
                       CubeFunction::constant(1, 1.0)) < 1e-15);
    CHECK(max_abs_diff(partial(CubeFunction::monomial(2, 0b10), 1),
                       CubeFunction::constant(2, 0.0)) < 1e-15);
    CHECK(max_abs_diff(partial(CubeFunction::monomial(2, 0b11), 1),
                       CubeFunction::monomial(2, 0b10)) < 1e-15);
    CHECK_THROWS_AS(partial(CubeFunction::constant(2, 1.0), 3), std::invalid_argument);
}

TEST_CASE("creation operator on monomials") {
    CHECK(max_abs_diff(creation(CubeFunction::constant(1, 1.0), 1),
                       CubeFunction::monomial(1, 0b1)) < 1e-15);
    CHECK(max_abs(creation(CubeFunction::monomial(1, 0b1), 1)) < 1e-15);
    CHECK(max_abs_diff(creation(CubeFunction::monomial(2, 0b10), 1),
                       CubeFunction::monomial(2, 0b11)) < 1e-15);
}

TEST_CASE("degree operators") {
    CubeFunction x12 = CubeFunction::monomial(2, 0b11);
    CubeFunction lap = laplacian(x12);
    for (std::size_t z = 0; z < 4; ++z)
        CHECK(lap.values[z] == doctest::Approx(-2.0 * x12.values[z]).epsilon(1e-14));

    CubeFunction x1 = CubeFunction::monomial(1, 0b1);
    CubeFunction pt = semigroup(x1, std::log(2.0));
    for (std::size_t z = 0; z < 2; ++z)
        CHECK(pt.values[z] == doctest::Approx(0.5 * x1.values[z]).epsilon(1e-14));
    CHECK_THROWS_AS(semigroup(x1, -0.1), std::invalid_argument);

    // inv_laplacian_p0(3 + x1) = -x1
    CubeFunction f(1, {4.0, 2.0});  // 3 + x1
    CubeFunction g = inv_laplacian_p0(f);
    CHECK(g.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(g.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("t_operator worked examples") {
    // g = x1 on n=1: single component identically 1
    VectorField v1 = t_operator(CubeFunction::monomial(1, 0b1));
    CHECK(max_abs_diff(v1.components[0], CubeFunction::constant(1, 1.0)) < 1e-14);

    // g = min(x1,x2): components (x2/4 + 1/2, x1/4 + 1/2) by hand Walsh calculus
    VectorField v2 = t_operator(min_x1_x2());
    CubeFunction expect1(2, {0.75, 0.75, 0.25, 0.25});   // x2/4 + 1/2
    CubeFunction expect2(2, {0.75, 0.25, 0.75, 0.25});   // x1/4 + 1/2
    CHECK(max_abs_diff(v2.components[0], expect1) < 1e-14);
    CHECK(max_abs_diff(v2.components[1], expect2) < 1e-14);

    // constants are annihilated
    VectorField vc = t_operator(CubeFunction::constant(3, 5.0));
    for (const auto& c : vc.components) CHECK(max_abs(c) < 1e-14);
}

TEST_CASE("sup_ell2_norm examples") {
    CHECK(sup_ell2_norm(t_operator(min_x1_x2())) ==
          doctest::Approx(3.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-12));

    VectorField zero;
    zero.n = 2;
    zero.components = {CubeFunction::constant(2, 0.0), CubeFunction::constant(2, 0.0)};
    CHECK(sup_ell2_norm(zero) == 0.0);

    VectorField pm;
    pm.n = 2;
    pm.components = {CubeFunction::monomial(2, 0b1), CubeFunction::monomial(2, 0b10)};
    for (double& v : pm.components[1].values) v = -v;
    CHECK(sup_ell2_norm(pm) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
}

TEST_CASE("curl residual") {
    // h_k = x_k d_k H with H = x1 x2: in Curl
    CubeFunction H = CubeFunction::monomial(2, 0b11);
    VectorField h;
    h.n = 2;
    h.components = {creation(partial(H, 1), 1), creation(partial(H, 2), 2)};
    CHECK(max_abs(curl_residual(h)) < 1e-12);

    // h = (1, 0): residual = x1
    VectorField h2;
    h2.n = 2;
    h2.components = {CubeFunction::constant(2, 1.0), CubeFunction::constant(2, 0.0)};
    CHECK(max_abs_diff(curl_residual(h2), CubeFunction::monomial(2, 0b1)) < 1e-14);

    // h = T(g): residual = P0 g, n = 6 random
    Rng rng(21);
    CubeFunction g = random_function(6, rng);
    CHECK(max_abs_diff(curl_residual(t_operator(g)), p0(g)) < 1e-12);
}

TEST_CASE("adjointness of partial and creation") {
    Rng rng(5);
    for (int n = 1; n <= 8; ++n) {
        CubeFunction f = random_function(n, rng);
        CubeFunction g = random_function(n, rng);
        for (int i = 1; i <= n; ++i)
            CHECK(inner_product(partial(f, i), g) ==
                  doctest::Approx(inner_product(f, creation(g, i))).epsilon(1e-12));
    }
}

TEST_CASE("semigroup composition and commutation") {
    Rng rng(13);
    for (int n : {2, 5, 8}) {
        CubeFunction f = random_function(n, rng);
        CHECK(max_abs_diff(semigroup(semigroup(f, 0.4), 0.35), semigroup(f, 0.75)) < 1e-12);
        const double t = 0.6;
        const double et = std::exp(-t);
        for (int i = 1; i <= n; ++i) {
            CubeFunction lhs = partial(semigroup(f, t), i);
            CubeFunction rhs = semigroup(partial(f, i), t);
            for (double& v : rhs.values) v *= et;
            CHECK(max_abs_diff(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("graph inequality ratio") {
    CHECK(graph_inequality_ratio(CubeFunction::monomial(1, 0b1)) ==
          doctest::Approx(1.0).epsilon(1e-14));

    CubeFunction F = inv_laplacian_p0(min_x1_x2());
    CHECK(graph_inequality_ratio(F) ==
          doctest::Approx(3.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-12));

    CHECK_THROWS_AS(graph_inequality_ratio(CubeFunction::constant(3, 2.0)),
                    std::invalid_argument);
}

TEST_CASE("graph inequality ratio stays below pi/2 and below C_dual,n") {
    // per-dimension suprema over random samples vs the computed dual constant
    Rng rng(1234);
    std::vector<double> sup(9, 0.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 1 + static_cast<int>(rng.raw() % 8);
        const double r = graph_inequality_ratio(random_function(n, rng));
        CHECK(r < std::numbers::pi / 2.0);
        sup[static_cast<std::size_t>(n)] = std::max(sup[static_cast<std::size_t>(n)], r);
    }
    MultistartConfig cfg;
    cfg.restarts = 60;
    const SphereVector* warm = nullptr;
    SphereVector prev;
    for (int n = 1; n <= 8; ++n) {
        DualNormReport rep = multistart(n, cfg, warm);
        CHECK(sup[static_cast<std::size_t>(n)] <= rep.value + 1e-9);
        prev = rep.lambda;
        warm = &prev;
    }
}
