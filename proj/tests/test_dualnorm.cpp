#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dualnorm.hpp"
#include "util.hpp"

using namespace cubelab;

namespace {
const double kVal2 = 3.0 / (2.0 * std::numbers::sqrt2);  // C_dual,2 = 1.06066...
}

TEST_CASE("brute force oracle for tiny dimensions") {
    CubeFunction g1;
    CHECK(brute_force_norm(1, &g1) == doctest::Approx(1.0).epsilon(1e-14));
    // maximizer is g = x1 up to global sign: values (+1,-1) or (-1,+1)
    CHECK(g1.values[0] * g1.values[1] == doctest::Approx(-1.0));

    CHECK(brute_force_norm(2) == doctest::Approx(kVal2).epsilon(1e-13));
    CHECK(brute_force_norm(3) == doctest::Approx(brute_force_norm(2)).epsilon(1e-12));
    CHECK_THROWS_AS(brute_force_norm(5), std::invalid_argument);
}

TEST_CASE("n=2 brute-force maximizer is min(x1,x2) up to cube symmetry") {
    CubeFunction g;
    const double v = brute_force_norm(2, &g);
    CHECK(v == doctest::Approx(kVal2).epsilon(1e-13));
    // orbit of min(x1,x2) under signed permutations and global sign:
    // exactly one vertex value differs in sign from the rest
    double s = g.values[0] + g.values[1] + g.values[2] + g.values[3];
    CHECK(std::abs(std::abs(s) - 2.0) < 1e-12);
    for (double x : g.values) CHECK(std::abs(std::abs(x) - 1.0) < 1e-12);
}

TEST_CASE("alternating ascent on worked starts") {
    KernelTable t1 = kernel_table(1);
    AscentResult a1 = alternating_ascent(t1, SphereVector(1, {1.0}));
    CHECK(a1.value == doctest::Approx(1.0).epsilon(1e-14));

    // e1 is an exact fixed point of the map at n=2 (sign pattern (+,-,+,-)
    // reproduces e1), so the ascent stalls there at value 1; the uniform
    // start reaches the optimum in one sweep. Multistart covers both.
    KernelTable t2 = kernel_table(2);
    AscentResult stall = alternating_ascent(t2, SphereVector::axis(2, 1));
    CHECK(stall.value == doctest::Approx(1.0).epsilon(1e-13));

    AscentResult a2 = alternating_ascent(t2, SphereVector::uniform(2));
    CHECK(a2.value == doctest::Approx(kVal2).epsilon(1e-12));
    CHECK(std::abs(a2.lambda.coords[0]) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-9));
    CHECK(std::abs(a2.lambda.coords[1]) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-9));

    // fixed point: rerunning from the output moves the value by < 1e-13
    AscentResult again = alternating_ascent(t2, a2.lambda);
    CHECK(std::abs(again.value - a2.value) < 1e-13);
}

TEST_CASE("ascent value equals objective at the returned point") {
    Rng rng(3);
    KernelTable t = kernel_table(5);
    AscentResult a = alternating_ascent(t, SphereVector::normalized(random_unit_vector(5, rng)));
    CHECK(a.value == doctest::Approx(objective(t, a.lambda)).epsilon(1e-12));
}

TEST_CASE("multistart agrees with the enumeration oracle for n <= 4") {
    MultistartConfig cfg;
    cfg.restarts = 50;
    for (int n = 1; n <= 4; ++n) {
        DualNormReport rep = multistart(n, cfg);
        CHECK(rep.value == doctest::Approx(brute_force_norm(n)).epsilon(1e-12));
        CHECK(rep.certified);
        CHECK(rep.seed == 42);
    }
}

TEST_CASE("figure1 reproduces the plateau and the n=8 jump") {
    MultistartConfig cfg;  // default restarts 200+50n, seed 42
    auto rows = figure1(1, 8, cfg);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].value == doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 3; n <= 7; ++n)
        CHECK(std::abs(rows[static_cast<std::size_t>(n - 1)].value - rows[1].value) < 1e-9);
    CHECK(rows[7].value > rows[1].value + 1e-6);
    // monotone, inside [1, pi/2), below sqrt(pi/2)
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        CHECK(rows[i].value <= rows[i + 1].value + 1e-9);
    for (const auto& r : rows) {
        CHECK(r.value >= 1.0 - 1e-12);
        CHECK(r.value < std::sqrt(std::numbers::pi / 2.0));
    }
}

TEST_CASE("figure1 recorded goldens and the n <= 13 window") {
    // regenerated experiment values, frozen (drift above 1e-9 is a regression)
    MultistartConfig cfg;
    auto rows = figure1(1, 13, cfg);
    const double golden[] = {1.0,
                             1.0606601717798214,
                             1.0606601717798214,
                             1.0606601717798212,
                             1.0606601717798216,
                             1.0606601717798207,
                             1.0606601717798236,
                             1.0632317351607483,
                             1.0632317351607485,
                             1.0709883459282674,
                             1.0709883459282865,
                             1.0781561482610478,
                             1.0788918790398152};
    REQUIRE(rows.size() == 13);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(rows[i].value == doctest::Approx(golden[i]).epsilon(1e-9));
    // every entry below sqrt(pi/2) through n = 13
    for (const auto& r : rows) CHECK(r.value < std::sqrt(std::numbers::pi / 2.0));
}

TEST_CASE("multistart is deterministic given the seed") {
    MultistartConfig cfg;
    cfg.restarts = 30;
    cfg.seed = 7;
    DualNormReport a = multistart(5, cfg);
    DualNormReport b = multistart(5, cfg);
    CHECK(a.value == b.value);
    CHECK(a.total_iterations == b.total_iterations);
    for (int i = 0; i < 5; ++i)
        CHECK(a.lambda.coords[static_cast<std::size_t>(i)] ==
              b.lambda.coords[static_cast<std::size_t>(i)]);
    // and independent of the thread count
    cfg.threads = 2;
    DualNormReport c = multistart(5, cfg);
    CHECK(a.value == c.value);
}

TEST_CASE("duality: the maximizing sign vector realizes the norm through T") {
    for (int n = 1; n <= 4; ++n) {
        CubeFunction g;
        const double v = brute_force_norm(n, &g);
        CHECK(sup_ell2_norm(apply_kernel(kernel_table(n), g)) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("report json carries the lower-bound disclaimer") {
    MultistartConfig cfg;
    cfg.restarts = 10;
    DualNormReport rep5 = multistart(5, cfg);
    CHECK(!rep5.certified);
    CHECK(report_json(rep5).find("\"bound_kind\":\"lower\"") != std::string::npos);
    DualNormReport rep2 = multistart(2, cfg);
    CHECK(report_json(rep2).find("\"bound_kind\":\"exact\"") != std::string::npos);
}
