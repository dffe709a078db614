#include "profile.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cubelab {

namespace gauss {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993;

// Acklam's rational approximation to the normal quantile, |rel err| < 1.15e-9,
// then Halley refinement against the erfc-based cdf below.
double quantile_estimate(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}
}  // namespace

double cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("gauss::quantile: u outside (0,1)");
    double x = quantile_estimate(u);
    // three Halley steps: e = Phi(x)-u, step = e/phi adjusted for curvature
    for (int it = 0; it < 3; ++it) {
        const double e = cdf(x) - u;
        const double f = pdf(x);
        if (f <= 0.0) break;
        const double r = e / f;
        x -= r / (1.0 + 0.5 * x * r);
    }
    return x;
}

double profile(double x) {
    if (x <= 0.0 || x >= 1.0) {
        if (x == 0.0 || x == 1.0) return 0.0;
        throw std::invalid_argument("gauss::profile: x outside [0,1]");
    }
    return pdf(quantile(x));
}

double profile_d1(double x) { return -quantile(x); }

double profile_d2(double x) { return -1.0 / profile(x); }

}  // namespace gauss

ProfileTriple profile_eval(double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("profile_eval: x outside (0,1)");
    const double q = gauss::quantile(x);
    const double I = gauss::pdf(q);
    return ProfileTriple{I, -q, -1.0 / I};
}

double two_point_defect(double a, double b, double k) {
    if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
        throw std::invalid_argument("two_point_defect: endpoints excluded");
    const double Ib = gauss::profile(b);
    const double Ia = gauss::profile(a);
    const double dIb = gauss::profile_d1(b);
    return Ib - Ia - dIb * (b - a) - 0.5 * k * (a - b) * (a - b);
}

CurvatureWitness two_point_curvature_fails(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("two_point_curvature_fails: c must be positive");
    const double a = 0.5;
    const double Ia = gauss::profile(a);
    for (int e = 12; e >= 2; --e) {
        const double b = std::pow(10.0, -e);
        const double Ib = gauss::profile(b);
        const double dIb = gauss::profile_d1(b);
        const double d2Ib = -1.0 / Ib;
        const double v = Ib - Ia - dIb * (b - a) + 0.5 * c * d2Ib * (a - b) * (a - b);
        if (v < 0.0 && a != b) return CurvatureWitness{a, b, v};
    }
    throw std::logic_error("two_point_curvature_fails: no witness found");
}

double mb_functional(std::span<const double> b_values, std::span<const double> b_second_values) {
    if (b_values.empty() || b_values.size() != b_second_values.size())
        throw std::invalid_argument("mb_functional: mismatched grids");
    double max_b = b_values[0];
    for (double v : b_values) max_b = std::max(max_b, v);
    double min_neg_second = std::numeric_limits<double>::infinity();
    for (double v : b_second_values) {
        const double neg = -v;
        if (neg <= 0.0) throw std::invalid_argument("mb_functional: candidate is not concave");
        min_neg_second = std::min(min_neg_second, neg);
    }
    return max_b / min_neg_second;
}

TwoValueResult two_value_constant(long long grid) {
    if (grid < 4) throw std::invalid_argument("two_value_constant: grid too small");
    if (grid % 2) ++grid;  // keep p = 1/2 on the grid
    TwoValueResult best{0.0, 0.0};
    for (long long i = 1; i < grid; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(grid);
        const double r = 2.0 * p * (1.0 - p) / gauss::profile(p);
        if (r > best.value) best = TwoValueResult{r, p};
    }
    return best;
}

double bobkov_check(const CubeFunction& f) {
    for (double v : f.values)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("bobkov_check: f outside [0,1]");
    const VectorField g = gradient(f);
    const std::size_t m = f.values.size();
    double lhs = 0.0;
    for (std::size_t z = 0; z < m; ++z) {
        double grad_sq = 0.0;
        for (const auto& c : g.components) grad_sq += c.values[z] * c.values[z];
        const double I = gauss::profile(std::min(1.0, std::max(0.0, f.values[z])));
        lhs += std::sqrt(I * I + grad_sq);
    }
    lhs /= static_cast<double>(m);
    return lhs - gauss::profile(f.mean());
}

SymmetricSetReport symmetric_set_constants(long long grid) {
    const double sqrt2 = std::numbers::sqrt2;
    SymmetricSetReport r{};
    r.c1 = 1.0 / (2.0 * sqrt2 * gauss::profile(0.5));
    r.c2 = 1.0 / (4.0 * sqrt2 * gauss::profile(0.75));
    if (!(r.c2 < r.c1)) throw std::logic_error("symmetric_set_constants: c2 >= c1");
    if (grid % 2) ++grid;
    r.ana_max = 0.0;
    for (long long i = 1; i < grid; ++i) {
        const double alpha = static_cast<double>(i) / static_cast<double>(grid);
        const double v = 2.0 * alpha * (1.0 - alpha) / (sqrt2 * gauss::profile(alpha));
        if (v > r.ana_max) {
            r.ana_max = v;
            r.ana_argmax = alpha;
        }
    }
    return r;
}

}  // namespace cubelab
