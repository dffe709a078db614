#pragma once

#include <span>

#include "cube.hpp"

namespace cubelab {

// Standard normal machinery and the isoperimetric profile I = phi o Phi^{-1}.
// No external special-function dependency: Phi rides on erfc, the inverse is
// a rational initial guess refined by Newton steps against Phi itself.
namespace gauss {
double cdf(double x);        // Phi
double pdf(double x);        // phi
double quantile(double u);   // Phi^{-1} on (0,1)
double profile(double x);    // I on [0,1], 0 at the endpoints
double profile_d1(double x); // I' = -Phi^{-1}
double profile_d2(double x); // I'' = -1/I
}  // namespace gauss

struct ProfileTriple {
    double value;   // I
    double d1;      // I'
    double d2;      // I''
};

ProfileTriple profile_eval(double x);  // throws outside (0,1)

// I(b) - I(a) - I'(b)(b-a) - k (a-b)^2/2; nonnegative for every pair iff
// k <= sqrt(2 pi).
double two_point_defect(double a, double b, double k);

struct CurvatureWitness {
    double a;
    double b;
    double value;  // negative
};

// Witness that I(b) - I(a) - I'(b)(b-a) + (c/2) I''(b)(a-b)^2 fails for any
// c > 0: scan b over {1e-12, ..., 1e-2} with a = 1/2 and return the first
// (smallest-b) violation.
CurvatureWitness two_point_curvature_fails(double c);

// max B / min(-B'') over caller-sampled grids; throws when -B'' is not
// strictly positive somewhere (nonconcave candidate).
double mb_functional(std::span<const double> b_values, std::span<const double> b_second_values);

struct TwoValueResult {
    double value;
    double argmax;
};

// Grid-maximize 2p(1-p)/I(p) over (0,1); the maximum is sqrt(pi/2) at p=1/2.
TwoValueResult two_value_constant(long long grid = 200000);

// E[sqrt(I(f)^2 + |grad f|^2)] - I(E f) for f with values in [0,1];
// Bobkov's inequality says this is nonnegative.
double bobkov_check(const CubeFunction& f);

struct SymmetricSetReport {
    double c1;          // 1/(2 sqrt2 I(1/2)) = sqrt(pi)/2
    double c2;          // 1/(4 sqrt2 I(3/4))
    double ana_max;     // max over alpha of 2a(1-a)/(sqrt2 I(a))
    double ana_argmax;
};

SymmetricSetReport symmetric_set_constants(long long grid = 200000);

}  // namespace cubelab
