#pragma once

#include <span>
#include <vector>

#include "kernel.hpp"

namespace cubelab {

struct SeriesPoint {
    long long n = 0;
    double value = 0.0;
    double reference = 0.0;
    double gap = 0.0;  // value - reference
};

struct MajorityOdd {
    double grad_norm = 0.0;  // ||grad f_n||_1 -> 2/sqrt(pi)
    double ratio = 0.0;      // E|f_n| / ||grad f_n||_1 -> sqrt(pi)/2
};
MajorityOdd majority_odd(long long n);  // n odd, n <= 10^4

struct MajorityEven {
    double grad_norm = 0.0;  // -> (1+sqrt2)/sqrt(2 pi)
    double mean_abs = 0.0;   // 1 - 2^-n C(n, n/2)
    double ratio = 0.0;      // -> sqrt(pi) sqrt2/(sqrt2+1)
};
MajorityEven majority_even(long long n);  // n even

// E|eps_1 + ... + eps_n| / sqrt(n) for odd n, exact closed form.
double clt_bernoulli(long long n);

struct L1Growth {
    double value = 0.0;      // S_n = sum_z max_i |m_{i,z}| via closed forms
    double companion = 0.0;  // the integral form, evaluated exactly as a sum
};
L1Growth l1_growth(long long n);  // n <= 10^4

// sum_{k=1}^{n-1} Phi_n(k)/sqrt(k(n-k)) -> pi/2.
double lp_sum(long long n);  // n <= 10^6

// Conditional covariance of X_i^k = z_i/(1+(1-2k/n) z_i) on the weight-k
// slice: a rank-one perturbation of a multiple of the identity.
struct GramMatrix {
    int n = 0;
    int k = 0;
    Rational diag;           // n^2/(4k(n-k))
    Rational offdiag;        // -diag/(n-1)
    Rational spectral_norm;  // diag * n/(n-1)
};
GramMatrix gram_matrix(int n, int k);  // 1 <= k <= n-1

struct GramReport {
    GramMatrix closed_form;
    bool exact_match = false;  // slice enumeration reproduces all three moments exactly
};
GramReport gram_check(int n, int k);  // n <= 14 (enumeration side)

// E[ |sum_i lambda_i X_i^k| | d(z) = k ] over the weight-k slice.
// k = 0 is allowed (every z_i = +1).
double slice_mean_abs(int n, int k, std::span<const double> lambda);

// The conditional-expectation sum of the first closed formula:
// (1/(n 2^(n-1))) sum_{k=0}^{n-1} sum_{r>k} C(n,r) E[|sum lambda X^k| | d=k].
double first_formula(int n, std::span<const double> lambda);

// |objective - first_formula|; always <= 2/sqrt(n+1).
double decomposition_gap(int n, const SphereVector& lambda);

// Truncated second formula (2/n) sum_{k=0}^{n/2} E[...|d=k], with the k = 0
// term defined as 0.
double cdsecond_value(int n, const SphereVector& lambda);

}  // namespace cubelab
