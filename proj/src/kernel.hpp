#pragma once

#include <span>
#include <string>
#include <vector>

#include "cube.hpp"
#include "rational.hpp"

namespace cubelab {

// Unit vector on the euclidean sphere; the decision variable of all the
// norm maximizations.
struct SphereVector {
    int n = 0;
    std::vector<double> coords;

    SphereVector() = default;
    SphereVector(int dim, std::vector<double> c);  // validates ||.||_2 = 1 to 1e-12

    static SphereVector normalized(std::vector<double> c);  // rescales, throws on zero
    static SphereVector axis(int n, int i);                 // e_i, 1-based
    static SphereVector uniform(int n);
};

// Entries m_{i,z} of the matrix of T, compressed by (Hamming weight, sign of z_i):
//   plus[k]  = int_0^{1/2} t^k (1-t)^(n-k-1) dt      (z_i = +1, d(z) = k, 0 <= k <= n-1)
//   minus[k] = -int_0^{1/2} t^(k-1) (1-t)^(n-k) dt   (z_i = -1, d(z) = k, 1 <= k <= n)
// Exact rationals with float mirrors for the hot loops.
struct KernelTable {
    int n = 0;
    std::vector<Rational> plus_exact;   // index k = 0..n-1
    std::vector<Rational> minus_exact;  // index k = 1..n ([0] unused, zero)
    std::vector<double> plus_f;
    std::vector<double> minus_f;
    // alpha_k = (plus[k]-minus[k])/2, beta_k = (plus[k]+minus[k])/2 so that
    // m_{i,z} = beta_{d(z)} + alpha_{d(z)} z_i; boundary entries padded with 0.
    std::vector<double> alpha_f;
    std::vector<double> beta_f;

    double entry(int weight, int sign) const;  // sign = +1 or -1
    std::string to_json() const;               // numerator/denominator strings
};

KernelTable kernel_table(int n);  // 1 <= n <= 30

// Upper tail of Binomial(n,1/2) beyond k: Phi_n(k) = 2^-n sum_{r=k+1..n} C(n,r).
struct BinomialTail {
    long long n = 0;
    long long k = 0;
    bool has_exact = false;
    Rational exact;
    double log_value = 0.0;  // log Phi_n(k); -inf when the tail is empty

    double value() const;
};

// k may be -1 (tail = 1). Exact rational kept for n <= 64; log-space beyond.
BinomialTail phi_tail(long long n, long long k);

// Phi_n(k) for k = -1..n as doubles in one pass (index k+1), Kahan-summed.
std::vector<double> phi_tail_row(long long n);

// Convolution form of T: (Tg)_i(x) = x_i sum_z m_{i,z} g(z*x).
// Agrees with t_operator componentwise.
VectorField apply_kernel(const KernelTable& table, const CubeFunction& g);

// ||M^T lambda||_1 = sum over all 2^n columns z of |sum_i lambda_i m_{i,z}|,
// enumerated in reflected Gray-code order with O(1) work per column.
double objective(const KernelTable& table, const SphereVector& lambda);

// Dense n x 2^n matrix in column-major vertex order; test oracle, n <= 6.
std::vector<double> dense_matrix(const KernelTable& table);

}  // namespace cubelab
