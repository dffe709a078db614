#pragma once

#include <cstdint>
#include <vector>

namespace cubelab {

// Real-valued function on {-1,1}^n, stored by vertex bitmask.
// Bit i of the mask set means x_i = -1, so the all-ones vertex is mask 0
// and popcount(mask) is the Hamming distance to it.
struct CubeFunction {
    int n = 0;
    std::vector<double> values;  // length 2^n

    CubeFunction() = default;
    CubeFunction(int dim, std::vector<double> vals);

    static CubeFunction constant(int n, double c);
    static CubeFunction monomial(int n, std::uint32_t subset);  // x^S

    std::size_t size() const { return values.size(); }
    double mean() const;
};

// Walsh coefficients indexed by subset mask S: f = sum_S coeffs[S] * x^S,
// coeffs[S] = E[f * x^S].
struct WalshSpectrum {
    int n = 0;
    std::vector<double> coeffs;
};

struct VectorField {
    int n = 0;
    std::vector<CubeFunction> components;  // size n
};

WalshSpectrum walsh_transform(const CubeFunction& f);
CubeFunction inverse_walsh(const WalshSpectrum& s);

// E[f*g] over the uniform measure.
double inner_product(const CubeFunction& f, const CubeFunction& g);

// d_i f = (f|x_i=1 - f|x_i=-1)/2; coordinates are 1-based.
CubeFunction partial(const CubeFunction& f, int i);
// Adjoint of partial: x^S -> x_i x^S for i not in S, 0 otherwise.
CubeFunction creation(const CubeFunction& f, int i);

CubeFunction laplacian(const CubeFunction& f);            // x^S -> -|S| x^S
CubeFunction semigroup(const CubeFunction& f, double t);  // x^S -> e^{-t|S|} x^S
CubeFunction inv_laplacian_p0(const CubeFunction& f);     // x^S -> -x^S/|S|, constant killed
CubeFunction p0(const CubeFunction& f);                   // f - Ef

VectorField gradient(const CubeFunction& f);

// T g = integral of grad P_t g over t in [0,inf): component i maps
// x^S to x^{S\{i}}/|S| for i in S.
VectorField t_operator(const CubeFunction& g);

double sup_ell2_norm(const VectorField& v);

// sum_k creation(h_k, k); identically zero iff h lies in the Curl space.
CubeFunction curl_residual(const VectorField& h);

// ||grad F||_{Linf(l2)} / inf_a ||Lap F + a||_inf with midrange centering.
// Throws on constant F.
double graph_inequality_ratio(const CubeFunction& F);

}  // namespace cubelab
