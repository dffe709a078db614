#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dualnorm.hpp"
#include "kernel.hpp"

namespace cubelab {

// Mean-zero unit-variance two-point law: value v_plus = sqrt((1-p)/p) with
// probability p, v_minus = -sqrt(p/(1-p)) with probability 1-p.
struct BiasedDist {
    double p = 0.5;
    double v_plus = 1.0;
    double v_minus = -1.0;
    double prob_plus = 0.5;

    static BiasedDist from_p(double p);        // p in [1/2, 1)
    static BiasedDist from_time(double t);     // p = (1 + e^-t)/2
    double moment(int j) const;                // E xi^j
    double abs_moment(int j) const;            // E |xi|^j
};

// E|sum_i lambda_i xi_i| by exact enumeration of the 2^n outcomes with
// product weights, Gray-code incremental sums. n <= 24.
double exact_mean_abs(const BiasedDist& d, std::span<const double> lambda);

struct SphereAscentResult {
    SphereVector lambda;
    double value = 0.0;
    long long iterations = 0;
};

// Best-found lower bound for sup_lambda E|sum lambda xi| at this n:
// lambda <- normalize(E[sign(<lambda,xi>) xi]) with multistart.
SphereAscentResult q_lower(const BiasedDist& d, int n, const MultistartConfig& config);

// Exact oracle for n <= 4: every candidate optimum is proportional to
// E[s(omega) xi(omega)] for a sign assignment s over the 2^n outcomes;
// enumerate all 2^(2^n) assignments.
double q_exact_small(const BiasedDist& d, int n, std::vector<double>* best_signs = nullptr,
                     SphereVector* best_lambda = nullptr);

// Moments of ell = sum lambda_i xi_i through order 8 via cumulants
// (kappa_j(ell) = sum_i lambda_i^j kappa_j(xi), Bell-polynomial recursion),
// valid for any n.
struct MomentReport {
    double p = 0.0;
    double ell2 = 0.0, ell4 = 0.0, ell6 = 0.0, ell8 = 0.0;
    double var_ell2 = 0.0;  // E ell^4 - 1
    double x2 = 0.0;        // E X^2 with X = |ell^2 - 1|
    double x4 = 0.0;        // E X^4
    double ratio_B = 0.0;   // E X^4 / (E X^2)^2
};
MomentReport cumulant_moments(const BiasedDist& d, std::span<const double> lambda);

// Rigorous upper bound q(p) <= q_upper < 1 with its audit trail.
struct CertifiedBound {
    double p = 0.0;
    double theta = 0.99;
    double epsilon = 0.0;      // certified drop: dispersed branch <= 1 - epsilon^2
    double b_bound = 0.0;      // B(p) of the Paley-Zygmund step
    double branch1 = 1.0;      // 1 - epsilon^2  (max |lambda_k|^2 <= theta)
    double branch2 = 1.0;      // 2 sqrt(p(1-p)) + sqrt(1-theta)
    double q_upper = 1.0;      // max(branch1, branch2)
    // audit: the inequality chain
    double ell8_bound = 0.0;       // C(p): worst-case E ell^8 over the sphere
    double x4_bound = 0.0;         // explicit bound on E X^4
    double var_lower = 0.0;        // 2(1-theta) <= Var[ell^2]
    double pz_probability = 0.0;   // 9/(16 B)
    double radius_cap = 0.0;       // concentration radius that forces the contradiction
    double eps_from_pz = 0.0;
    double eps_from_radius = 0.0;

    std::string to_json() const;
};

struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws CertificationError when the concentrated branch exceeds 1
// (p too close to 1/2 for the given theta) or when no positive epsilon
// satisfies both contradiction conditions; throws std::invalid_argument
// for p outside (1/2, 1).
CertifiedBound certify_epsilon(double p, double theta = 0.99);

// integral over rho in (0,1) of min(1, q_upper((1+rho)/2)) / sqrt(1-rho^2),
// rho = sin(theta) substitution, composite Simpson with grid_size panels.
// The deficit below pi/2 is accumulated separately so the strict inequality
// survives in double precision. With use_certificates = false the integrand
// is the trivial bound 1 and the result is pi/2.
double improved_cdual_bound(int grid_size, bool use_certificates = true, double theta = 0.99);

// Quadrature self-check: integral of d rho / sqrt(1-rho^2) = pi/2.
double rho_quadrature_selfcheck(int grid_size);

}  // namespace cubelab
