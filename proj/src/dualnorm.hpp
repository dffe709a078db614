#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kernel.hpp"

namespace cubelab {

struct AscentResult {
    SphereVector lambda;
    double value = 0.0;
    int iterations = 0;
};

// u <- sign(M^T lambda), lambda <- Mu/||Mu||_2; the objective never decreases.
// Stops when one sweep improves by < 1e-13, a sign pattern repeats, or after
// 10^4 sweeps. Throws on Mu = 0 (restart with a different start).
AscentResult alternating_ascent(const KernelTable& table, const SphereVector& lambda0);

// Exact oracle for n <= 4: max over u in {-1,1}^(2^n) of ||Mu||_2.
// Optionally returns the maximizing sign vector as a CubeFunction.
double brute_force_norm(int n, CubeFunction* maximizer = nullptr);

struct MultistartConfig {
    int restarts = -1;  // < 0 means the default 200 + 50n
    std::uint64_t seed = 42;
    int threads = 0;  // 0 = hardware concurrency
};

struct DualNormReport {
    int n = 0;
    double value = 0.0;
    SphereVector lambda;
    bool certified = false;  // true only when n <= 4 and brute force agrees
    int restarts = 0;
    long long total_iterations = 0;
    std::uint64_t seed = 0;
};

// Best value over structured starts (each e_i, the uniform vector, the
// padded (n-1)-optimizer) plus `restarts` gaussian starts, deterministic
// given the seed. `warm` carries the (n-1)-dimensional optimizer if known;
// otherwise the chain 1..n-1 is computed internally.
DualNormReport multistart(int n, const MultistartConfig& config,
                          const SphereVector* warm = nullptr);

// Rows (n, C_dual,n) for n in [n_min, n_max], reusing each optimizer as the
// next warm start. budget_seconds <= 0 disables the time cap.
std::vector<DualNormReport> figure1(int n_min, int n_max, const MultistartConfig& config,
                                    double budget_seconds = 0.0);

std::string report_json(const DualNormReport& r);

}  // namespace cubelab
