#include "dualnorm.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "util.hpp"

namespace cubelab {

namespace {

constexpr double kSweepTol = 1e-13;
constexpr int kMaxSweeps = 10000;

// One sweep: walk the Gray code once, pick u_z = sign(column . lambda)
// (sign(0) := +1), and accumulate Mu on the fly, plus a hash of the sign
// pattern for cycle detection.
struct SweepOut {
    std::vector<double> mu;    // length n: Mu = sum_z u_z m_(.,z)
    double objective = 0.0;    // sum_z |column . lambda|
    std::uint64_t sign_hash = 0;
};

SweepOut sweep(const KernelTable& table, const std::vector<double>& lambda) {
    const int n = table.n;
    const std::size_t m = std::size_t{1} << n;
    double sum_lambda = 0.0;
    for (double x : lambda) sum_lambda += x;

    SweepOut out;
    out.mu.assign(static_cast<std::size_t>(n), 0.0);
    // signed vertex accumulator: mu_i = sum_z u_z (beta_k + alpha_k z_i);
    // track c0 = sum u_z beta_k and v_i = sum u_z alpha_k z_i.
    double c0 = 0.0;
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sign(static_cast<std::size_t>(n), 1.0);  // current z as +-1

    double dot = sum_lambda;
    std::uint32_t gray = 0;
    int weight = 0;
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over sign bits
    for (std::size_t j = 0;; ++j) {
        const double alpha = table.alpha_f[static_cast<std::size_t>(weight)];
        const double beta = table.beta_f[static_cast<std::size_t>(weight)];
        const double col = alpha * dot + beta * sum_lambda;
        const double u = (col < 0.0) ? -1.0 : 1.0;
        out.objective += u * col;
        c0 += u * beta;
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] += u * alpha * sign[static_cast<std::size_t>(i)];
        h = (h ^ static_cast<std::uint64_t>(u > 0.0 ? 0x9e3779b9u : 0x7f4a7c15u)) * 1099511628211ULL;
        if (j + 1 >= m) break;
        const int b = std::countr_zero(static_cast<std::uint64_t>(j + 1));
        const std::uint32_t bit = std::uint32_t{1} << b;
        gray ^= bit;
        if (gray & bit) {
            dot -= 2.0 * lambda[static_cast<std::size_t>(b)];
            sign[static_cast<std::size_t>(b)] = -1.0;
            ++weight;
        } else {
            dot += 2.0 * lambda[static_cast<std::size_t>(b)];
            sign[static_cast<std::size_t>(b)] = 1.0;
            --weight;
        }
    }
    for (int i = 0; i < n; ++i)
        out.mu[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] + c0;
    out.sign_hash = h;
    return out;
}

}  // namespace

AscentResult alternating_ascent(const KernelTable& table, const SphereVector& lambda0) {
    if (lambda0.n != table.n) throw std::invalid_argument("alternating_ascent: dimension mismatch");
    std::vector<double> lambda = lambda0.coords;
    double value = -1.0;
    std::unordered_set<std::uint64_t> seen;
    int it = 0;
    for (; it < kMaxSweeps; ++it) {
        SweepOut s = sweep(table, lambda);
        if (s.objective < value - 1e-12)
            throw std::logic_error("alternating_ascent: objective decreased");
        const bool cycled = !seen.insert(s.sign_hash).second;
        const bool converged = (value >= 0.0 && s.objective - value < kSweepTol);
        value = std::max(value, s.objective);
        if (converged || cycled) {
            ++it;
            break;
        }
        double nm = 0.0;
        for (double x : s.mu) nm += x * x;
        nm = std::sqrt(nm);
        if (nm == 0.0) throw std::runtime_error("alternating_ascent: degenerate start (Mu = 0)");
        for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = s.mu[i] / nm;
    }
    AscentResult r;
    r.lambda = SphereVector::normalized(lambda);
    r.value = value;
    r.iterations = it;
    return r;
}

double brute_force_norm(int n, CubeFunction* maximizer) {
    if (n < 1 || n > 4) throw std::invalid_argument("brute_force_norm: n must be in [1,4]");
    KernelTable table = kernel_table(n);
    std::vector<double> cols = dense_matrix(table);
    const std::size_t m = std::size_t{1} << n;

    // Gray-code walk over all 2^(2^n) sign vectors, updating Mu by one
    // column flip per step.
    std::vector<double> u(m, 1.0);
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (std::size_t z = 0; z < m; ++z)
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] += cols[z * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];

    auto norm_sq = [&] {
        double s = 0.0;
        for (double x : w) s += x * x;
        return s;
    };
    double best = norm_sq();
    std::vector<double> best_u = u;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t j = 1; j < count; ++j) {
        const int z = std::countr_zero(j);
        const double flip = -2.0 * u[static_cast<std::size_t>(z)];
        u[static_cast<std::size_t>(z)] += flip;
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] +=
                flip * cols[static_cast<std::size_t>(z) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
        const double v = norm_sq();
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    if (maximizer) *maximizer = CubeFunction(n, best_u);
    return std::sqrt(best);
}

DualNormReport multistart(int n, const MultistartConfig& config, const SphereVector* warm) {
    if (n < 1 || n > 26) throw std::invalid_argument("multistart: n must be in [1,26]");
    const int restarts = config.restarts < 0 ? 200 + 50 * n : config.restarts;

    SphereVector chain_warm;
    const SphereVector* prev = warm;
    if (!prev && n > 1) {
        // Build the (n-1)-optimizer chain so the structured starts are complete.
        MultistartConfig sub = config;
        DualNormReport below = multistart(1, sub);
        for (int d = 2; d < n; ++d) below = multistart(d, sub, &below.lambda);
        chain_warm = below.lambda;
        prev = &chain_warm;
    }

    KernelTable table = kernel_table(n);
    std::vector<SphereVector> starts;
    for (int i = 1; i <= n; ++i) starts.push_back(SphereVector::axis(n, i));
    starts.push_back(SphereVector::uniform(n));
    if (prev && prev->n >= 1 && prev->n == n - 1) {
        std::vector<double> padded = prev->coords;
        padded.push_back(0.0);
        starts.push_back(SphereVector(n, std::move(padded)));
    }
    const std::size_t structured = starts.size();
    for (int r = 0; r < restarts; ++r) {
        Rng rng(config.seed + static_cast<std::uint64_t>(r));
        starts.push_back(SphereVector::normalized(random_unit_vector(n, rng)));
    }

    struct Slot {
        double value = -1.0;
        SphereVector lambda;
        long long iterations = 0;
        bool ok = false;
        bool broken = false;  // soundness violation, rethrown on the caller thread
    };
    std::vector<Slot> slots(starts.size());
    parallel_for(starts.size(), config.threads, [&](std::size_t i) {
        try {
            AscentResult a = alternating_ascent(table, starts[i]);
            slots[i] = Slot{a.value, a.lambda, a.iterations, true, false};
        } catch (const std::logic_error&) {
            slots[i].broken = true;
        } catch (const std::exception&) {
            slots[i].ok = false;  // degenerate start, skip
        }
    });
    for (const auto& s : slots)
        if (s.broken) throw std::logic_error("multistart: ascent soundness violated");

    DualNormReport rep;
    rep.n = n;
    rep.restarts = restarts;
    rep.seed = config.seed;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i].ok) continue;
        rep.total_iterations += slots[i].iterations;
        if (slots[i].value > rep.value) {
            rep.value = slots[i].value;
            rep.lambda = slots[i].lambda;
        }
    }
    // Monotone improvement over each structured start.
    for (std::size_t i = 0; i < structured; ++i)
        if (slots[i].ok && rep.value < objective(table, starts[i]) - 1e-12)
            throw std::logic_error("multistart: best value below a structured start");

    if (n <= 4) {
        const double exact = brute_force_norm(n);
        rep.certified = std::abs(exact - rep.value) <= 1e-12;
    }
    return rep;
}

std::vector<DualNormReport> figure1(int n_min, int n_max, const MultistartConfig& config,
                                    double budget_seconds) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("figure1: bad range");
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<DualNormReport> rows;
    SphereVector warm;
    for (int n = n_min; n <= n_max; ++n) {
        rows.push_back(multistart(n, config, warm.n >= 1 && warm.n == n - 1 ? &warm : nullptr));
        warm = rows.back().lambda;
        if (budget_seconds > 0.0) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (elapsed > budget_seconds && n < n_max) break;
        }
    }
    return rows;
}

std::string report_json(const DualNormReport& r) {
    std::ostringstream os;
    os << "{\"n\":" << r.n << ",\"value\":" << format_sig17(r.value)
       << ",\"bound_kind\":\"" << (r.certified ? "exact" : "lower") << "\""
       << ",\"certified\":" << (r.certified ? "true" : "false")
       << ",\"restarts\":" << r.restarts
       << ",\"total_iterations\":" << r.total_iterations << ",\"seed\":" << r.seed
       << ",\"lambda\":[";
    for (int i = 0; i < r.lambda.n; ++i) {
        if (i) os << ",";
        os << format_sig17(r.lambda.coords[static_cast<std::size_t>(i)]);
    }
    os << "]}";
    return os.str();
}

}  // namespace cubelab
