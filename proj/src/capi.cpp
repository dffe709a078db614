#include "cubelab.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "cube.hpp"
#include "dualnorm.hpp"
#include "kernel.hpp"
#include "khintchine.hpp"
#include "profile.hpp"
#include "util.hpp"
#include "verify.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

// Exceptions never cross the C boundary.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return CUBELAB_OK;
    } catch (const std::invalid_argument& e) {
        return fail(CUBELAB_ERR_INVALID, e.what());
    } catch (const std::exception& e) {
        return fail(CUBELAB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CUBELAB_ERR_INTERNAL, "unknown exception");
    }
}

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void fill_dual(const cubelab::DualNormReport& rep, cubelab_dual_result* out) {
    out->n = rep.n;
    out->value = rep.value;
    out->certified = rep.certified ? 1 : 0;
    out->restarts = rep.restarts;
    out->total_iterations = rep.total_iterations;
    out->seed = rep.seed;
}

}  // namespace

extern "C" {

const char* cubelab_last_error(void) { return g_last_error.c_str(); }

void cubelab_string_free(char* s) { delete[] s; }

struct cubelab_table {
    cubelab::KernelTable impl;
};

int cubelab_table_create(int n, cubelab_table** out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        auto* t = new cubelab_table{cubelab::kernel_table(n)};
        *out = t;
    });
}

void cubelab_table_destroy(cubelab_table* t) { delete t; }

int cubelab_table_entry(const cubelab_table* t, int weight, int sign, double* out) {
    if (!t || !out) return fail(CUBELAB_ERR_INVALID, "null pointer");
    return guarded([&] { *out = t->impl.entry(weight, sign); });
}

int cubelab_table_json(const cubelab_table* t, char** out) {
    if (!t || !out) return fail(CUBELAB_ERR_INVALID, "null pointer");
    return guarded([&] {
        *out = dup_string(t->impl.to_json());
        if (!*out) throw std::bad_alloc();
    });
}

int cubelab_phi_tail(long long n, long long k, double* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] { *out = cubelab::phi_tail(n, k).value(); });
}

int cubelab_dual_multistart(int n, int restarts, unsigned long long seed, int threads,
                            cubelab_dual_result* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::MultistartConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.threads = threads;
        fill_dual(cubelab::multistart(n, cfg), out);
    });
}

int cubelab_dual_figure(int n_min, int n_max, int restarts, unsigned long long seed,
                        int threads, double budget_seconds, cubelab_dual_result* out,
                        int* rows_written) {
    if (!out || !rows_written) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::MultistartConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.threads = threads;
        auto rows = cubelab::figure1(n_min, n_max, cfg, budget_seconds);
        for (std::size_t i = 0; i < rows.size(); ++i) fill_dual(rows[i], out + i);
        *rows_written = static_cast<int>(rows.size());
    });
}

int cubelab_dual_report_json(const cubelab_dual_result* r, char** out) {
    if (!r || !out) return fail(CUBELAB_ERR_INVALID, "null pointer");
    return guarded([&] {
        // re-run is avoided: serialize the scalar fields only
        std::string s = "{\"n\":" + std::to_string(r->n) +
                        ",\"value\":" + cubelab::format_sig17(r->value) +
                        ",\"bound_kind\":\"" + (r->certified ? "exact" : "lower") + "\"" +
                        ",\"certified\":" + (r->certified ? "true" : "false") +
                        ",\"restarts\":" + std::to_string(r->restarts) +
                        ",\"total_iterations\":" + std::to_string(r->total_iterations) +
                        ",\"seed\":" + std::to_string(r->seed) + "}";
        *out = dup_string(s);
        if (!*out) throw std::bad_alloc();
    });
}

int cubelab_brute_force_norm(int n, double* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] { *out = cubelab::brute_force_norm(n); });
}

int cubelab_certify(double p, double theta, cubelab_certificate* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    if (!(p >= 0.5 && p < 1.0)) return fail(CUBELAB_ERR_INVALID, "p must lie in [0.5, 1)");
    return guarded([&] {
        out->p = p;
        out->theta = theta;
        if (p == 0.5) {  // boundary: the certificate gives nothing at p = 1/2
            out->epsilon = 0.0;
            out->b_bound = 0.0;
            out->branch1 = 1.0;
            out->branch2 = 1.0 + std::sqrt(1.0 - theta);
            out->q_upper = 1.0;
            out->certified = 0;
            return;
        }
        try {
            cubelab::CertifiedBound c = cubelab::certify_epsilon(p, theta);
            out->epsilon = c.epsilon;
            out->b_bound = c.b_bound;
            out->branch1 = c.branch1;
            out->branch2 = c.branch2;
            out->q_upper = c.q_upper;
            out->certified = 1;
        } catch (const cubelab::CertificationError&) {
            out->epsilon = 0.0;
            out->b_bound = 0.0;
            out->branch1 = 1.0;
            out->branch2 = 2.0 * std::sqrt(p * (1.0 - p)) + std::sqrt(1.0 - theta);
            out->q_upper = 1.0;
            out->certified = 0;
        }
    });
}

int cubelab_certificate_json(double p, double theta, char** out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        std::string s;
        try {
            s = cubelab::certify_epsilon(p, theta).to_json();
        } catch (const cubelab::CertificationError& e) {
            s = std::string("{\"p\":") + cubelab::format_sig17(p) +
                ",\"certified\":false,\"reason\":\"" + e.what() + "\"}";
        }
        *out = dup_string(s);
        if (!*out) throw std::bad_alloc();
    });
}

int cubelab_khintchine_lower(double p, int n, int restarts, unsigned long long seed,
                             double* q) {
    if (!q) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::MultistartConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        *q = cubelab::q_lower(cubelab::BiasedDist::from_p(p), n, cfg).value;
    });
}

int cubelab_khintchine_exact_small(double p, int n, double* q) {
    if (!q) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] { *q = cubelab::q_exact_small(cubelab::BiasedDist::from_p(p), n); });
}

int cubelab_improved_bound(int grid_size, int use_certificates, double* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] { *out = cubelab::improved_cdual_bound(grid_size, use_certificates != 0); });
}

int cubelab_profile_eval(double x, double* value, double* d1, double* d2) {
    if (!value || !d1 || !d2) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::ProfileTriple t = cubelab::profile_eval(x);
        *value = t.value;
        *d1 = t.d1;
        *d2 = t.d2;
    });
}

int cubelab_two_point_defect(double a, double b, double k, double* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] { *out = cubelab::two_point_defect(a, b, k); });
}

int cubelab_two_point_scan(double k, int grid, double* min_defect) {
    if (!min_defect) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    if (grid < 2) return fail(CUBELAB_ERR_INVALID, "grid too small");
    return guarded([&] {
        // precompute the profile on the 1-d grid, then scan pairs
        std::vector<double> xs(static_cast<std::size_t>(grid));
        std::vector<double> I(static_cast<std::size_t>(grid));
        std::vector<double> dI(static_cast<std::size_t>(grid));
        for (int i = 0; i < grid; ++i) {
            const double x = 0.0005 + 0.999 * i / (grid - 1);
            xs[static_cast<std::size_t>(i)] = x;
            cubelab::ProfileTriple t = cubelab::profile_eval(x);
            I[static_cast<std::size_t>(i)] = t.value;
            dI[static_cast<std::size_t>(i)] = t.d1;
        }
        double mn = 0.0;
        for (int ia = 0; ia < grid; ++ia)
            for (int ib = 0; ib < grid; ++ib) {
                const double diff = xs[static_cast<std::size_t>(ia)] - xs[static_cast<std::size_t>(ib)];
                const double d = I[static_cast<std::size_t>(ib)] - I[static_cast<std::size_t>(ia)] +
                                 dI[static_cast<std::size_t>(ib)] * diff - 0.5 * k * diff * diff;
                if (d < mn) mn = d;
            }
        *min_defect = mn;
    });
}

int cubelab_curvature_witness(double c, double* a, double* b, double* value) {
    if (!a || !b || !value) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::CurvatureWitness w = cubelab::two_point_curvature_fails(c);
        *a = w.a;
        *b = w.b;
        *value = w.value;
    });
}

int cubelab_mb_functional(const double* b_values, const double* b_second, int len,
                          double* out) {
    if (!b_values || !b_second || !out) return fail(CUBELAB_ERR_INVALID, "null pointer");
    if (len <= 0) return fail(CUBELAB_ERR_INVALID, "empty grid");
    return guarded([&] {
        *out = cubelab::mb_functional({b_values, static_cast<std::size_t>(len)},
                                      {b_second, static_cast<std::size_t>(len)});
    });
}

int cubelab_two_value_constant(double* value, double* argmax) {
    if (!value || !argmax) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::TwoValueResult r = cubelab::two_value_constant();
        *value = r.value;
        *argmax = r.argmax;
    });
}

int cubelab_bobkov_random_suite(int count, int n_max, unsigned long long seed,
                                double* min_defect) {
    if (!min_defect) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    if (count < 1 || n_max < 1 || n_max > 10) return fail(CUBELAB_ERR_INVALID, "bad suite size");
    return guarded([&] {
        double worst = 1e300;
        for (int trial = 0; trial < count; ++trial) {
            cubelab::Rng rng(seed + static_cast<std::uint64_t>(trial));
            const int n = 1 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(n_max));
            std::vector<double> v(std::size_t{1} << n);
            for (double& x : v) x = rng.uniform();
            worst = std::min(worst, cubelab::bobkov_check(cubelab::CubeFunction(n, std::move(v))));
        }
        *min_defect = worst;
    });
}

int cubelab_symmetric_constants(double* c1, double* c2, double* ana_max) {
    if (!c1 || !c2 || !ana_max) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::SymmetricSetReport r = cubelab::symmetric_set_constants();
        *c1 = r.c1;
        *c2 = r.c2;
        *ana_max = r.ana_max;
    });
}

int cubelab_majority_odd(long long n, double* grad_norm, double* ratio) {
    if (!grad_norm || !ratio) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::MajorityOdd m = cubelab::majority_odd(n);
        *grad_norm = m.grad_norm;
        *ratio = m.ratio;
    });
}

int cubelab_majority_even(long long n, double* grad_norm, double* mean_abs, double* ratio) {
    if (!grad_norm || !mean_abs || !ratio) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::MajorityEven m = cubelab::majority_even(n);
        *grad_norm = m.grad_norm;
        *mean_abs = m.mean_abs;
        *ratio = m.ratio;
    });
}

int cubelab_clt_bernoulli(long long n, double* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] { *out = cubelab::clt_bernoulli(n); });
}

int cubelab_l1_growth(long long n, double* value, double* companion) {
    if (!value || !companion) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] {
        cubelab::L1Growth s = cubelab::l1_growth(n);
        *value = s.value;
        *companion = s.companion;
    });
}

int cubelab_lp_sum(long long n, double* out) {
    if (!out) return fail(CUBELAB_ERR_INVALID, "null output pointer");
    return guarded([&] { *out = cubelab::lp_sum(n); });
}

int cubelab_verify_run(int threads, cubelab_check* results, int cap, int* count) {
    if (!results || !count || cap < 0) return fail(CUBELAB_ERR_INVALID, "null pointer");
    return guarded([&] {
        auto checks = cubelab::run_verify(threads);
        *count = static_cast<int>(checks.size());
        const int m = std::min(cap, *count);
        for (int i = 0; i < m; ++i) {
            std::snprintf(results[i].name, sizeof(results[i].name), "%s",
                          checks[static_cast<std::size_t>(i)].name.c_str());
            std::snprintf(results[i].detail, sizeof(results[i].detail), "%s",
                          checks[static_cast<std::size_t>(i)].detail.c_str());
            results[i].pass = checks[static_cast<std::size_t>(i)].pass ? 1 : 0;
        }
    });
}

}  // extern "C"
