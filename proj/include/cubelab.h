/* cubelab: numerical laboratory for the L1-Poincare constants on the
 * Hamming cube. C API over the C++ core: opaque handles, status codes,
 * caller-owned output buffers. Thread-safe: handles are immutable after
 * creation and every routine is a pure function of its inputs.
 */
#ifndef CUBELAB_H
#define CUBELAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* status codes */
#define CUBELAB_OK 0
#define CUBELAB_ERR_INVALID 1  /* bad argument / precondition violated */
#define CUBELAB_ERR_INTERNAL 2 /* internal assertion or resource failure */

/* Message for the most recent error on this thread; empty string if none. */
const char* cubelab_last_error(void);

/* Frees strings returned through char** out-parameters. */
void cubelab_string_free(char* s);

/* ---- kernel table ---------------------------------------------------- */

typedef struct cubelab_table cubelab_table;

int cubelab_table_create(int n, cubelab_table** out);
void cubelab_table_destroy(cubelab_table* t);
/* entry m_{i,z} compressed by (weight, sign): sign = +1 or -1 */
int cubelab_table_entry(const cubelab_table* t, int weight, int sign, double* out);
/* exact rationals as numerator/denominator strings, JSON encoded */
int cubelab_table_json(const cubelab_table* t, char** out);

/* Phi_n(k): upper tail of Binomial(n, 1/2) beyond k */
int cubelab_phi_tail(long long n, long long k, double* out);

/* ---- dual norm experiment -------------------------------------------- */

typedef struct {
    int n;
    double value;
    int certified; /* 1 only when n <= 4 and the enumeration oracle agrees */
    int restarts;
    long long total_iterations;
    unsigned long long seed;
} cubelab_dual_result;

/* restarts < 0 selects the default 200 + 50n; threads 0 = all cores */
int cubelab_dual_multistart(int n, int restarts, unsigned long long seed, int threads,
                            cubelab_dual_result* out);
/* rows n_min..n_max into out[0..n_max-n_min]; returns rows via *rows_written */
int cubelab_dual_figure(int n_min, int n_max, int restarts, unsigned long long seed,
                        int threads, double budget_seconds, cubelab_dual_result* out,
                        int* rows_written);
int cubelab_dual_report_json(const cubelab_dual_result* r, char** out);
int cubelab_brute_force_norm(int n, double* out); /* n <= 4 */

/* ---- biased Khintchine ------------------------------------------------ */

typedef struct {
    double p;
    double theta;
    double epsilon;
    double b_bound;
    double branch1;
    double branch2;
    double q_upper;
    int certified; /* 0 when certification fails at this (p, theta) */
} cubelab_certificate;

/* Never fails for p in (1/2,1): on certification failure fills
 * certified = 0 and q_upper = 1. */
int cubelab_certify(double p, double theta, cubelab_certificate* out);
int cubelab_certificate_json(double p, double theta, char** out);
int cubelab_khintchine_lower(double p, int n, int restarts, unsigned long long seed,
                             double* q);
int cubelab_khintchine_exact_small(double p, int n, double* q); /* n <= 4 */
int cubelab_improved_bound(int grid_size, int use_certificates, double* out);

/* ---- gaussian profile and Bellman checks ------------------------------ */

int cubelab_profile_eval(double x, double* value, double* d1, double* d2);
int cubelab_two_point_defect(double a, double b, double k, double* out);
/* min defect over the grid x grid square (5e-4, 1-5e-4)^2 */
int cubelab_two_point_scan(double k, int grid, double* min_defect);
int cubelab_curvature_witness(double c, double* a, double* b, double* value);
int cubelab_mb_functional(const double* b_values, const double* b_second, int len,
                          double* out);
int cubelab_two_value_constant(double* value, double* argmax);
int cubelab_bobkov_random_suite(int count, int n_max, unsigned long long seed,
                                double* min_defect);
int cubelab_symmetric_constants(double* c1, double* c2, double* ana_max);

/* ---- exact asymptotics ------------------------------------------------ */

int cubelab_majority_odd(long long n, double* grad_norm, double* ratio);
int cubelab_majority_even(long long n, double* grad_norm, double* mean_abs, double* ratio);
int cubelab_clt_bernoulli(long long n, double* out);
int cubelab_l1_growth(long long n, double* value, double* companion);
int cubelab_lp_sum(long long n, double* out);

/* ---- invariant suite --------------------------------------------------- */

typedef struct {
    char name[64];
    int pass;
    char detail[160];
} cubelab_check;

/* Fills up to cap results, sets *count to the number of groups (which may
 * exceed cap). Returns CUBELAB_OK even when groups fail; inspect .pass. */
int cubelab_verify_run(int threads, cubelab_check* results, int cap, int* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CUBELAB_H */
