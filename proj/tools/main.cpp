// cubelab command line: runs the experiments and emits CSV/JSON artifacts.
// All numerics live behind the C API in libcubelab; this file only parses
// flags, formats output, and maps failures to exit codes:
//   0 success, 1 usage/validation error, 2 internal assertion failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubelab.h"

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

std::string sig17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// output sink: file when --out given, stdout otherwise
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw CLI::ValidationError("--out", "cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Budget {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds = 60.0;
    bool exceeded() const {
        return seconds > 0.0 &&
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
                   seconds;
    }
};

unsigned long long default_seed() {
    if (const char* env = std::getenv("CUBELAB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 42;
}

bool parse_range(const std::string& text, int& lo, int& hi) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        try {
            lo = hi = std::stoi(text);
        } catch (...) {
            return false;
        }
        return true;
    }
    try {
        lo = std::stoi(text.substr(0, dots));
        hi = std::stoi(text.substr(dots + 2));
    } catch (...) {
        return false;
    }
    return true;
}

int internal_error(const char* where) {
    std::cerr << where << ": " << cubelab_last_error() << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubelab: constants of the L1-Poincare inequality on the Hamming cube"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    unsigned long long seed = default_seed();
    int threads = 0;
    double budget_s = 60.0;
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", seed, "RNG seed (env CUBELAB_SEED overrides the default)");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");
    app.add_option("--budget", budget_s, "soft time budget in seconds (0 = unlimited)");

    // ---- dual ----
    auto* dual = app.add_subcommand("dual", "C_dual,n by alternating maximization")->fallthrough();
    std::string dual_range = "2..8";
    int dual_restarts = -1;
    dual->add_option("--n", dual_range, "dimension or range a..b");
    dual->add_option("--restarts", dual_restarts, "random restarts (default 200+50n)");

    // ---- khintchine ----
    auto* khin = app.add_subcommand("khintchine", "biased Khintchine constants q(p)")->fallthrough();
    double khin_p = 0.75;
    int khin_n = 8;
    int khin_restarts = 32;
    khin->add_option("--p", khin_p, "bias parameter in [0.5, 1)");
    khin->add_option("--n", khin_n, "dimension for the lower bound (<= 24)");
    khin->add_option("--restarts", khin_restarts, "sphere-ascent restarts");

    // ---- certify ----
    auto* cert = app.add_subcommand("certify", "moment certificate q(p) <= 1 - eps^2")->fallthrough();
    std::vector<double> cert_ps;
    double cert_theta = 0.99;
    cert->add_option("--p", cert_ps, "bias value(s) in (0.5, 1)")->expected(-1);
    cert->add_option("--theta", cert_theta, "concentrated-branch threshold");

    // ---- bound ----
    auto* bound = app.add_subcommand("bound", "improved Poincare upper bound (< pi/2)")->fallthrough();
    int bound_grid = 2000;
    bool bound_trivial = false;
    bound->add_option("--grid", bound_grid, "quadrature panels (>= 100)");
    bound->add_flag("--trivial", bound_trivial, "disable certificates (recovers pi/2)");

    // ---- bellman ----
    auto* bell = app.add_subcommand("bellman", "two-point/Bellman checks")->fallthrough();
    std::string bell_check = "two-point";
    int bell_grid = 2001;
    double bell_c = 1.0;
    bell->add_option("--check", bell_check, "two-point | curvature | mb | two-value | bobkov");
    bell->add_option("--grid", bell_grid, "grid resolution");
    bell->add_option("--c", bell_c, "constant for the curvature witness");

    // ---- series ----
    auto* series = app.add_subcommand("series", "exact combinatorial series")->fallthrough();
    std::string series_name = "lp-sum";
    long long series_nmax = 10000;
    series->add_option("--name", series_name,
                       "lp-sum | l1-growth | majority-odd | majority-even | clt");
    series->add_option("--n-max", series_nmax, "largest index");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the full invariant suite")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    Budget budget;
    budget.seconds = budget_s;

    try {
        Sink sink(out_path);
        std::ostream& os = sink.stream();

        if (*dual) {
            int lo = 0, hi = 0;
            if (!parse_range(dual_range, lo, hi) || lo < 1 || hi < lo || hi > 26) {
                std::cerr << "dual: --n must be a range a..b with 1 <= a <= b <= 26\n";
                return 1;
            }
            std::vector<cubelab_dual_result> rows(static_cast<std::size_t>(hi - lo + 1));
            int written = 0;
            if (cubelab_dual_figure(lo, hi, dual_restarts, seed, threads, budget.seconds,
                                    rows.data(), &written) != CUBELAB_OK)
                return internal_error("dual");
            if (written < hi - lo + 1)
                std::cerr << "dual: budget exhausted after n=" << lo + written - 1 << "\n";
            if (format == "json") {
                os << "[";
                for (int i = 0; i < written; ++i) {
                    char* js = nullptr;
                    if (cubelab_dual_report_json(&rows[static_cast<std::size_t>(i)], &js) !=
                        CUBELAB_OK)
                        return internal_error("dual");
                    os << (i ? "," : "") << js;
                    cubelab_string_free(js);
                }
                os << "]\n";
            } else {
                os << "n,value,certified,restarts,seed\n";
                for (int i = 0; i < written; ++i) {
                    const auto& r = rows[static_cast<std::size_t>(i)];
                    os << r.n << "," << sig17(r.value) << "," << (r.certified ? "true" : "false")
                       << "," << r.restarts << "," << r.seed << "\n";
                }
            }
            return 0;
        }

        if (*khin) {
            if (!(khin_p >= 0.5 && khin_p < 1.0)) {
                std::cerr << "khintchine: --p must lie in [0.5, 1)\n";
                return 1;
            }
            if (khin_n < 1 || khin_n > 24) {
                std::cerr << "khintchine: --n must lie in [1, 24]\n";
                return 1;
            }
            double q = 0.0;
            if (cubelab_khintchine_lower(khin_p, khin_n, khin_restarts, seed, &q) != CUBELAB_OK)
                return internal_error("khintchine");
            cubelab_certificate c{};
            if (cubelab_certify(khin_p, 0.99, &c) != CUBELAB_OK)
                return internal_error("khintchine");
            os << "p,q_lower,n_used,q_upper,epsilon,branch2\n";
            os << sig17(khin_p) << "," << sig17(q) << "," << khin_n << "," << sig17(c.q_upper)
               << "," << sig17(c.epsilon) << "," << sig17(c.branch2) << "\n";
            return 0;
        }

        if (*cert) {
            if (cert_ps.empty()) cert_ps.push_back(0.75);
            for (double p : cert_ps)
                if (!(p > 0.5 && p < 1.0)) {
                    std::cerr << "certify: --p must lie in (0.5, 1)\n";
                    return 1;
                }
            if (format == "json") {
                os << "[";
                for (std::size_t i = 0; i < cert_ps.size(); ++i) {
                    char* js = nullptr;
                    if (cubelab_certificate_json(cert_ps[i], cert_theta, &js) != CUBELAB_OK)
                        return internal_error("certify");
                    os << (i ? "," : "") << js;
                    cubelab_string_free(js);
                }
                os << "]\n";
            } else {
                os << "p,q_lower,n_used,q_upper,epsilon,branch2\n";
                for (double p : cert_ps) {
                    cubelab_certificate c{};
                    if (cubelab_certify(p, cert_theta, &c) != CUBELAB_OK)
                        return internal_error("certify");
                    double q = 0.0;
                    if (cubelab_khintchine_exact_small(p, 4, &q) != CUBELAB_OK)
                        return internal_error("certify");
                    os << sig17(p) << "," << sig17(q) << ",4," << sig17(c.q_upper) << ","
                       << sig17(c.epsilon) << "," << sig17(c.branch2) << "\n";
                }
            }
            return 0;
        }

        if (*bound) {
            if (bound_grid < 100) {
                std::cerr << "bound: --grid must be >= 100\n";
                return 1;
            }
            double value = 0.0;
            if (cubelab_improved_bound(bound_grid, bound_trivial ? 0 : 1, &value) != CUBELAB_OK)
                return internal_error("bound");
            os << "improved_cdual_bound," << sig17(value) << "\n";
            os << "pi_over_2," << sig17(kPi / 2.0) << "\n";
            os << "margin," << sig17(kPi / 2.0 - value) << "\n";
            if (!bound_trivial && !(value < kPi / 2.0)) {
                std::cerr << "bound: expected a value strictly below pi/2\n";
                return 2;
            }
            return 0;
        }

        if (*bell) {
            if (bell_check == "two-point") {
                double mn = 0.0;
                if (cubelab_two_point_scan(std::sqrt(2.0 * kPi), bell_grid, &mn) != CUBELAB_OK)
                    return internal_error("bellman");
                // heatmap rows at a plot-friendly resolution
                const int emit = std::min(bell_grid, 201);
                os << "a,b,defect\n";
                for (int i = 0; i < emit; ++i) {
                    const double a = 0.0005 + 0.999 * i / (emit - 1);
                    for (int j = 0; j < emit; ++j) {
                        const double b = 0.0005 + 0.999 * j / (emit - 1);
                        double d = 0.0;
                        if (cubelab_two_point_defect(a, b, std::sqrt(2.0 * kPi), &d) != CUBELAB_OK)
                            return internal_error("bellman");
                        os << sig17(a) << "," << sig17(b) << "," << sig17(d) << "\n";
                    }
                }
                std::cerr << "min defect over " << bell_grid << "^2 grid: " << sig17(mn) << "\n";
                if (!(mn >= -1e-12)) return 2;
            } else if (bell_check == "curvature") {
                double a = 0.0, b = 0.0, v = 0.0;
                if (cubelab_curvature_witness(bell_c, &a, &b, &v) != CUBELAB_OK)
                    return internal_error("bellman");
                os << "c,a,b,value\n";
                os << sig17(bell_c) << "," << sig17(a) << "," << sig17(b) << "," << sig17(v)
                   << "\n";
            } else if (bell_check == "mb") {
                const int grid = (bell_grid % 2) ? bell_grid : bell_grid + 1;
                std::vector<double> q(static_cast<std::size_t>(grid)),
                    q2(static_cast<std::size_t>(grid)), pi_(static_cast<std::size_t>(grid)),
                    pi2(static_cast<std::size_t>(grid));
                for (int i = 0; i < grid; ++i) {
                    const double x = (i + 1) / static_cast<double>(grid + 1);
                    double I = 0.0, d1 = 0.0, d2 = 0.0;
                    if (cubelab_profile_eval(x, &I, &d1, &d2) != CUBELAB_OK)
                        return internal_error("bellman");
                    q[static_cast<std::size_t>(i)] = x * (1.0 - x);
                    q2[static_cast<std::size_t>(i)] = -2.0;
                    pi_[static_cast<std::size_t>(i)] = I;
                    pi2[static_cast<std::size_t>(i)] = d2;
                }
                double mq = 0.0, mi = 0.0;
                if (cubelab_mb_functional(q.data(), q2.data(), grid, &mq) != CUBELAB_OK ||
                    cubelab_mb_functional(pi_.data(), pi2.data(), grid, &mi) != CUBELAB_OK)
                    return internal_error("bellman");
                os << "candidate,M_B\n";
                os << "x(1-x)," << sig17(mq) << "\n";
                os << "I," << sig17(mi) << "\n";
            } else if (bell_check == "two-value") {
                double v = 0.0, arg = 0.0;
                if (cubelab_two_value_constant(&v, &arg) != CUBELAB_OK)
                    return internal_error("bellman");
                os << "value,argmax\n" << sig17(v) << "," << sig17(arg) << "\n";
            } else if (bell_check == "bobkov") {
                double mn = 0.0;
                if (cubelab_bobkov_random_suite(bell_grid, 6, seed, &mn) != CUBELAB_OK)
                    return internal_error("bellman");
                os << "trials,min_defect\n" << bell_grid << "," << sig17(mn) << "\n";
                if (!(mn >= -1e-12)) return 2;
            } else {
                std::cerr << "bellman: unknown --check (two-point, curvature, mb, two-value, "
                             "bobkov)\n";
                return 1;
            }
            return 0;
        }

        if (*series) {
            os << "n,value,reference,gap\n";
            auto emit_row = [&os](long long n, double value, double reference) {
                os << n << "," << sig17(value) << "," << sig17(reference) << ","
                   << sig17(value - reference) << "\n";
            };
            // clamp to each series' supported range
            auto cap = [&](long long limit) { return std::min(series_nmax, limit); };
            if (series_name == "lp-sum") {
                for (long long n = 10; n <= cap(1000000); n *= 10) {
                    double v = 0.0;
                    if (cubelab_lp_sum(n, &v) != CUBELAB_OK) return internal_error("series");
                    emit_row(n, v, kPi / 2.0);
                    if (budget.exceeded()) break;
                }
            } else if (series_name == "l1-growth") {
                for (long long n = 10; n <= cap(10000); n *= 10) {
                    double v = 0.0, c = 0.0;
                    if (cubelab_l1_growth(n, &v, &c) != CUBELAB_OK) return internal_error("series");
                    emit_row(n, v, std::log(static_cast<double>(n)));
                    if (budget.exceeded()) break;
                }
            } else if (series_name == "majority-odd") {
                for (long long n = 3; n <= cap(10000); n *= 3) {
                    double g = 0.0, r = 0.0;
                    if (cubelab_majority_odd(n, &g, &r) != CUBELAB_OK)
                        return internal_error("series");
                    emit_row(n, g, 2.0 / std::sqrt(kPi));
                    if (budget.exceeded()) break;
                }
            } else if (series_name == "majority-even") {
                for (long long n = 2; n <= cap(1000000); n *= 3) {
                    double g = 0.0, m = 0.0, r = 0.0;
                    if (cubelab_majority_even(n, &g, &m, &r) != CUBELAB_OK)
                        return internal_error("series");
                    emit_row(n, g, (1.0 + std::sqrt(2.0)) / std::sqrt(2.0 * kPi));
                    if (budget.exceeded()) break;
                }
            } else if (series_name == "clt") {
                for (long long n = 9; n <= cap(100000); n = 2 * n - 1) {
                    double v = 0.0;
                    if (cubelab_clt_bernoulli(n, &v) != CUBELAB_OK) return internal_error("series");
                    emit_row(n, v, std::sqrt(2.0 / kPi));
                    if (budget.exceeded()) break;
                }
            } else {
                std::cerr << "series: unknown --name (lp-sum, l1-growth, majority-odd, "
                             "majority-even, clt)\n";
                return 1;
            }
            return 0;
        }

        if (*verify) {
            cubelab_check results[32];
            int count = 0;
            if (cubelab_verify_run(threads, results, 32, &count) != CUBELAB_OK)
                return internal_error("verify");
            bool all = true;
            for (int i = 0; i < count && i < 32; ++i) {
                os << (results[i].pass ? "PASS" : "FAIL") << " " << results[i].name << " ("
                   << results[i].detail << ")\n";
                all = all && results[i].pass;
            }
            os << (all ? "VERIFY PASS" : "VERIFY FAIL") << " (" << count << " groups)\n";
            return all ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
