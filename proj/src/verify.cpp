#include "verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "asymptotics.hpp"
#include "cube.hpp"
#include "dualnorm.hpp"
#include "kernel.hpp"
#include "khintchine.hpp"
#include "profile.hpp"
#include "util.hpp"

namespace cubelab {

namespace {

constexpr double kPi = std::numbers::pi;

CubeFunction random_function(int n, Rng& rng, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(std::size_t{1} << n);
    for (double& x : v) x = lo + (hi - lo) * rng.uniform();
    return CubeFunction(n, std::move(v));
}

CubeFunction scaled(CubeFunction f, double w) {
    for (double& v : f.values) v *= w;
    return f;
}

double max_abs(const CubeFunction& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const CubeFunction& a, const CubeFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

struct Group {
    bool pass = true;
    double worst = 0.0;
    void absorb(double err, double tol) {
        worst = std::max(worst, err);
        if (!(err <= tol)) pass = false;
    }
    void require(bool ok) {
        if (!ok) pass = false;
    }
    std::string detail() const {
        std::ostringstream os;
        os << "worst_err=" << format_sig17(worst);
        return os.str();
    }
};

}  // namespace

std::vector<CheckResult> run_verify(int threads) {
    std::vector<CheckResult> out;
    auto push = [&out](const std::string& name, bool pass, const std::string& detail) {
        out.push_back(CheckResult{name, pass, detail});
    };

    {  // Walsh round trip and Parseval
        Group g;
        for (int n : {1, 3, 6}) {
            Rng rng(1000 + static_cast<std::uint64_t>(n));
            CubeFunction f = random_function(n, rng);
            WalshSpectrum s = walsh_transform(f);
            g.absorb(max_abs_diff(inverse_walsh(s), f), 1e-12);
            double p = 0.0, e2 = 0.0;
            for (double c : s.coeffs) p += c * c;
            for (double v : f.values) e2 += v * v;
            e2 /= static_cast<double>(f.values.size());
            g.absorb(std::abs(p - e2), 1e-12);
        }
        push("walsh-roundtrip", g.pass, g.detail());
    }

    {  // adjointness, semigroup composition, gradient commutation, T-identity
        Group g;
        for (int n : {2, 4, 6}) {
            Rng rng(2000 + static_cast<std::uint64_t>(n));
            CubeFunction f = random_function(n, rng);
            CubeFunction h = random_function(n, rng);
            for (int i = 1; i <= n; ++i)
                g.absorb(std::abs(inner_product(partial(f, i), h) -
                                  inner_product(f, creation(h, i))),
                         1e-12);
            const double s = 0.3, t = 0.9;
            g.absorb(max_abs_diff(semigroup(semigroup(f, s), t), semigroup(f, s + t)), 1e-12);
            g.absorb(max_abs_diff(p0(p0(f)), p0(f)), 1e-12);
            for (int i = 1; i <= n; ++i)
                g.absorb(max_abs_diff(partial(semigroup(f, t), i),
                                      scaled(semigroup(partial(f, i), t), std::exp(-t))),
                         1e-12);
            VectorField tg = t_operator(f);
            g.absorb(max_abs_diff(curl_residual(tg), p0(f)), 1e-12);
        }
        push("operator-identities", g.pass, g.detail());
    }

    {  // curl membership of the h_k = x_k d_k H_k construction
        Group g;
        for (int n : {2, 4, 6}) {
            Rng rng(3000 + static_cast<std::uint64_t>(n));
            VectorField h;
            h.n = n;
            for (int k = 1; k <= n; ++k)
                h.components.push_back(creation(partial(random_function(n, rng), k), k));
            // each component is x_k d_k H_k = creation(partial(H_k,k),k)
            g.absorb(max_abs(curl_residual(h)), 1e-12);
        }
        push("curl-examples", g.pass, g.detail());
    }

    {  // kernel exact identities and row mean zero
        Group g;
        for (int n = 1; n <= 12; ++n) {
            KernelTable t = kernel_table(n);
            for (int k = 0; k <= n - 1; ++k) {
                const Rational rhs = phi_tail(n, k).exact /
                                     (Rational(n - k) * Rational(binomial_exact(n, k)));
                g.require(t.plus_exact[static_cast<std::size_t>(k)] == rhs);
            }
            for (int k = 1; k <= n; ++k) {
                const Rational rhs = phi_tail(n, k - 1).exact /
                                     (Rational(k) * Rational(binomial_exact(n, k)));
                g.require(-t.minus_exact[static_cast<std::size_t>(k)] == rhs);
            }
            Rational row = 0;
            for (int k = 0; k <= n; ++k) {
                if (k <= n - 1)
                    row += Rational(binomial_exact(n - 1, k)) * t.plus_exact[static_cast<std::size_t>(k)];
                if (k >= 1)
                    row += Rational(binomial_exact(n - 1, k - 1)) * t.minus_exact[static_cast<std::size_t>(k)];
            }
            g.require(row == 0);
        }
        push("kernel-exact", g.pass, g.pass ? "beta/tail identities exact, rows mean-zero" : "exact identity failed");
    }

    {  // Gray-code objective vs dense matrix, permutation invariance
        Group g;
        for (int n : {2, 4, 6}) {
            KernelTable t = kernel_table(n);
            Rng rng(4000 + static_cast<std::uint64_t>(n));
            SphereVector lam = SphereVector::normalized(random_unit_vector(n, rng));
            const std::vector<double> M = dense_matrix(t);
            double direct = 0.0;
            for (std::size_t z = 0; z < (std::size_t{1} << n); ++z) {
                double s = 0.0;
                for (int i = 0; i < n; ++i)
                    s += lam.coords[static_cast<std::size_t>(i)] *
                         M[z * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
                direct += std::abs(s);
            }
            g.absorb(std::abs(objective(t, lam) - direct), 1e-12);
            std::vector<double> perm(lam.coords.rbegin(), lam.coords.rend());
            g.absorb(std::abs(objective(t, lam) - objective(t, SphereVector(n, perm))), 1e-12);
        }
        push("objective-consistency", g.pass, g.detail());
    }

    {  // multistart against the exact enumeration oracle
        Group g;
        for (int n = 1; n <= 4; ++n) {
            MultistartConfig cfg;
            cfg.restarts = 40;
            cfg.threads = threads;
            DualNormReport rep = multistart(n, cfg);
            g.absorb(std::abs(rep.value - brute_force_norm(n)), 1e-12);
            g.require(rep.certified);
        }
        push("ascent-oracle", g.pass, g.detail());
    }

    {  // duality: brute-force maximizer realizes the norm through the kernel
        Group g;
        for (int n = 1; n <= 4; ++n) {
            CubeFunction gmax;
            const double v = brute_force_norm(n, &gmax);
            g.absorb(std::abs(sup_ell2_norm(apply_kernel(kernel_table(n), gmax)) - v), 1e-12);
        }
        push("kernel-duality", g.pass, g.detail());
    }

    {  // Gram matrix moments exact on every slice
        Group g;
        for (int n = 2; n <= 8; ++n)
            for (int k = 1; k <= n - 1; ++k) g.require(gram_check(n, k).exact_match);
        push("gram-exact", g.pass, g.pass ? "conditional moments exact" : "mismatch");
    }

    {  // two-point inequality at k = sqrt(2 pi), plus both failure witnesses
        Group g;
        const double k = std::sqrt(2.0 * kPi);
        const int grid = 801;
        double mn = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double a = 0.0005 + (0.999 * i) / (grid - 1);
            for (int j = 0; j < grid; ++j) {
                const double b = 0.0005 + (0.999 * j) / (grid - 1);
                mn = std::min(mn, two_point_defect(a, b, k));
            }
        }
        g.absorb(-mn, 1e-12);
        g.require(two_point_defect(0.4995, 0.5005, k * 1.001) < 0.0);
        g.require(two_point_curvature_fails(1.0).value < 0.0);
        g.require(two_point_curvature_fails(0.01).value < 0.0);
        push("two-point", g.pass, g.detail());
    }

    {  // Bellman constants and the derived chain constants
        Group g;
        const int grid = 2001;
        std::vector<double> xs(grid), bq(grid), bq2(grid), bi(grid), bi2(grid);
        for (int i = 0; i < grid; ++i) {
            const double x = (i + 1) / static_cast<double>(grid + 1);
            xs[static_cast<std::size_t>(i)] = x;
            bq[static_cast<std::size_t>(i)] = x * (1.0 - x);
            bq2[static_cast<std::size_t>(i)] = -2.0;
            bi[static_cast<std::size_t>(i)] = gauss::profile(x);
            bi2[static_cast<std::size_t>(i)] = gauss::profile_d2(x);
        }
        // grid contains 1/2 when grid is odd: (grid+1)/2 / (grid+1) = 1/2
        const double mq = mb_functional(bq, bq2);
        const double mi = mb_functional(bi, bi2);
        g.require(mq == 0.125);
        g.absorb(std::abs(mi - 1.0 / (2.0 * kPi)), 1e-9);
        // chain: 2 sqrt2 sqrt(M) * pi/2 gives sqrt(pi) for M_I and pi/2 for 1/8
        g.absorb(std::abs(2.0 * std::sqrt(2.0 * mi) * kPi / 2.0 - std::sqrt(kPi)), 1e-9);
        g.absorb(std::abs(2.0 * std::sqrt(2.0 * mq) * kPi / 2.0 - kPi / 2.0), 1e-12);
        push("bellman-constants", g.pass, g.detail());
    }

    {  // Bobkov inequality on random [0,1] functions
        Group g;
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            Rng rng(5000 + static_cast<std::uint64_t>(trial));
            const int n = 1 + static_cast<int>(rng.raw() % 6);
            worst = std::min(worst, bobkov_check(random_function(n, rng, 0.0, 1.0)));
        }
        g.absorb(-worst, 1e-12);
        push("bobkov", g.pass, g.detail());
    }

    {  // graph-form inequality ratio < pi/2
        Group g;
        double sup = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            Rng rng(6000 + static_cast<std::uint64_t>(trial));
            const int n = 1 + static_cast<int>(rng.raw() % 8);
            sup = std::max(sup, graph_inequality_ratio(random_function(n, rng)));
        }
        g.require(sup < kPi / 2.0);
        g.worst = sup;
        push("graph-ratio", g.pass, g.detail());
    }

    {  // Khintchine: oracle sandwich and certificate at p = 3/4
        Group g;
        const BiasedDist d = BiasedDist::from_p(0.75);
        const CertifiedBound cert = certify_epsilon(0.75);
        g.require(cert.epsilon > 0.0);
        g.require(cert.q_upper < 1.0);
        g.require(cert.branch2 < 0.97);
        for (int n = 1; n <= 4; ++n) {
            MultistartConfig cfg;
            cfg.restarts = 16;
            SphereAscentResult lo = q_lower(d, n, cfg);
            const double ex = q_exact_small(d, n);
            g.absorb(std::abs(lo.value - ex), 1e-10);
            g.require(ex < 1.0 && ex <= cert.q_upper + 1e-12);
        }
        push("khintchine-certificate", g.pass, g.detail());
    }

    {  // moment engine against direct enumeration
        Group g;
        for (double p : {0.5, 0.75, 0.9}) {
            const BiasedDist d = BiasedDist::from_p(p);
            Rng rng(7000 + static_cast<std::uint64_t>(p * 100));
            const int n = 6;
            std::vector<double> lam = random_unit_vector(n, rng);
            MomentReport mr = cumulant_moments(d, lam);
            // direct enumeration of E ell^2m
            double e2 = 0, e4 = 0, e8 = 0;
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                double s = 0.0, w = 1.0;
                for (int i = 0; i < n; ++i) {
                    const bool minus = (mask >> i) & 1;
                    s += lam[static_cast<std::size_t>(i)] * (minus ? d.v_minus : d.v_plus);
                    w *= minus ? (1.0 - d.prob_plus) : d.prob_plus;
                }
                const double s2 = s * s;
                e2 += w * s2;
                e4 += w * s2 * s2;
                e8 += w * s2 * s2 * s2 * s2;
            }
            g.absorb(std::abs(mr.ell2 - e2), 1e-12);
            g.absorb(std::abs(mr.ell4 - e4), 1e-12);
            g.absorb(std::abs(mr.ell8 - e8), 1e-10);
            // closed form E ell^4 = sum lambda^4 (E xi^4 - 3) + 3
            double l4 = 0.0;
            for (double x : lam) l4 += x * x * x * x;
            g.absorb(std::abs(mr.ell4 - (l4 * (d.moment(4) - 3.0) + 3.0)), 1e-12);
        }
        push("moment-engine", g.pass, g.detail());
    }

    {  // series behavior
        Group g;
        const double g100 = kPi / 2.0 - lp_sum(100);
        const double g1k = kPi / 2.0 - lp_sum(1000);
        const double g10k = kPi / 2.0 - lp_sum(10000);
        g.require(g100 > g1k && g1k > g10k && g10k > 0.0 && g10k < 0.05);
        for (long long n : {10LL, 100LL, 1000LL, 10000LL}) {
            const L1Growth s = l1_growth(n);
            g.absorb(std::abs(s.value - s.companion), 1e-8);
            g.require(std::abs(s.value - std::log(static_cast<double>(n))) <= 2.0);
        }
        g.absorb(std::abs(clt_bernoulli(9) - 0.8203125), 5e-5);
        push("series", g.pass, g.detail());
    }

    {  // reference constants
        Group g;
        g.absorb(std::abs(rho_quadrature_selfcheck(2000) - kPi / 2.0), 1e-10);
        g.absorb(std::abs(two_value_constant().value - std::sqrt(kPi / 2.0)), 1e-6);
        g.absorb(std::abs(majority_odd(9999).grad_norm - 2.0 / std::sqrt(kPi)), 1e-3);
        g.absorb(std::abs(majority_odd(9999).ratio - std::sqrt(kPi) / 2.0), 1e-3);
        g.absorb(std::abs(majority_even(10000).grad_norm -
                          (1.0 + std::sqrt(2.0)) / std::sqrt(2.0 * kPi)),
                 2e-3);
        g.absorb(std::abs(-gauss::profile_d2(0.5) - std::sqrt(2.0 * kPi)), 1e-9);
        const SymmetricSetReport sym = symmetric_set_constants();
        g.absorb(std::abs(sym.c1 - std::sqrt(kPi) / 2.0), 1e-9);
        g.absorb(std::abs(sym.ana_max - std::sqrt(kPi) / 2.0), 1e-6);
        push("constants-table", g.pass, g.detail());
    }

    {  // improved Poincare bound machinery
        Group g;
        g.absorb(std::abs(improved_cdual_bound(1000, false) - kPi / 2.0), 1e-8);
        const double bound = improved_cdual_bound(1000, true);
        g.require(bound < kPi / 2.0);
        push("improved-bound", g.pass, g.detail());
    }

    {  // decomposition gap bound
        Group g;
        for (int n = 1; n <= 10; ++n) {
            Rng rng(8000 + static_cast<std::uint64_t>(n));
            SphereVector lam = SphereVector::normalized(random_unit_vector(n, rng));
            const double gap = decomposition_gap(n, lam);
            g.require(gap <= 2.0 / std::sqrt(static_cast<double>(n + 1)));
        }
        push("decomposition", g.pass, g.pass ? "gap <= 2/sqrt(n+1)" : "bound violated");
    }

    return out;
}

}  // namespace cubelab
