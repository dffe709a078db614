#include "kernel.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cubelab {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// int_0^{1/2} t^(a-1) (1-t)^(b-1) dt for integer a,b >= 1, exact:
// binomial expansion of (1-t)^(b-1) and term-by-term power rule at 1/2.
Rational half_beta(int a, int b) {
    Rational s = 0;
    for (int j = 0; j <= b - 1; ++j) {
        Rational term(binomial_exact(b - 1, j), (a + j));
        term /= pow2_exact(a + j);
        if (j & 1)
            s -= term;
        else
            s += term;
    }
    return s;
}

double lchoose(long long n, long long k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

SphereVector::SphereVector(int dim, std::vector<double> c) : n(dim), coords(std::move(c)) {
    if (n < 1 || coords.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("SphereVector: bad dimension");
    if (std::abs(norm2(coords) - 1.0) > 1e-12)
        throw std::invalid_argument("SphereVector: not unit norm");
}

SphereVector SphereVector::normalized(std::vector<double> c) {
    const double nm = norm2(c);
    if (nm == 0.0) throw std::invalid_argument("SphereVector: zero vector");
    for (double& x : c) x /= nm;
    SphereVector v;
    v.n = static_cast<int>(c.size());
    v.coords = std::move(c);
    return v;
}

SphereVector SphereVector::axis(int n, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("SphereVector::axis: bad index");
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    c[static_cast<std::size_t>(i - 1)] = 1.0;
    return SphereVector(n, std::move(c));
}

SphereVector SphereVector::uniform(int n) {
    std::vector<double> c(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    return SphereVector(n, std::move(c));
}

double KernelTable::entry(int weight, int sign) const {
    if (sign == 1) {
        if (weight < 0 || weight > n - 1)
            throw std::invalid_argument("KernelTable::entry: weight out of range for +1");
        return plus_f[static_cast<std::size_t>(weight)];
    }
    if (sign == -1) {
        if (weight < 1 || weight > n)
            throw std::invalid_argument("KernelTable::entry: weight out of range for -1");
        return minus_f[static_cast<std::size_t>(weight)];
    }
    throw std::invalid_argument("KernelTable::entry: sign must be +1 or -1");
}

std::string KernelTable::to_json() const {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"m_plus\":[";
    for (int k = 0; k <= n - 1; ++k) {
        if (k) os << ",";
        os << "\"" << rational_str(plus_exact[static_cast<std::size_t>(k)]) << "\"";
    }
    os << "],\"m_minus\":[";
    for (int k = 1; k <= n; ++k) {
        if (k > 1) os << ",";
        os << "\"" << rational_str(minus_exact[static_cast<std::size_t>(k)]) << "\"";
    }
    os << "]}";
    return os.str();
}

KernelTable kernel_table(int n) {
    if (n < 1 || n > 30) throw std::invalid_argument("kernel_table: n must be in [1,30]");
    KernelTable t;
    t.n = n;
    t.plus_exact.resize(static_cast<std::size_t>(n));
    t.minus_exact.resize(static_cast<std::size_t>(n) + 1);
    t.plus_f.resize(static_cast<std::size_t>(n));
    t.minus_f.resize(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n - 1; ++k) {
        t.plus_exact[static_cast<std::size_t>(k)] = half_beta(k + 1, n - k);
        t.plus_f[static_cast<std::size_t>(k)] = to_double(t.plus_exact[static_cast<std::size_t>(k)]);
    }
    for (int k = 1; k <= n; ++k) {
        t.minus_exact[static_cast<std::size_t>(k)] = -half_beta(k, n - k + 1);
        t.minus_f[static_cast<std::size_t>(k)] = to_double(t.minus_exact[static_cast<std::size_t>(k)]);
    }
    // Pad the unused boundary entries so alpha/beta are defined for every
    // weight: at k=0 every z_i is +1 and at k=n every z_i is -1, so the
    // padded side never contributes.
    t.alpha_f.resize(static_cast<std::size_t>(n) + 1);
    t.beta_f.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const double mp = (k <= n - 1) ? t.plus_f[static_cast<std::size_t>(k)] : 0.0;
        const double mm = (k >= 1) ? t.minus_f[static_cast<std::size_t>(k)] : 0.0;
        t.alpha_f[static_cast<std::size_t>(k)] = 0.5 * (mp - mm);
        t.beta_f[static_cast<std::size_t>(k)] = 0.5 * (mp + mm);
    }
    return t;
}

double BinomialTail::value() const {
    if (has_exact) return to_double(exact);
    return std::exp(log_value);
}

BinomialTail phi_tail(long long n, long long k) {
    if (n < 1) throw std::invalid_argument("phi_tail: n must be positive");
    if (k < -1 || k > n) throw std::invalid_argument("phi_tail: k out of range");
    BinomialTail t;
    t.n = n;
    t.k = k;
    if (k == n) {
        t.has_exact = true;
        t.exact = 0;
        t.log_value = -std::numeric_limits<double>::infinity();
        return t;
    }
    if (k == -1) {
        t.has_exact = true;
        t.exact = 1;
        t.log_value = 0.0;
        return t;
    }
    if (n <= 64) {
        BigInt num = 0;
        for (long long r = k + 1; r <= n; ++r) num += binomial_exact(n, r);
        t.has_exact = true;
        t.exact = Rational(num, pow2_exact(n));
        const double v = to_double(t.exact);
        t.log_value = std::log(v);
        return t;
    }
    if (n > 10000000LL) throw std::invalid_argument("phi_tail: n too large");
    // log-space sum of pmf terms, Kahan-compensated relative to the peak term
    const double ln2 = std::log(2.0);
    const long long lo = k + 1;
    long long peak = std::max(lo, n / 2);
    double lead = lchoose(n, peak) - static_cast<double>(n) * ln2;
    double acc = 0.0;
    double comp = 0.0;
    for (long long r = lo; r <= n; ++r) {
        const double lp = lchoose(n, r) - static_cast<double>(n) * ln2 - lead;
        const double term = std::exp(lp);
        const double y = term - comp;
        const double s = acc + y;
        comp = (s - acc) - y;
        acc = s;
        // terms beyond the peak decay geometrically; stop when negligible
        if (r > peak && lp < -60.0) break;
    }
    t.has_exact = false;
    t.log_value = lead + std::log(acc);
    return t;
}

std::vector<double> phi_tail_row(long long n) {
    if (n < 1 || n > 10000000LL) throw std::invalid_argument("phi_tail_row: n out of range");
    const double ln2 = std::log(2.0);
    std::vector<double> tail(static_cast<std::size_t>(n) + 2, 0.0);
    // tail[k+1] = Phi_n(k); accumulate pmf from the top (all positive terms)
    double acc = 0.0;
    double comp = 0.0;  // Kahan compensation
    for (long long k = n; k >= -1; --k) {
        tail[static_cast<std::size_t>(k + 1)] = acc;
        if (k >= 0) {
            const double pmf = std::exp(lchoose(n, k) - static_cast<double>(n) * ln2);
            const double y = pmf - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
    }
    return tail;
}

VectorField apply_kernel(const KernelTable& table, const CubeFunction& g) {
    if (table.n != g.n) throw std::invalid_argument("apply_kernel: dimension mismatch");
    if (g.n > 12) throw std::invalid_argument("apply_kernel: quadratic-cost oracle, n <= 12");
    const int n = g.n;
    const std::size_t m = g.values.size();
    VectorField out;
    out.n = n;
    out.components.assign(static_cast<std::size_t>(n), CubeFunction::constant(n, 0.0));
    for (std::size_t x = 0; x < m; ++x) {
        for (int i = 0; i < n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            double s = 0.0;
            for (std::size_t z = 0; z < m; ++z) {
                const int k = std::popcount(static_cast<std::uint32_t>(z));
                const double mz = (z & bit) ? table.minus_f[static_cast<std::size_t>(k)]
                                            : table.plus_f[static_cast<std::size_t>(k)];
                s += mz * g.values[z ^ x];
            }
            out.components[static_cast<std::size_t>(i)].values[x] = (x & bit) ? -s : s;
        }
    }
    return out;
}

double objective(const KernelTable& table, const SphereVector& lambda) {
    if (lambda.n != table.n) throw std::invalid_argument("objective: dimension mismatch");
    const int n = table.n;
    const std::size_t m = std::size_t{1} << n;
    double sum_lambda = 0.0;
    for (double x : lambda.coords) sum_lambda += x;

    // Reflected Gray code starting at z = 0 (all +1): position j flips bit
    // ctz(j+1); the signed inner product <lambda, z> updates in O(1).
    double dot = sum_lambda;  // at z = 0 each z_i = +1
    std::uint32_t gray = 0;
    int weight = 0;
    double total = 0.0;
    for (std::size_t j = 0;; ++j) {
        total += std::abs(table.alpha_f[static_cast<std::size_t>(weight)] * dot +
                          table.beta_f[static_cast<std::size_t>(weight)] * sum_lambda);
        if (j + 1 >= m) break;
        const int b = std::countr_zero(static_cast<std::uint64_t>(j + 1));
        const std::uint32_t bit = std::uint32_t{1} << b;
        gray ^= bit;
        if (gray & bit) {
            dot -= 2.0 * lambda.coords[static_cast<std::size_t>(b)];
            ++weight;
        } else {
            dot += 2.0 * lambda.coords[static_cast<std::size_t>(b)];
            --weight;
        }
    }
    return total;
}

std::vector<double> dense_matrix(const KernelTable& table) {
    if (table.n > 16) throw std::invalid_argument("dense_matrix: test oracle, n <= 16");
    const int n = table.n;
    const std::size_t m = std::size_t{1} << n;
    std::vector<double> M(static_cast<std::size_t>(n) * m);
    for (std::size_t z = 0; z < m; ++z) {
        const int k = std::popcount(static_cast<std::uint32_t>(z));
        for (int i = 0; i < n; ++i) {
            M[z * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                (z >> i) & 1 ? table.minus_f[static_cast<std::size_t>(k)]
                             : table.plus_f[static_cast<std::size_t>(k)];
        }
    }
    return M;
}

}  // namespace cubelab
