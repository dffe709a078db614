#include "asymptotics.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cubelab {

namespace {

double lchoose(long long n, long long k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

constexpr double kLn2 = 0.69314718055994530941723212146;

// central binomial mass C(n,k) 2^-n in log space
double central_mass(long long n, long long k) {
    return std::exp(lchoose(n, k) - static_cast<double>(n) * kLn2);
}

// walk all k-subsets of {0..n-1} in lexicographic mask order
template <typename F>
void for_each_slice_mask(int n, int k, F&& fn) {
    if (k == 0) {
        fn(std::uint32_t{0});
        return;
    }
    std::uint32_t mask = (std::uint32_t{1} << k) - 1;
    const std::uint32_t limit = std::uint32_t{1} << n;
    while (mask < limit) {
        fn(mask);
        // Gosper's hack
        const std::uint32_t c = mask & (~mask + 1);
        const std::uint32_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

}  // namespace

MajorityOdd majority_odd(long long n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("majority_odd: n must be odd");
    if (n > 10000) throw std::invalid_argument("majority_odd: n too large");
    // ||grad f_n||_1 = 2^-n C(n,(n+1)/2) sqrt((n+1)/2) * 2; E|f_n| = 1.
    const double g =
        central_mass(n, (n + 1) / 2) * std::sqrt(static_cast<double>(n + 1) / 2.0) * 2.0;
    return MajorityOdd{g, 1.0 / g};
}

MajorityEven majority_even(long long n) {
    if (n < 2 || n % 2) throw std::invalid_argument("majority_even: n must be even");
    if (n > 1000000) throw std::invalid_argument("majority_even: n too large");
    const double half = static_cast<double>(n) / 2.0;
    const double g = central_mass(n, n / 2) * std::sqrt(static_cast<double>(n)) / 2.0 +
                     central_mass(n, n / 2 + 1) * std::sqrt(half + 1.0);
    const double ma = 1.0 - central_mass(n, n / 2);
    return MajorityEven{g, ma, ma / g};
}

double clt_bernoulli(long long n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("clt_bernoulli: n must be odd");
    if (n > 100000) throw std::invalid_argument("clt_bernoulli: n too large");
    // E|S_n| = n C(n-1,(n-1)/2) 2^-(n-1) for odd n
    const double e_abs = static_cast<double>(n) * central_mass(n - 1, (n - 1) / 2);
    return e_abs / std::sqrt(static_cast<double>(n));
}

L1Growth l1_growth(long long n) {
    if (n < 1 || n > 10000) throw std::invalid_argument("l1_growth: n out of range");
    // S_n = m_plus[0] + sum_{k>=1} C(n,k)|m_minus[k]| and
    // C(n,k)|m_minus[k]| = Phi_n(k-1)/k, so only the tails are needed.
    const std::vector<double> tail = phi_tail_row(n);
    const double mp0 = (1.0 - std::pow(2.0, -static_cast<double>(n))) / static_cast<double>(n);
    double s = mp0;
    for (long long k = 1; k <= n; ++k)
        s += tail[static_cast<std::size_t>(k - 1 + 1)] / static_cast<double>(k);
    // companion: integral form int_0^1 (1-((1+rho)/2)^n)/(1-rho) drho + m_plus[0]
    // evaluated exactly as sum_{j=1}^n (1-2^-j)/j.
    double comp = mp0;
    for (long long j = 1; j <= n; ++j)
        comp += (1.0 - std::pow(2.0, -static_cast<double>(j))) / static_cast<double>(j);
    return L1Growth{s, comp};
}

double lp_sum(long long n) {
    if (n < 2 || n > 1000000) throw std::invalid_argument("lp_sum: n out of range");
    const std::vector<double> tail = phi_tail_row(n);
    double s = 0.0;
    double comp = 0.0;
    for (long long k = 1; k <= n - 1; ++k) {
        const double term = tail[static_cast<std::size_t>(k + 1)] /
                            std::sqrt(static_cast<double>(k) * static_cast<double>(n - k));
        const double y = term - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

GramMatrix gram_matrix(int n, int k) {
    if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("gram_matrix: need 1 <= k <= n-1");
    GramMatrix g;
    g.n = n;
    g.k = k;
    g.diag = Rational(BigInt(n) * n, BigInt(4) * k * (n - k));
    g.offdiag = -g.diag / (n - 1);
    g.spectral_norm = g.diag * n / (n - 1);
    return g;
}

GramReport gram_check(int n, int k) {
    if (n > 14) throw std::invalid_argument("gram_check: n too large for enumeration");
    GramReport rep;
    rep.closed_form = gram_matrix(n, k);
    // Exact conditional moments over the slice: X = n/(2(n-k)) on +1 sites,
    // -n/(2k) on -1 sites.
    const Rational xp(BigInt(n), BigInt(2) * (n - k));
    const Rational xm(-BigInt(n), BigInt(2) * k);
    Rational s1 = 0, s2 = 0, s12 = 0;
    long long count = 0;
    for_each_slice_mask(n, k, [&](std::uint32_t mask) {
        const bool i_minus = mask & 1u;        // coordinate 1
        const bool j_minus = mask & 2u;        // coordinate 2
        const Rational xi = i_minus ? xm : xp;
        const Rational xj = j_minus ? xm : xp;
        s1 += xi;
        s2 += xi * xi;
        s12 += xi * xj;
        ++count;
    });
    const Rational cnt(count);
    rep.exact_match = (s1 == 0) && (s2 / cnt == rep.closed_form.diag) &&
                      (s12 / cnt == rep.closed_form.offdiag);
    return rep;
}

double slice_mean_abs(int n, int k, std::span<const double> lambda) {
    if (static_cast<int>(lambda.size()) != n)
        throw std::invalid_argument("slice_mean_abs: dimension mismatch");
    if (k < 0 || k > n) throw std::invalid_argument("slice_mean_abs: bad k");
    if (k == n) throw std::invalid_argument("slice_mean_abs: X undefined on the all-minus slice");
    const double xp = static_cast<double>(n) / (2.0 * static_cast<double>(n - k));
    const double xm = (k > 0) ? -static_cast<double>(n) / (2.0 * static_cast<double>(k)) : 0.0;
    double sum_all = 0.0;
    for (double l : lambda) sum_all += l;
    double acc = 0.0;
    long long count = 0;
    for_each_slice_mask(n, k, [&](std::uint32_t mask) {
        double s = sum_all * xp;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) s += lambda[static_cast<std::size_t>(i)] * (xm - xp);
        acc += std::abs(s);
        ++count;
    });
    return acc / static_cast<double>(count);
}

double first_formula(int n, std::span<const double> lambda) {
    if (n < 1 || n > 14) throw std::invalid_argument("first_formula: n out of range");
    const std::vector<double> tail = phi_tail_row(n);
    double acc = 0.0;
    for (int k = 0; k <= n - 1; ++k) {
        // sum_{r>k} C(n,r) = 2^n Phi_n(k)
        const double weight = std::ldexp(tail[static_cast<std::size_t>(k + 1)], n);
        acc += weight * slice_mean_abs(n, k, lambda);
    }
    return acc / (static_cast<double>(n) * std::ldexp(1.0, n - 1));
}

double decomposition_gap(int n, const SphereVector& lambda) {
    if (lambda.n != n) throw std::invalid_argument("decomposition_gap: dimension mismatch");
    const KernelTable table = kernel_table(n);
    const double obj = objective(table, lambda);
    const double ff = first_formula(n, lambda.coords);
    const double gap = std::abs(obj - ff);
    if (gap > 2.0 / std::sqrt(static_cast<double>(n + 1)) + 1e-12)
        throw std::logic_error("decomposition_gap: bound 2/sqrt(n+1) violated");
    return gap;
}

double cdsecond_value(int n, const SphereVector& lambda) {
    if (lambda.n != n) throw std::invalid_argument("cdsecond_value: dimension mismatch");
    if (n > 14) throw std::invalid_argument("cdsecond_value: n out of range");
    double acc = 0.0;
    for (int k = 1; k <= n / 2; ++k)  // the k = 0 term is defined as 0
        acc += slice_mean_abs(n, k, lambda.coords);
    return 2.0 * acc / static_cast<double>(n);
}

}  // namespace cubelab
