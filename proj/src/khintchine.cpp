#include "khintchine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "util.hpp"

namespace cubelab {

namespace {

constexpr double kPi = std::numbers::pi;

long long binom_ll(int n, int k) {
    long long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// moments -> cumulants, m[0] = 1
std::vector<double> cumulants_from_moments(const std::vector<double>& m) {
    std::vector<double> k(m.size(), 0.0);
    for (std::size_t nn = 1; nn < m.size(); ++nn) {
        double s = m[nn];
        for (std::size_t j = 1; j < nn; ++j)
            s -= static_cast<double>(binom_ll(static_cast<int>(nn) - 1, static_cast<int>(j) - 1)) *
                 k[j] * m[nn - j];
        k[nn] = s;
    }
    return k;
}

// cumulants -> moments, kappa[0] unused
std::vector<double> moments_from_cumulants(const std::vector<double>& kappa) {
    std::vector<double> m(kappa.size(), 0.0);
    m[0] = 1.0;
    for (std::size_t nn = 1; nn < kappa.size(); ++nn) {
        double s = 0.0;
        for (std::size_t j = 1; j <= nn; ++j)
            s += static_cast<double>(binom_ll(static_cast<int>(nn) - 1, static_cast<int>(j) - 1)) *
                 kappa[j] * m[nn - j];
        m[nn] = s;
    }
    return m;
}

}  // namespace

BiasedDist BiasedDist::from_p(double p) {
    if (!(p >= 0.5 && p < 1.0)) throw std::invalid_argument("BiasedDist: p must be in [1/2, 1)");
    BiasedDist d;
    d.p = p;
    d.prob_plus = p;
    d.v_plus = std::sqrt((1.0 - p) / p);
    d.v_minus = -std::sqrt(p / (1.0 - p));
    return d;
}

BiasedDist BiasedDist::from_time(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("BiasedDist: time must be positive");
    return from_p(0.5 * (1.0 + std::exp(-t)));
}

double BiasedDist::moment(int j) const {
    return prob_plus * std::pow(v_plus, j) + (1.0 - prob_plus) * std::pow(v_minus, j);
}

double BiasedDist::abs_moment(int j) const {
    return prob_plus * std::pow(v_plus, j) + (1.0 - prob_plus) * std::pow(-v_minus, j);
}

double exact_mean_abs(const BiasedDist& d, std::span<const double> lambda) {
    const int n = static_cast<int>(lambda.size());
    if (n < 1 || n > 24) throw std::invalid_argument("exact_mean_abs: n must be in [1,24]");
    const std::size_t m = std::size_t{1} << n;

    // weight depends only on the number of minus coordinates
    std::vector<double> wt(static_cast<std::size_t>(n) + 1);
    for (int c = 0; c <= n; ++c)
        wt[static_cast<std::size_t>(c)] =
            std::pow(d.prob_plus, n - c) * std::pow(1.0 - d.prob_plus, c);

    double s = 0.0;  // current sum at mask 0: all coordinates at v_plus
    for (double l : lambda) s += l * d.v_plus;
    const double step = d.v_minus - d.v_plus;

    double acc = 0.0;
    double comp = 0.0;
    std::uint32_t gray = 0;
    int minus_count = 0;
    for (std::size_t j = 0;; ++j) {
        const double term = wt[static_cast<std::size_t>(minus_count)] * std::abs(s);
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        if (j + 1 >= m) break;
        const int b = std::countr_zero(static_cast<std::uint64_t>(j + 1));
        gray ^= std::uint32_t{1} << b;
        if (gray & (std::uint32_t{1} << b)) {
            s += lambda[static_cast<std::size_t>(b)] * step;
            ++minus_count;
        } else {
            s -= lambda[static_cast<std::size_t>(b)] * step;
            --minus_count;
        }
    }
    if (acc > 1.0 + 1e-12)
        throw std::logic_error("exact_mean_abs: Cauchy-Schwarz bound violated");
    return acc;
}

namespace {

// One ascent pass: w = E[sign(<lambda,xi>) xi]; new lambda = w/||w||.
// Enumerates the 2^n outcomes once.
std::vector<double> ascent_direction(const BiasedDist& d, std::span<const double> lambda) {
    const int n = static_cast<int>(lambda.size());
    const std::size_t m = std::size_t{1} << n;
    std::vector<double> wt(static_cast<std::size_t>(n) + 1);
    for (int c = 0; c <= n; ++c)
        wt[static_cast<std::size_t>(c)] =
            std::pow(d.prob_plus, n - c) * std::pow(1.0 - d.prob_plus, c);
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (std::size_t mask = 0; mask < m; ++mask) {
        const int c = std::popcount(static_cast<std::uint32_t>(mask));
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += lambda[static_cast<std::size_t>(i)] *
                 ((mask >> i) & 1 ? d.v_minus : d.v_plus);
        const double u = (s < 0.0) ? -1.0 : 1.0;
        const double uw = u * wt[static_cast<std::size_t>(c)];
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] += uw * ((mask >> i) & 1 ? d.v_minus : d.v_plus);
    }
    return w;
}

}  // namespace

SphereAscentResult q_lower(const BiasedDist& d, int n, const MultistartConfig& config) {
    if (n < 1 || n > 24) throw std::invalid_argument("q_lower: n must be in [1,24]");
    const int restarts = config.restarts < 0 ? 32 : config.restarts;

    std::vector<SphereVector> starts;
    for (int i = 1; i <= n; ++i) starts.push_back(SphereVector::axis(n, i));
    starts.push_back(SphereVector::uniform(n));
    for (int r = 0; r < restarts; ++r) {
        Rng rng(config.seed + static_cast<std::uint64_t>(r));
        starts.push_back(SphereVector::normalized(random_unit_vector(n, rng)));
    }

    SphereAscentResult best;
    for (const auto& s0 : starts) {
        std::vector<double> lambda = s0.coords;
        double value = exact_mean_abs(d, lambda);
        long long it = 0;
        for (; it < 10000; ++it) {
            std::vector<double> w = ascent_direction(d, lambda);
            double nm = 0.0;
            for (double x : w) nm += x * x;
            nm = std::sqrt(nm);
            if (nm == 0.0) break;
            for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = w[i] / nm;
            const double nv = exact_mean_abs(d, lambda);
            if (nv < value - 1e-12) throw std::logic_error("q_lower: objective decreased");
            if (nv - value < 1e-13) {
                value = std::max(value, nv);
                break;
            }
            value = nv;
        }
        best.iterations += it + 1;
        if (value > best.value) {
            best.value = value;
            best.lambda = SphereVector::normalized(std::move(lambda));
        }
    }
    return best;
}

double q_exact_small(const BiasedDist& d, int n, std::vector<double>* best_signs,
                     SphereVector* best_lambda) {
    if (n < 1 || n > 4) throw std::invalid_argument("q_exact_small: n must be in [1,4]");
    const std::size_t m = std::size_t{1} << n;
    std::vector<double> wt(m);
    std::vector<double> xi(m * static_cast<std::size_t>(n));
    for (std::size_t mask = 0; mask < m; ++mask) {
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            const bool minus = (mask >> i) & 1;
            xi[mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                minus ? d.v_minus : d.v_plus;
            w *= minus ? (1.0 - d.prob_plus) : d.prob_plus;
        }
        wt[mask] = w;
    }

    // w(s) = sum_mask wt * s * xi; Gray-code over sign assignments flips one
    // outcome per step.
    std::vector<double> s(m, 1.0);
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (std::size_t mask = 0; mask < m; ++mask)
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] +=
                wt[mask] * xi[mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    auto norm_sq = [&] {
        double t = 0.0;
        for (double x : w) t += x * x;
        return t;
    };
    double best = norm_sq();
    std::vector<double> bs = s;
    std::vector<double> bw = w;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t j = 1; j < count; ++j) {
        const int z = std::countr_zero(j);
        const double flip = -2.0 * s[static_cast<std::size_t>(z)];
        s[static_cast<std::size_t>(z)] += flip;
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] +=
                flip * wt[static_cast<std::size_t>(z)] *
                xi[static_cast<std::size_t>(z) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
        const double v = norm_sq();
        if (v > best) {
            best = v;
            bs = s;
            bw = w;
        }
    }
    if (best_signs) *best_signs = bs;
    if (best_lambda) *best_lambda = SphereVector::normalized(bw);
    return std::sqrt(best);
}

MomentReport cumulant_moments(const BiasedDist& d, std::span<const double> lambda) {
    constexpr int kOrder = 8;
    std::vector<double> mxi(kOrder + 1);
    for (int j = 0; j <= kOrder; ++j) mxi[static_cast<std::size_t>(j)] = d.moment(j);
    std::vector<double> kxi = cumulants_from_moments(mxi);

    std::vector<double> power_sums(kOrder + 1, 0.0);
    for (double l : lambda)
        for (int j = 1; j <= kOrder; ++j)
            power_sums[static_cast<std::size_t>(j)] += std::pow(l, j);

    std::vector<double> kell(kOrder + 1, 0.0);
    for (int j = 1; j <= kOrder; ++j)
        kell[static_cast<std::size_t>(j)] =
            kxi[static_cast<std::size_t>(j)] * power_sums[static_cast<std::size_t>(j)];
    std::vector<double> mell = moments_from_cumulants(kell);

    MomentReport r;
    r.p = d.p;
    r.ell2 = mell[2];
    r.ell4 = mell[4];
    r.ell6 = mell[6];
    r.ell8 = mell[8];
    r.var_ell2 = r.ell4 - 1.0;
    r.x2 = r.var_ell2;
    r.x4 = r.ell8 - 4.0 * r.ell6 + 6.0 * r.ell4 - 4.0 * r.ell2 + 1.0;
    r.ratio_B = (r.x2 > 0.0) ? r.x4 / (r.x2 * r.x2) : 0.0;
    return r;
}

std::string CertifiedBound::to_json() const {
    std::ostringstream os;
    os << "{\"p\":" << format_sig17(p) << ",\"theta\":" << format_sig17(theta)
       << ",\"epsilon\":" << format_sig17(epsilon) << ",\"q_upper\":" << format_sig17(q_upper)
       << ",\"branch1\":" << format_sig17(branch1) << ",\"branch2\":" << format_sig17(branch2)
       << ",\"audit\":{"
       << "\"B\":" << format_sig17(b_bound)
       << ",\"ell8_bound\":" << format_sig17(ell8_bound)
       << ",\"x4_bound\":" << format_sig17(x4_bound)
       << ",\"var_lower\":" << format_sig17(var_lower)
       << ",\"pz_probability\":" << format_sig17(pz_probability)
       << ",\"radius_cap\":" << format_sig17(radius_cap)
       << ",\"eps_from_pz\":" << format_sig17(eps_from_pz)
       << ",\"eps_from_radius\":" << format_sig17(eps_from_radius) << "}}";
    return os.str();
}

CertifiedBound certify_epsilon(double p, double theta) {
    if (!(p > 0.5 && p < 1.0)) throw std::invalid_argument("certify_epsilon: p must be in (1/2, 1)");
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("certify_epsilon: bad theta");

    CertifiedBound c;
    c.p = p;
    c.theta = theta;
    c.branch2 = 2.0 * std::sqrt(p * (1.0 - p)) + std::sqrt(1.0 - theta);
    if (c.branch2 >= 1.0)
        throw CertificationError("certify_epsilon: concentrated branch exceeds 1 at this (p, theta)");

    // Worst-case E ell^8 over the sphere: |kappa_j(ell)| <= |kappa_j(xi)| for
    // j >= 2 because sum |lambda_i|^j <= 1, then the moment recursion with
    // triangle inequality, which is monotone in the |kappa| inputs.
    BiasedDist d = BiasedDist::from_p(p);
    std::vector<double> mxi(9);
    for (int j = 0; j <= 8; ++j) mxi[static_cast<std::size_t>(j)] = d.moment(j);
    std::vector<double> kxi = cumulants_from_moments(mxi);
    std::vector<double> kabs(9, 0.0);
    for (int j = 2; j <= 8; ++j) kabs[static_cast<std::size_t>(j)] = std::abs(kxi[static_cast<std::size_t>(j)]);
    std::vector<double> mhat = moments_from_cumulants(kabs);
    c.ell8_bound = mhat[8];
    // E X^4 = E ell^8 - 4 E ell^6 + 6 E ell^4 - 3 <= mhat8 + 6 mhat4 - 3.
    c.x4_bound = mhat[8] + 6.0 * mhat[4] - 3.0;

    // Dispersed branch: Var[ell^2] >= 2(1-theta); Paley-Zygmund at t = 1/2.
    c.var_lower = 2.0 * (1.0 - theta);
    c.b_bound = c.x4_bound / (c.var_lower * c.var_lower);
    c.pz_probability = 9.0 / (16.0 * c.b_bound);

    // Contradiction needs 2 eps < 9/(16B) and the concentration radius
    // sqrt(eps + 2 eps^2)(1 + sqrt(eps + 2 eps^2)) below the Paley-Zygmund
    // threshold. The threshold (1/2) sqrt(var_lower) is rounded down by 1%,
    // matching the 0.0707 -> 0.07 rounding at theta = 0.99.
    c.radius_cap = 0.7 * std::sqrt(1.0 - theta);
    c.eps_from_pz = 0.5 * (c.pz_probability - 1e-9);
    {
        const double s = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * c.radius_cap));
        c.eps_from_radius = 0.25 * (-1.0 + std::sqrt(1.0 + 8.0 * s * s)) * (1.0 - 1e-9);
    }
    c.epsilon = std::min(c.eps_from_pz, c.eps_from_radius);
    if (!(c.epsilon > 0.0))
        throw CertificationError("certify_epsilon: no positive epsilon satisfies the contradiction");

    c.branch1 = 1.0 - c.epsilon * c.epsilon;
    if (c.branch1 >= 1.0)
        throw CertificationError("certify_epsilon: certified drop underflows double precision");
    c.q_upper = std::max(c.branch1, c.branch2);
    return c;
}

double improved_cdual_bound(int grid_size, bool use_certificates, double theta) {
    if (grid_size < 100) throw std::invalid_argument("improved_cdual_bound: grid_size must be >= 100");
    if (grid_size % 2) ++grid_size;  // Simpson needs an even panel count

    // After rho = sin(u) the integrand is min(1, q_upper) on u in [0, pi/2].
    // Integrate the deficit 1 - integrand and subtract from pi/2 so the tiny
    // certified margin is not lost to rounding against the O(1) bulk.
    auto deficit = [&](double u) -> double {
        if (!use_certificates) return 0.0;
        const double rho = std::sin(u);
        const double p = 0.5 * (1.0 + rho);
        if (!(p > 0.5 && p < 1.0)) return 0.0;
        try {
            const CertifiedBound c = certify_epsilon(p, theta);
            return std::max(0.0, 1.0 - std::min(1.0, c.q_upper));
        } catch (const CertificationError&) {
            return 0.0;  // trivial bound 1
        }
    };

    const double h = (kPi / 2.0) / grid_size;
    double acc = deficit(0.0) + deficit(kPi / 2.0);
    for (int i = 1; i < grid_size; ++i)
        acc += deficit(h * i) * ((i % 2) ? 4.0 : 2.0);
    const double deficit_integral = acc * h / 3.0;
    return kPi / 2.0 - deficit_integral;
}

double rho_quadrature_selfcheck(int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("rho_quadrature_selfcheck: grid too small");
    if (grid_size % 2) ++grid_size;
    // same substitution: the integrand becomes the constant 1
    const double h = (kPi / 2.0) / grid_size;
    double acc = 1.0 + 1.0;
    for (int i = 1; i < grid_size; ++i) acc += (i % 2) ? 4.0 : 2.0;
    return acc * h / 3.0;
}

}  // namespace cubelab
