#include "cube.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace cubelab {

namespace {

void check_dim(int n) {
    if (n < 1 || n > 30) throw std::invalid_argument("cube dimension must be in [1,30]");
}

void check_coord(const CubeFunction& f, int i) {
    if (i < 1 || i > f.n) throw std::invalid_argument("coordinate out of range");
}

// In-place Walsh-Hadamard butterfly; H^2 = 2^n * Id.
void hadamard(std::vector<double>& a) {
    const std::size_t m = a.size();
    for (std::size_t len = 1; len < m; len <<= 1) {
        for (std::size_t i = 0; i < m; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double u = a[j];
                const double v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
}

// Transform, scale coefficient of x^S by weight(|S|), transform back.
CubeFunction scale_by_degree(const CubeFunction& f, const std::function<double(int)>& weight) {
    std::vector<double> a = f.values;
    hadamard(a);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (std::size_t s = 0; s < a.size(); ++s)
        a[s] *= inv * weight(std::popcount(static_cast<std::uint32_t>(s)));
    hadamard(a);
    return CubeFunction(f.n, std::move(a));
}

}  // namespace

CubeFunction::CubeFunction(int dim, std::vector<double> vals) : n(dim), values(std::move(vals)) {
    check_dim(n);
    if (values.size() != (std::size_t{1} << n))
        throw std::invalid_argument("values length must be 2^n");
}

CubeFunction CubeFunction::constant(int n, double c) {
    check_dim(n);
    return CubeFunction(n, std::vector<double>(std::size_t{1} << n, c));
}

CubeFunction CubeFunction::monomial(int n, std::uint32_t subset) {
    check_dim(n);
    if (subset >> n) throw std::invalid_argument("subset mask exceeds dimension");
    std::vector<double> vals(std::size_t{1} << n);
    for (std::size_t z = 0; z < vals.size(); ++z)
        vals[z] = (std::popcount(static_cast<std::uint32_t>(z) & subset) & 1) ? -1.0 : 1.0;
    return CubeFunction(n, std::move(vals));
}

double CubeFunction::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

WalshSpectrum walsh_transform(const CubeFunction& f) {
    std::vector<double> a = f.values;
    hadamard(a);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (double& x : a) x *= inv;
    return WalshSpectrum{f.n, std::move(a)};
}

CubeFunction inverse_walsh(const WalshSpectrum& s) {
    std::vector<double> a = s.coeffs;
    hadamard(a);
    return CubeFunction(s.n, std::move(a));
}

double inner_product(const CubeFunction& f, const CubeFunction& g) {
    if (f.n != g.n) throw std::invalid_argument("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * g.values[i];
    return s / static_cast<double>(f.values.size());
}

CubeFunction partial(const CubeFunction& f, int i) {
    check_coord(f, i);
    // Pointwise stencil is exact and cheaper than two transforms here:
    // (d_i f)(z) = (f(z with x_i=+1) - f(z with x_i=-1))/2.
    const std::size_t bit = std::size_t{1} << (i - 1);
    std::vector<double> out(f.values.size());
    for (std::size_t z = 0; z < out.size(); ++z) {
        const std::size_t plus = z & ~bit;
        const std::size_t minus = z | bit;
        out[z] = 0.5 * (f.values[plus] - f.values[minus]);
    }
    return CubeFunction(f.n, std::move(out));
}

CubeFunction creation(const CubeFunction& f, int i) {
    check_coord(f, i);
    // x_i * (f|x_i=1 + f|x_i=-1)/2, evaluated pointwise.
    const std::size_t bit = std::size_t{1} << (i - 1);
    std::vector<double> out(f.values.size());
    for (std::size_t z = 0; z < out.size(); ++z) {
        const double avg = 0.5 * (f.values[z & ~bit] + f.values[z | bit]);
        out[z] = (z & bit) ? -avg : avg;
    }
    return CubeFunction(f.n, std::move(out));
}

CubeFunction laplacian(const CubeFunction& f) {
    return scale_by_degree(f, [](int d) { return -static_cast<double>(d); });
}

CubeFunction semigroup(const CubeFunction& f, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("semigroup time must be nonnegative");
    return scale_by_degree(f, [t](int d) { return std::exp(-t * d); });
}

CubeFunction inv_laplacian_p0(const CubeFunction& f) {
    return scale_by_degree(f, [](int d) { return d == 0 ? 0.0 : -1.0 / d; });
}

CubeFunction p0(const CubeFunction& f) {
    std::vector<double> out = f.values;
    const double m = f.mean();
    for (double& v : out) v -= m;
    return CubeFunction(f.n, std::move(out));
}

VectorField gradient(const CubeFunction& f) {
    VectorField v;
    v.n = f.n;
    v.components.reserve(static_cast<std::size_t>(f.n));
    for (int i = 1; i <= f.n; ++i) v.components.push_back(partial(f, i));
    return v;
}

VectorField t_operator(const CubeFunction& g) {
    // Spectrally: component i collects ghat[S]/|S| on the stripped monomial
    // x^{S\{i}} for every S containing i.
    WalshSpectrum spec = walsh_transform(g);
    VectorField out;
    out.n = g.n;
    out.components.reserve(static_cast<std::size_t>(g.n));
    for (int i = 1; i <= g.n; ++i) {
        const std::size_t bit = std::size_t{1} << (i - 1);
        std::vector<double> ci(spec.coeffs.size(), 0.0);
        for (std::size_t s = 0; s < ci.size(); ++s) {
            if (s & bit) continue;
            const std::size_t full = s | bit;
            ci[s] = spec.coeffs[full] /
                    static_cast<double>(std::popcount(static_cast<std::uint32_t>(full)));
        }
        out.components.push_back(inverse_walsh(WalshSpectrum{g.n, std::move(ci)}));
    }
    return out;
}

double sup_ell2_norm(const VectorField& v) {
    if (v.components.empty()) return 0.0;
    const std::size_t m = v.components.front().values.size();
    double best = 0.0;
    for (std::size_t z = 0; z < m; ++z) {
        double s = 0.0;
        for (const auto& c : v.components) s += c.values[z] * c.values[z];
        if (s > best) best = s;
    }
    return std::sqrt(best);
}

CubeFunction curl_residual(const VectorField& h) {
    if (h.components.empty()) throw std::invalid_argument("empty vector field");
    CubeFunction acc = CubeFunction::constant(h.n, 0.0);
    for (int k = 1; k <= h.n; ++k) {
        if (h.components[static_cast<std::size_t>(k - 1)].n != h.n)
            throw std::invalid_argument("component dimension mismatch");
        CubeFunction c = creation(h.components[static_cast<std::size_t>(k - 1)], k);
        for (std::size_t z = 0; z < acc.values.size(); ++z) acc.values[z] += c.values[z];
    }
    return acc;
}

double graph_inequality_ratio(const CubeFunction& F) {
    const double num = sup_ell2_norm(gradient(F));
    CubeFunction lap = laplacian(F);
    double lo = lap.values[0];
    double hi = lap.values[0];
    for (double v : lap.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // inf_a ||lap + a||_inf is attained at the midrange.
    const double denom = 0.5 * (hi - lo);
    if (denom == 0.0) throw std::invalid_argument("graph_inequality_ratio: constant function");
    return num / denom;
}

}  // namespace cubelab
