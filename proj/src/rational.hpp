#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cubelab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial_exact(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long j = 1; j <= k; ++j) {
        r *= (n - k + j);
        r /= j;
    }
    return r;
}

inline BigInt pow2_exact(long long e) {
    if (e < 0) throw std::invalid_argument("pow2_exact: negative exponent");
    return BigInt(1) << static_cast<unsigned>(e);
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

inline std::string rational_str(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace cubelab
