#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace shatter {

using BigInt = boost::multiprecision::cpp_int;

/// binom(n, k) with the conventions binom(n, 0) = 1 for every n (including
/// negative n), and 0 when k < 0 or 0 <= n < k or (n < 0 and k > 0).
inline BigInt binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0) return 0;
    if (k == 0) return 1;
    if (n < k) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

/// binom(n, <= d) = sum_{i=0}^{min(d,n)} binom(n, i); zero for d < 0.
inline BigInt binomial_sum(std::int64_t n, std::int64_t d)
{
    BigInt total = 0;
    for (std::int64_t i = 0; i <= d && i <= n; ++i)
        total += binomial(n, i);
    return total;
}

inline BigInt ipow(std::int64_t base, std::int64_t exp)
{
    BigInt b = base;
    return boost::multiprecision::pow(b, static_cast<unsigned>(exp));
}

inline std::string to_string(const BigInt& v) { return v.str(); }

} // namespace shatter
