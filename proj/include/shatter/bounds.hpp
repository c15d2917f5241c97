#pragma once

#include <shatter/bigint.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shatter {

enum class BoundFormula { Comb, HuangYe, Natarajan };

std::string to_string(BoundFormula f);

/// An evaluated closed-form bound. For the covering-number bound the threshold
/// m is rounded down exactly before the binomial sum is taken, so rhs_value is
/// an exact integer; the Huang-Ye bound is real-valued and rhs_value is its ceiling.
struct BoundReport {
    BoundFormula formula;
    std::int64_t n = 0, r = 0, d = 0, k = 0;
    double threshold = 0.0;                      // m as a real number (0 when the formula has none)
    std::optional<std::int64_t> threshold_floor; // floor(m), computed in exact arithmetic
    BigInt rhs_value;
    double rhs_log2 = 0.0;
    bool exact = true;
    std::vector<std::string> notes;
};

/// Largest integer t >= 0 with (num/den)^t <= value, for num > den >= 1 and value >= 1.
std::int64_t floor_log_ratio(const BigInt& value, std::int64_t num, std::int64_t den);

/// binom(n, <= floor(log_{r/(r-1)} binom(n, <= d))); requires r >= 2 and n >= d >= 1.
BoundReport comb_bound(std::int64_t n, std::int64_t r, std::int64_t d);

/// r^2 2^m (n/m)^{2m} with m = log_{(r+1)/r} binom(n, <= d) + 1. The side
/// condition on n involves unspecified constants and is reported, not enforced.
BoundReport hy_bound(std::int64_t n, std::int64_t r, std::int64_t d);

/// (k-1)^{n-d} sum_{i=0}^{d} binom(n-i-1, d-i) binom(r,k)^{d-i} r^i; requires r >= k >= 2 and n >= d >= 1.
BoundReport natarajan_bound(std::int64_t n, std::int64_t r, std::int64_t k, std::int64_t d);

/// The i-th summand of the Natarajan bound including the (k-1)^{n-d} factor.
/// No range checks beyond non-negativity; binom(-1, 0) = 1.
BigInt natarajan_term(std::int64_t n, std::int64_t r, std::int64_t k, std::int64_t d, std::int64_t i);

} // namespace shatter
