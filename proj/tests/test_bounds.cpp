#include <shatter/bounds.hpp>
#include <shatter/errors.hpp>

#include <doctest.h>

#include <cmath>

using namespace shatter;

TEST_CASE("binomial conventions")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(-1, 0) == 1);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial_sum(8, 2) == 37);
    CHECK(binomial_sum(4, 9) == 16);
}

TEST_CASE("floor_log_ratio is exact at integer boundaries")
{
    CHECK(floor_log_ratio(9, 3, 1) == 2);
    CHECK(floor_log_ratio(8, 3, 1) == 1);
    CHECK(floor_log_ratio(1, 2, 1) == 0);
    CHECK(floor_log_ratio(8, 3, 2) == 5);
    CHECK(floor_log_ratio(BigInt(81) * 81, 3, 2) == 21); // (3/2)^21 ~ 5032 < 6561 < (3/2)^22
    CHECK(floor_log_ratio(BigInt(1) << 100, 2, 1) == 100);
}

TEST_CASE("comb_bound")
{
    const auto b = comb_bound(8, 3, 2);
    CHECK(b.rhs_value == 256);
    CHECK(b.threshold_floor == 8);
    CHECK(b.threshold == doctest::Approx(std::log(37.0) / std::log(1.5)));
    CHECK(b.exact);

    for (std::int64_t n = 1; n <= 30; ++n) {
        const auto m = static_cast<std::int64_t>(std::floor(std::log2(static_cast<double>(n + 1)) + 1e-12));
        CHECK(comb_bound(n, 2, 1).rhs_value == binomial_sum(n, m));
        CHECK(comb_bound(n, 2, n).rhs_value == BigInt(1) << n);
    }
    CHECK_THROWS_AS(comb_bound(5, 1, 1), ArgumentError);
    CHECK_THROWS_AS(comb_bound(5, 2, 0), ArgumentError);
    CHECK_THROWS_AS(comb_bound(2, 2, 3), ArgumentError);
}

TEST_CASE("hy_bound")
{
    const auto b = hy_bound(8, 2, 1);
    const double m = std::log(9.0) / std::log(1.5) + 1;
    CHECK(b.threshold == doctest::Approx(m));
    CHECK(b.rhs_log2 == doctest::Approx(std::log2(4.0 * std::pow(2.0, m) * std::pow(8.0 / m, 2 * m))));
    CHECK_FALSE(b.exact);
    CHECK(b.rhs_value > 0);
    CHECK(comb_bound(20, 2, 2).rhs_value <= hy_bound(20, 2, 2).rhs_value);
}

TEST_CASE("natarajan_bound")
{
    for (std::int64_t n = 1; n <= 20; ++n)
        for (std::int64_t d = 1; d <= n; ++d)
            CHECK(natarajan_bound(n, 2, 2, d).rhs_value == binomial_sum(n, d));
    for (std::int64_t n = 1; n <= 4; ++n)
        for (std::int64_t r = 2; r <= 4; ++r)
            for (std::int64_t k = 2; k <= r; ++k)
                CHECK(natarajan_bound(n, r, k, n).rhs_value >= ipow(r, n));
    // r = k: binom(r, k) = 1
    BigInt steele = 0;
    for (std::int64_t i = 0; i <= 2; ++i)
        steele += binomial(5 - i - 1, 2 - i) * ipow(3, i);
    CHECK(natarajan_bound(5, 3, 3, 2).rhs_value == ipow(2, 3) * steele);
    CHECK_THROWS_AS(natarajan_bound(5, 3, 1, 2), ArgumentError);
    CHECK_THROWS_AS(natarajan_bound(5, 3, 4, 2), ArgumentError);
    CHECK_THROWS_AS(natarajan_bound(5, 3, 2, 0), ArgumentError);
}

TEST_CASE("Sauer-Shelah identity for all d <= n <= 30")
{
    for (std::int64_t n = 0; n <= 30; ++n)
        for (std::int64_t d = 0; d <= n; ++d) {
            BigInt lhs = 0;
            for (std::int64_t i = 0; i <= d; ++i)
                lhs += binomial(n - i - 1, d - i) * ipow(2, i);
            CHECK(lhs == binomial_sum(n, d));
        }
}
