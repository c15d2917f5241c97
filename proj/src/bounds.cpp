#include <shatter/bounds.hpp>
#include <shatter/errors.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace shatter {

std::string to_string(BoundFormula f)
{
    switch (f) {
    case BoundFormula::Comb: return "comb";
    case BoundFormula::HuangYe: return "huang-ye";
    case BoundFormula::Natarajan: return "natarajan";
    }
    return "unknown";
}

namespace {

void check_comb_args(std::int64_t n, std::int64_t r, std::int64_t d)
{
    if (r < 2) throw ArgumentError("bound requires r >= 2");
    if (d < 1) throw ArgumentError("bound requires d >= 1");
    if (n < d) throw ArgumentError("bound requires n >= d");
}

double big_log2(const BigInt& v)
{
    using Float = boost::multiprecision::cpp_bin_float_50;
    return static_cast<double>(boost::multiprecision::log2(Float(v)));
}

} // namespace

std::int64_t floor_log_ratio(const BigInt& value, std::int64_t num, std::int64_t den)
{
    if (den < 1 || num <= den) throw ArgumentError("floor_log_ratio needs num > den >= 1");
    if (value < 1) throw ArgumentError("floor_log_ratio needs value >= 1");
    std::int64_t t = 0;
    BigInt lhs = num, rhs = value * den;
    while (lhs <= rhs) {
        ++t;
        lhs *= num;
        rhs *= den;
    }
    return t;
}

BoundReport comb_bound(std::int64_t n, std::int64_t r, std::int64_t d)
{
    check_comb_args(n, r, d);
    BoundReport report;
    report.formula = BoundFormula::Comb;
    report.n = n;
    report.r = r;
    report.d = d;
    const BigInt inner = binomial_sum(n, d);
    report.threshold = big_log2(inner) / std::log2(static_cast<double>(r) / static_cast<double>(r - 1));
    const auto m = floor_log_ratio(inner, r, r - 1);
    report.threshold_floor = m;
    report.rhs_value = binomial_sum(n, m);
    report.rhs_log2 = big_log2(report.rhs_value);
    if (m >= n) report.notes.push_back("threshold >= n: binomial sum saturates at 2^n");
    return report;
}

BoundReport hy_bound(std::int64_t n, std::int64_t r, std::int64_t d)
{
    check_comb_args(n, r, d);
    using Float = boost::multiprecision::cpp_bin_float_100;
    BoundReport report;
    report.formula = BoundFormula::HuangYe;
    report.n = n;
    report.r = r;
    report.d = d;
    report.exact = false;

    const Float inner(binomial_sum(n, d));
    const Float m = boost::multiprecision::log(inner) / boost::multiprecision::log(Float(r + 1) / Float(r)) + 1;
    const Float rhs = Float(r * r) * boost::multiprecision::pow(Float(2), m)
                      * boost::multiprecision::pow(Float(n) / m, 2 * m);
    report.threshold = static_cast<double>(m);
    report.rhs_value = static_cast<BigInt>(boost::multiprecision::ceil(rhs));
    report.rhs_log2 = static_cast<double>(boost::multiprecision::log2(rhs));
    report.notes.push_back("side condition n >= max{d*C_r, D_r} not checked: constants unspecified");
    report.notes.push_back("rhs_value is the ceiling of a real-valued expression");
    return report;
}

BigInt natarajan_term(std::int64_t n, std::int64_t r, std::int64_t k, std::int64_t d, std::int64_t i)
{
    if (n < 0 || d < 0 || i < 0 || i > d || d > n) return 0;
    return ipow(k - 1, n - d) * binomial(n - i - 1, d - i) * boost::multiprecision::pow(binomial(r, k), static_cast<unsigned>(d - i))
           * ipow(r, i);
}

BoundReport natarajan_bound(std::int64_t n, std::int64_t r, std::int64_t k, std::int64_t d)
{
    if (k < 2) throw ArgumentError("Natarajan bound requires k >= 2");
    if (r < k) throw ArgumentError("Natarajan bound requires r >= k");
    if (d < 1) throw ArgumentError("Natarajan bound requires d >= 1");
    if (n < d) throw ArgumentError("Natarajan bound requires n >= d");
    BoundReport report;
    report.formula = BoundFormula::Natarajan;
    report.n = n;
    report.r = r;
    report.k = k;
    report.d = d;
    for (std::int64_t i = 0; i <= d; ++i)
        report.rhs_value += natarajan_term(n, r, k, d, i);
    report.rhs_log2 = big_log2(report.rhs_value);
    return report;
}

} // namespace shatter
