#include "oracles.hpp"

#include <shatter/errors.hpp>
#include <shatter/natarajan.hpp>
#include <shatter/random_instances.hpp>
#include <shatter/words.hpp>

#include <doctest.h>

#include <set>

using namespace shatter;

namespace {

const std::vector<std::size_t> S(std::initializer_list<std::size_t> l) { return l; }

std::size_t ipow_size(std::size_t b, std::size_t e)
{
    std::size_t v = 1;
    while (e--)
        v *= b;
    return v;
}

} // namespace

TEST_CASE("word description validation")
{
    CHECK_THROWS_AS(WordSpec::periodic(2, {}).validate(), ValidationError);
    CHECK_THROWS_AS(WordSpec::periodic(2, {3}).validate(), ValidationError);
    CHECK_THROWS_AS(WordSpec::explicit_prefix(2, {}).validate(), ValidationError);
    CHECK_THROWS_AS(WordSpec::substitution(2, {{1, {}}, {2, {1}}}, {1}, 3).validate(), ValidationError);
    CHECK_NOTHROW(WordSpec::substitution(2, {{1, {1, 2}}, {2, {1}}}, {1}, 5).validate());
}

TEST_CASE("generate")
{
    CHECK(generate(WordSpec::periodic(2, {1, 2}), 5) == std::vector<Symbol>{1, 2, 1, 2, 1});
    CHECK(generate(WordSpec::eventually_periodic(3, {3}, {1, 2}), 4) == std::vector<Symbol>{3, 1, 2, 1});
    // Fibonacci substitution 1->12, 2->1
    const auto fib = WordSpec::substitution(2, {{1, {1, 2}}, {2, {1}}}, {1}, 5);
    CHECK(generate(fib, 8) == std::vector<Symbol>{1, 2, 1, 1, 2, 1, 2, 1});
}

TEST_CASE("pattern_count fixtures")
{
    const auto per12 = WordSpec::periodic(2, {1, 2});
    const auto t = pattern_count(per12, S({0, 1}));
    CHECK(t.count() == 2);
    CHECK(t.patterns == std::vector<std::vector<Symbol>>{{1, 2}, {2, 1}});
    CHECK(t.exact);
    CHECK(pattern_count(WordSpec::periodic(3, {1}), S({0, 4, 9})).count() == 1);
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<std::size_t> window(n);
        for (std::size_t i = 0; i < n; ++i)
            window[i] = i;
        CHECK(pattern_count(full_shift_certificate(2, n), window).count() == ipow_size(2, n));
    }
    CHECK_THROWS_AS(pattern_count(per12, S({})), ArgumentError);
    CHECK_THROWS_AS(pattern_count(per12, S({2, 1})), ArgumentError);
}

TEST_CASE("explicit prefix too short is flagged")
{
    const auto w = WordSpec::explicit_prefix(2, {1, 2, 2});
    const auto t = pattern_count(w, S({0, 5}));
    CHECK(t.truncated);
    CHECK_FALSE(t.exact);
}

TEST_CASE("de Bruijn sequences contain every window once")
{
    for (unsigned r = 2; r <= 3; ++r)
        for (std::size_t order = 1; order <= 4; ++order) {
            const auto seq = de_bruijn(r, order);
            CHECK(seq.size() == ipow_size(r, order));
            std::set<std::vector<Symbol>> windows;
            for (std::size_t m = 0; m < seq.size(); ++m) {
                std::vector<Symbol> w;
                for (std::size_t i = 0; i < order; ++i)
                    w.push_back(seq[(m + i) % seq.size()]);
                windows.insert(w);
            }
            CHECK(windows.size() == seq.size());
        }
}

TEST_CASE("maximal pattern complexity fixtures")
{
    const auto per12 = WordSpec::periodic(2, {1, 2});
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto pc = max_pattern_complexity(per12, n);
        CHECK(pc.value == 2);
        CHECK(pc.exact);
        CHECK(pc.witness.size() == n);
        CHECK(pattern_count(per12, pc.witness).count() == 2);
    }
    const auto per112 = WordSpec::periodic(2, {1, 1, 2});
    CHECK(max_pattern_complexity(per112, 1).value == 2);
    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(max_pattern_complexity(per112, n).value == oracle::pstar(per112, n, 6, 3));
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto pc = max_pattern_complexity(full_shift_certificate(2, 5), n);
        CHECK(pc.value == ipow_size(2, n));
        CHECK(pc.exact);
    }
    CHECK_THROWS_AS(max_pattern_complexity(per12, 0), ArgumentError);
}

TEST_CASE("periodic p* agrees with brute force")
{
    for (std::size_t t = 0; t < 40; ++t) {
        auto rng = make_rng(51, 1, t);
        const auto w = random_periodic_word(rng, 2 + t % 2, 5);
        const auto p = w.cycle.size();
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto pc = max_pattern_complexity(w, n);
            CHECK(pc.exact);
            CHECK(pc.value == oracle::pstar(w, n, std::max(2 * p, n - 1), p));
            CHECK(pc.value <= p);
        }
    }
}

TEST_CASE("eventually periodic p* agrees with brute force")
{
    const auto w = WordSpec::eventually_periodic(2, {2, 2, 1}, {1, 2, 1});
    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(max_pattern_complexity(w, n).value == oracle::pstar(w, n, 10, 6));
}

TEST_CASE("substitution words give flagged lower bounds")
{
    const auto tm = WordSpec::substitution(2, {{1, {1, 2}}, {2, {2, 1}}}, {1}, 10);
    const auto pc = max_pattern_complexity(tm, 3, PatternSearchOptions{8, 1'000'000, 1});
    CHECK(pc.value <= 8);
    CHECK(pc.exact == (pc.value == 8)); // only r^n is certified for a non-periodic word
    const auto pc4 = max_pattern_complexity(tm, 5, PatternSearchOptions{6, 1'000'000, 1});
    CHECK(pc4.value <= 32);
    if (pc4.value < 32) CHECK_FALSE(pc4.exact);
}

TEST_CASE("budget hit is flagged")
{
    const auto tm = WordSpec::substitution(2, {{1, {1, 2}}, {2, {2, 1}}}, {1}, 10);
    const auto pc = max_pattern_complexity(tm, 4, PatternSearchOptions{16, 3, 1});
    CHECK(pc.budget_hit);
    CHECK_FALSE(pc.exact);
}

TEST_CASE("classify_profile")
{
    const auto full = classify_profile(complexity_profile(full_shift_certificate(2, 6), 6));
    CHECK(full.ell == 2);
    CHECK(full.alternative == GrowthAlternative::Full);
    const auto per = classify_profile(complexity_profile(WordSpec::periodic(2, {1, 2}), 6));
    CHECK(per.ell == 1);
    CHECK(per.alternative == GrowthAlternative::Bounded);
    const auto constant = complexity_profile(WordSpec::periodic(2, {1}), 5);
    CHECK(constant.values == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(classify_profile(constant).ell == 1);
    CHECK_THROWS_AS(classify_profile(ComplexityProfile{2, {1, 2, 1, 2}, true}), InvariantViolation);
    CHECK_THROWS_AS(classify_profile(ComplexityProfile{2, {1, 2, 4}, true}), ArgumentError);
}

TEST_CASE("profiles are monotone and bounded by r")
{
    for (std::size_t t = 0; t < 20; ++t) {
        auto rng = make_rng(52, 1, t);
        const auto w = random_periodic_word(rng, 3, 6);
        const auto prof = complexity_profile(w, 5);
        for (std::size_t i = 1; i < prof.values.size(); ++i) {
            CHECK(prof.values[i - 1] <= prof.values[i]);
            CHECK(prof.values[i] <= 3 * prof.values[i - 1]);
        }
    }
}

TEST_CASE("class_from_windows")
{
    const auto per12 = WordSpec::periodic(2, {1, 2});
    const auto h = class_from_windows(per12, S({0, 1, 2}));
    CHECK(h == TotalClass(2, 3, {{1, 2, 1}, {2, 1, 2}}));
    CHECK(natarajan_dim(h, 1) == 3);
    // both coordinates take both values, so each singleton is 2-shattered
    CHECK(natarajan_dim(h, 2) == 1);
    CHECK(natarajan_dim(h, 2) == oracle::natarajan(h.as_partial(), 2));

    const auto full = class_from_windows(full_shift_certificate(3, 3), S({0, 1, 2}));
    CHECK(full.size() == 27);
    CHECK(natarajan_dim(full, 3) == 3);

    const auto per112 = WordSpec::periodic(2, {1, 1, 2});
    const auto h2 = class_from_windows(per112, S({0, 1}));
    CHECK(h2.size() == pattern_count(per112, S({0, 1})).count());
    CHECK(natarajan_dim(h2, 2) == oracle::natarajan(h2.as_partial(), 2));
}
