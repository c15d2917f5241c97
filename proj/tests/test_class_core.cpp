#include "oracles.hpp"

#include <shatter/bigint.hpp>
#include <shatter/errors.hpp>
#include <shatter/net.hpp>
#include <shatter/random_instances.hpp>
#include <shatter/shattering.hpp>

#include <doctest.h>

using namespace shatter;

namespace {

PartialClass full_class(unsigned r, std::size_t n) { return PartialClass(r, n, oracle::all_words(r, n)); }

const std::vector<std::size_t> idx(std::initializer_list<std::size_t> l) { return l; }

} // namespace

TEST_CASE("construction collapses duplicates and sorts")
{
    PartialClass h(2, 2, {{2, 1}, {1, 2}, {2, 1}});
    CHECK(h.size() == 2);
    CHECK(h.rows() == std::vector<std::vector<Symbol>>{{1, 2}, {2, 1}});
    CHECK(h.contains(std::vector<Symbol>{2, 1}));
    CHECK_FALSE(h.contains(std::vector<Symbol>{1, 1}));
}

TEST_CASE("construction rejects malformed members")
{
    CHECK_THROWS_AS(PartialClass(1, 2), ArgumentError);
    CHECK_THROWS_AS(PartialClass(2, 2, {{1}}), ArgumentError);
    CHECK_THROWS_AS(PartialClass(2, 1, {{3}}), ArgumentError);
    CHECK_THROWS_AS(TotalClass(2, 2, {{1, 0}}), ArgumentError);
}

TEST_CASE("restrict")
{
    CHECK(restrict(PartialClass(2, 2, {{1, 2}, {2, 1}}), idx({0})) == PartialClass(2, 1, {{1}, {2}}));
    CHECK(restrict(PartialClass(2, 2, {{1, 0}}), idx({1})) == PartialClass(2, 1, {{0}}));
    CHECK(restrict(full_class(2, 3), idx({0, 2})) == full_class(2, 2));
    CHECK(restrict(full_class(2, 3), idx({})).size() == 1);
    CHECK_THROWS_AS(restrict(full_class(2, 3), idx({3})), ArgumentError);
    CHECK_THROWS_AS(restrict(full_class(2, 3), idx({1, 1})), ArgumentError);
}

TEST_CASE("is_shattered")
{
    CHECK(is_shattered(full_class(2, 2), idx({0, 1})));
    CHECK_FALSE(is_shattered(PartialClass(2, 2, {{1, 0}}), idx({0})));
    CHECK_FALSE(is_shattered(PartialClass(2, 2), IndexMask{0}));
    CHECK(is_shattered(PartialClass(2, 2, {{0, 0}}), IndexMask{0}));
    // undefined entries never match a total pattern
    CHECK_FALSE(is_shattered(PartialClass(2, 1, {{1}, {0}}), idx({0})));
}

TEST_CASE("vc_dimension and shattering_strength")
{
    for (std::size_t n = 0; n <= 4; ++n)
        CHECK(vc_dimension(full_class(2, n)) == n);
    CHECK_FALSE(vc_dimension(PartialClass(3, 4)).has_value());
    CHECK(vc_dimension(PartialClass(2, 3, {{0, 0, 0}})) == 0);
    CHECK(shattering_strength(PartialClass(2, 3)) == 0);
    CHECK(shattering_strength(PartialClass(2, 3, {{1, 0, 2}})) == 1);
    CHECK(shattering_strength(full_class(2, 3)) == 8);
}

TEST_CASE("vc_dimension and shattered_sets agree with exhaustive search")
{
    for (std::size_t t = 0; t < 150; ++t) {
        auto rng = make_rng(11, 1, t);
        const auto h = random_partial_class(rng, 6, 3, 1 + t % 60, 0.25);
        CHECK(vc_dimension(h) == oracle::vc(h));
        CHECK(shattering_strength(h) == oracle::strength(h));
        CHECK(shattered_sets(h).size() == oracle::strength(h));
    }
}

TEST_CASE("fix_coordinate")
{
    const PartialClass h(3, 2, {{1, 2}, {2, 2}, {0, 1}});
    CHECK(fix_coordinate(h, 0, 1) == PartialClass(3, 2, {{1, 2}}));
    CHECK(fix_coordinate(h, 0, 3).empty());
    CHECK_THROWS_AS(fix_coordinate(h, 2, 1), ArgumentError);
    CHECK_THROWS_AS(fix_coordinate(h, 0, 4), ArgumentError);
}

TEST_CASE("strength inequalities and binomial bound on random classes")
{
    for (std::size_t t = 0; t < 200; ++t) {
        auto rng = make_rng(12, 1, t);
        const unsigned r = 2 + t % 3;
        const auto h = random_partial_class(rng, 1 + t % 7, r, 1 + t % 25, (t % 3) * 0.2);
        const auto s = shattering_strength(h);
        for (std::size_t i = 0; i < h.arity(); ++i) {
            std::uint64_t sum = 0;
            for (unsigned j = 1; j <= r; ++j)
                sum += shattering_strength(fix_coordinate(h, i, static_cast<Symbol>(j)));
            CHECK((r - 1) * s >= sum);
            CHECK(r * shattering_strength(fix_coordinate(h, i, minority_value(h, i))) <= (r - 1) * s);
        }
        CHECK(s <= binomial_sum(static_cast<std::int64_t>(h.arity()), static_cast<std::int64_t>(*vc_dimension(h))));
    }
}

TEST_CASE("shattered sets are downward closed")
{
    for (std::size_t t = 0; t < 50; ++t) {
        auto rng = make_rng(13, 1, t);
        const auto h = random_partial_class(rng, 8, 2, 40, 0.1);
        const auto sets = shattered_sets(h);
        for (auto s : sets)
            for (IndexMask e = s; e; e &= e - 1)
                CHECK(std::find(sets.begin(), sets.end(), s & ~(e & -e)) != sets.end());
    }
}

TEST_CASE("restriction composes")
{
    auto rng = make_rng(14, 1, 0);
    const auto h = random_partial_class(rng, 6, 3, 30, 0.2);
    const auto outer = idx({0, 2, 3, 5});
    CHECK(restrict(restrict(h, outer), idx({1, 3})) == restrict(h, idx({2, 5})));
}
