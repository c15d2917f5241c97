#include "oracles.hpp"

#include <shatter/bounds.hpp>
#include <shatter/errors.hpp>
#include <shatter/net.hpp>
#include <shatter/random_instances.hpp>
#include <shatter/shattering.hpp>

#include <doctest.h>

using namespace shatter;

TEST_CASE("minority_value")
{
    CHECK(minority_value(PartialClass(2, 1, {{1}, {1}, {2}}), 0) == 1);
    CHECK(minority_value(PartialClass(2, 2, {{1, 0}, {1, 1}}), 0) == 2);
    CHECK_THROWS_AS(minority_value(PartialClass(2, 2), 0), DomainError);
    CHECK_THROWS_AS(minority_value(PartialClass(2, 2, {{1, 1}}), 2), ArgumentError);
}

TEST_CASE("build_net small cases")
{
    const PartialClass undefined(3, 4, {{0, 0, 0, 0}});
    const auto a = build_net(undefined);
    CHECK(a.carrier.size() == 1);
    CHECK(a.traces.at(0).branch_set == 0);

    const PartialClass full(2, 1, {{1}, {2}});
    const auto b = build_net(full);
    CHECK(b.carrier == TotalClass(2, 1, {{1}, {2}}));
    CHECK(b.traces[0].function == std::vector<Symbol>{2});
    CHECK(b.traces[1].function == std::vector<Symbol>{1});
    CHECK_THROWS_AS(build_net(PartialClass(2, 3)), DomainError);
}

TEST_CASE("verify_net")
{
    CHECK(verify_net(PartialClass(2, 1), TotalClass(2, 1)));
    CHECK_FALSE(verify_net(PartialClass(2, 1, {{1}}), TotalClass(2, 1, {{1}})));
    CHECK(verify_net(PartialClass(2, 1, {{1}}), TotalClass(2, 1, {{2}})));
    CHECK_THROWS_AS(verify_net(PartialClass(2, 1, {{1}}), TotalClass(3, 1, {{2}})), ArgumentError);
}

TEST_CASE("build_net invariants on random classes")
{
    for (std::size_t t = 0; t < 200; ++t) {
        auto rng = make_rng(21, 1, t);
        const unsigned r = 2 + t % 3;
        const auto h = random_partial_class(rng, 1 + t % 8, r, 1 + t % 30, (t % 3) * 0.2);
        const auto net = build_net(h);
        CHECK(verify_net(h, net.carrier));
        const auto logs = floor_log_ratio(shattering_strength(h), r, r - 1);
        CHECK(net.carrier.size() <= binomial_sum(static_cast<std::int64_t>(h.arity()), logs));
        for (const auto& tr : net.traces) {
            CHECK(static_cast<std::int64_t>(mask_size(tr.branch_set)) <= logs);
            CHECK(replay_net_function(h, tr.branch_set) == tr.function);
            CHECK(oracle::covers(tr.function, h[tr.member]));
        }
        const auto parallel = build_net(h, 4);
        CHECK(parallel.carrier == net.carrier);
    }
}

TEST_CASE("covering_number_exact fixtures")
{
    CHECK(covering_number_exact(PartialClass(2, 1, {{1}, {2}})).value == 2);
    CHECK(covering_number_exact(PartialClass(2, 1, {{0}})).value == 1);
    CHECK(covering_number_exact(PartialClass(2, 1)).value == 0);
    CoverBudget tiny;
    tiny.max_candidates = 4;
    CHECK_THROWS_AS(covering_number_exact(PartialClass(2, 3, {{1, 1, 1}}), tiny), ResourceError);
}

TEST_CASE("covering_number_exact equals exhaustive search")
{
    for (std::size_t t = 0; t < 80; ++t) {
        auto rng = make_rng(22, 1, t);
        const unsigned r = 2 + t % 2;
        const std::size_t n = r == 2 ? 1 + t % 4 : 1 + t % 3;
        const auto h = random_partial_class(rng, n, r, 1 + t % 12, 0.2);
        const auto c = covering_number_exact(h);
        CHECK(c.value == oracle::cover(h));
        CHECK(c.witness.size() == c.value);
        CHECK(verify_net(h, c.witness));
        CHECK(c.value <= c.greedy_value);
        CHECK(c.value <= build_net(h).carrier.size());
    }
}
