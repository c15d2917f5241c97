#include "oracles.hpp"

#include <shatter/bounds.hpp>
#include <shatter/errors.hpp>
#include <shatter/natarajan.hpp>
#include <shatter/random_instances.hpp>
#include <shatter/shattering.hpp>

#include <doctest.h>

using namespace shatter;

TEST_CASE("natarajan_dim fixtures")
{
    for (unsigned r = 2; r <= 4; ++r)
        for (unsigned k = 1; k <= r; ++k)
            CHECK(natarajan_dim(TotalClass(r, 3, oracle::all_words(r, 3)), k) == 3);
    CHECK(natarajan_dim(TotalClass(2, 3, {{1, 2, 1}, {2, 1, 2}}), 1) == 3);
    CHECK(natarajan_dim(TotalClass(2, 3, {{1, 2, 1}, {2, 1, 2}}), 2) == 1);
    CHECK_THROWS_AS(natarajan_dim(TotalClass(2, 2, {{1, 1}}), 3), ArgumentError);
    CHECK_THROWS_AS(natarajan_dim(TotalClass(2, 2, {{1, 1}}), 0), ArgumentError);
    CHECK_THROWS_AS(natarajan_dim(TotalClass(2, 2), 2), DomainError);
}

TEST_CASE("natarajan_dim equals exhaustive product search")
{
    for (std::size_t t = 0; t < 120; ++t) {
        auto rng = make_rng(31, 1, t);
        const unsigned r = 2 + t % 3;
        const auto h = random_total_class(rng, 1 + t % 5, r, 1 + t % 40);
        for (unsigned k = 1; k <= r; ++k) {
            ProductWitness w;
            const auto dim = natarajan_dim(h, k, &w);
            CHECK(dim == oracle::natarajan(h.as_partial(), k));
            CHECK(mask_size(w.subset) == dim);
            if (dim) CHECK(oracle::k_shattered(h.as_partial(), mask_indices(w.subset), k));
        }
    }
}

TEST_CASE("k = r = 2 agrees with VC dimension")
{
    for (std::size_t t = 0; t < 100; ++t) {
        auto rng = make_rng(32, 1, t);
        const auto h = random_total_class(rng, 1 + t % 8, 2, 1 + t % 60);
        CHECK(natarajan_dim(h, 2) == *vc_dimension(h.as_partial()));
    }
}

TEST_CASE("branch tokens round-trip")
{
    for (auto s : {BranchSymbol::value(3), BranchSymbol::b(1), BranchSymbol::c(0b1011)})
        CHECK(parse_branch_token(to_token(s)) == s);
    CHECK(to_token(BranchSymbol::c(0b101)) == "c{1,3}");
    CHECK(to_token(BranchSymbol::b(2)) == "b2");
}

TEST_CASE("branch_construct hand trace")
{
    const auto trace = branch_construct(TotalClass(3, 1, {{1}, {2}, {3}}), 2);
    REQUIRE(trace.stages.size() == 2);
    const std::vector<StageRow> expect{{BranchSymbol::b(1)}, {BranchSymbol::c(0b011)}, {BranchSymbol::c(0b101)}};
    CHECK(trace.stages[1] == expect);
    CHECK(trace.max_c_count() == 1);
}

TEST_CASE("branch_construct invariants and proof partition")
{
    for (std::size_t t = 0; t < 120; ++t) {
        auto rng = make_rng(33, 1, t);
        const unsigned r = 2 + t % 3;
        const auto h = random_total_class(rng, 1 + t % 6, r, 1 + t % 50);
        const auto n = static_cast<std::int64_t>(h.arity());
        for (unsigned k = 2; k <= r; ++k) {
            const auto trace = branch_construct(h, k);
            REQUIRE(trace.stages.size() == h.arity() + 1);
            for (std::size_t i = 0; i < trace.stages.size(); ++i) {
                CHECK(trace.stages[i].size() == h.size());
                for (const auto& row : trace.stages[i])
                    for (std::size_t c = 0; c < row.size(); ++c)
                        CHECK((row[c].kind != BranchSymbol::Kind::Value) == (c < i));
            }
            const auto dim = natarajan_dim(h, k);
            CHECK(trace.max_c_count() <= dim);
            const auto d = std::max<std::size_t>(dim, 1);
            CHECK(h.size() <= natarajan_bound(n, r, k, static_cast<std::int64_t>(d)).rhs_value);
            const auto part = proof_partition(trace, d);
            std::size_t total = 0;
            for (std::size_t i = 0; i <= d; ++i) {
                CHECK(part.part_sizes[i] <= natarajan_term(n, r, k, static_cast<std::int64_t>(d), static_cast<std::int64_t>(i)));
                total += part.part_sizes[i];
            }
            CHECK(total == h.size());
        }
    }
}

TEST_CASE("tight_family")
{
    CHECK(tight_family(4, 3, 2, 1).size() == 9);
    CHECK(natarajan_dim(tight_family(4, 3, 2, 1), 2) == 1);
    CHECK(BigInt(9) <= natarajan_bound(4, 3, 2, 1).rhs_value);
    CHECK(tight_family(3, 4, 3, 0).size() == 8);
    CHECK(tight_family(3, 4, 3, 3).size() == 64);
    CHECK(tight_family_size(4, 3, 2, 1) == 9);
    CHECK_THROWS_AS(tight_family(3, 3, 1, 1), ArgumentError);
    CHECK_THROWS_AS(tight_family(3, 3, 2, 4), ArgumentError);
}
