#include "oracles.hpp"

#include <shatter/errors.hpp>
#include <shatter/graph.hpp>
#include <shatter/net.hpp>
#include <shatter/random_instances.hpp>
#include <shatter/shattering.hpp>

#include <doctest.h>

using namespace shatter;

namespace {

struct LemmaOutcome {
    std::size_t vc;
    std::size_t cover;
    std::size_t chi;
};

LemmaOutcome lemma(const Hypergraph& g)
{
    const auto bp = biclique_partition_number(g);
    const auto built = class_from_partition({g, bp.parts});
    return {vc_dimension(built.cls).value_or(0), covering_number_exact(built.cls).value, chromatic_number(g).colors};
}

} // namespace

TEST_CASE("make_graph validates edges")
{
    CHECK_THROWS_AS(make_graph(2, {{0, 2}}), ValidationError);
    CHECK_THROWS_AS(make_graph(2, {{1, 1}}), ValidationError);
    CHECK(make_graph(3, {{1, 0}, {0, 1}}).edges.size() == 1);
}

TEST_CASE("chromatic_number fixtures")
{
    CHECK(chromatic_number(complete_graph(3)).colors == 3);
    CHECK(chromatic_number(cycle_graph(4)).colors == 2);
    CHECK(chromatic_number(cycle_graph(5)).colors == 3);
    const auto p = chromatic_number(petersen_graph());
    CHECK(p.colors == 3);
    CHECK(is_proper_coloring(petersen_graph(), p.color_of));
    CHECK(chromatic_number(make_graph(3, {})).colors == 1);
    CHECK_THROWS_AS(chromatic_number(complete_graph(17)), ResourceError);
}

TEST_CASE("weak colouring of a 3-graph")
{
    // all triples of 4 vertices: two colours suffice
    const auto g = make_hypergraph(4, 3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    const auto c = chromatic_number(g);
    CHECK(c.colors == 2);
    CHECK(is_proper_coloring(g, c.color_of));
}

TEST_CASE("biclique_partition_number fixtures")
{
    CHECK(biclique_partition_number(complete_bipartite_graph(2, 2)).value == 1);
    CHECK(biclique_partition_number(complete_graph(3)).value == 2);
    CHECK(biclique_partition_number(complete_graph(4)).value == 3);
    const auto empty = biclique_partition_number(make_graph(4, {}));
    CHECK(empty.value == 0);
    CHECK(empty.parts.empty());
    CHECK_THROWS_AS(biclique_partition_number(complete_graph(7)), ResourceError);
}

TEST_CASE("exact chi and bp agree with brute force on random graphs")
{
    for (std::size_t t = 0; t < 60; ++t) {
        auto rng = make_rng(41, 1, t);
        const auto g = random_graph(rng, 2 + t % 5, 0.5);
        CHECK(chromatic_number(g).colors == oracle::chi(g));
        if (g.edges.size() <= 7) {
            const auto bp = biclique_partition_number(g);
            CHECK(bp.value == oracle::bp(g));
            CHECK_NOTHROW(validate(BicliquePartitionedGraph{g, bp.parts}));
        }
    }
}

TEST_CASE("graph to class lemma fixtures")
{
    const auto k3 = lemma(complete_graph(3));
    CHECK(k3.vc <= 1);
    CHECK(k3.cover == 3);
    CHECK(k3.chi == 3);
    const auto k22 = lemma(complete_bipartite_graph(2, 2));
    CHECK(k22.vc <= 1);
    CHECK(k22.cover == 2);
    CHECK(k22.chi == 2);
}

TEST_CASE("class_from_partition records vertex members and twins")
{
    // K_{2,2} as one biclique: vertices 0,1 | 2,3 are twins
    const auto g = complete_bipartite_graph(2, 2);
    const auto bp = biclique_partition_number(g);
    const auto built = class_from_partition({g, bp.parts});
    CHECK(built.vertex_count == 4);
    CHECK(built.cls.size() == 2);
    CHECK(built.member_of_vertex[0] == built.member_of_vertex[1]);
    CHECK(built.member_of_vertex[0] != built.member_of_vertex[2]);
}

TEST_CASE("validation catches broken partitions")
{
    const auto g = complete_graph(3);
    BicliquePartitionedGraph good{g, {{{0}, {1, 2}}, {{1}, {2}}}};
    CHECK_NOTHROW(validate(good));
    auto missing = good;
    missing.parts.pop_back();
    CHECK_THROWS_AS(validate(missing), ValidationError);
    auto doubled = good;
    doubled.parts.push_back({{1}, {2}});
    CHECK_THROWS_AS(validate(doubled), ValidationError);
    auto nonedge = BicliquePartitionedGraph{complete_bipartite_graph(1, 2), {{{0, 1}, {2}}}};
    CHECK_THROWS_AS(validate(nonedge), ValidationError);
    auto overlap = good;
    overlap.parts[0].right.push_back(0);
    CHECK_THROWS_AS(validate(overlap), ValidationError);
}

TEST_CASE("hypergraph partition to class")
{
    // one 3-partite part covering both edges
    const auto g = make_hypergraph(4, 3, {{0, 1, 2}, {0, 1, 3}});
    PartitionedHypergraph ph{g, {PartitePart{{{0}, {1}, {2, 3}}}}};
    const auto built = class_from_hypergraph_partition(ph);
    CHECK(built.cls.alphabet() == 3);
    CHECK(built.cls.size() == 3);
    CHECK(vc_dimension(built.cls).value_or(0) <= 1);
    CHECK(covering_number_exact(built.cls).value >= chromatic_number(g).colors);
    CHECK_THROWS_AS(class_from_hypergraph_partition({g, {}}), ValidationError);
}

TEST_CASE("lemma on random small graphs")
{
    for (std::size_t t = 0; t < 40; ++t) {
        auto rng = make_rng(42, 1, t);
        const auto g = random_graph(rng, 3 + t % 4, 0.5);
        if (g.edges.empty()) continue;
        const auto bp = biclique_partition_number(g);
        const auto built = class_from_partition({g, bp.parts});
        CHECK(vc_dimension(built.cls).value_or(0) <= 1);
        const auto cover = covering_number_exact(built.cls);
        CHECK(cover.value >= chromatic_number(g).colors);
        std::vector<std::size_t> colors;
        for (std::size_t v = 0; v < g.vertices; ++v)
            colors.push_back(covering_function(built.cls[built.member_of_vertex[v]], cover.witness));
        CHECK(is_proper_coloring(g, colors));
    }
}
