#pragma once

#include <shatter/function_class.hpp>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace shatter {

using Vertex = std::size_t;
using VertexList = std::vector<Vertex>;

/// An r-uniform hypergraph on vertices 0..vertices-1; a simple graph when uniformity == 2.
/// Edges are stored sorted, each edge sorted, without duplicates.
struct Hypergraph {
    std::size_t vertices = 0;
    unsigned uniformity = 2;
    std::vector<VertexList> edges;
};

Hypergraph make_graph(std::size_t vertices, const std::vector<std::pair<Vertex, Vertex>>& edges);
Hypergraph make_hypergraph(std::size_t vertices, unsigned uniformity, std::vector<VertexList> edges);

/// One complete r-partite piece: `sides[t]` is the t-th vertex class. Its edges
/// are all transversals taking one vertex from every side.
struct PartitePart {
    std::vector<VertexList> sides;
};

/// A hypergraph together with a claimed partition of its edges into complete r-partite pieces.
struct PartitionedHypergraph {
    Hypergraph graph;
    std::vector<PartitePart> parts;
};

struct Biclique {
    VertexList left;
    VertexList right;
};

/// A graph together with a claimed partition of its edges into bicliques B(L_i, R_i).
struct BicliquePartitionedGraph {
    Hypergraph graph;
    std::vector<Biclique> parts;
};

PartitionedHypergraph as_partitioned(const BicliquePartitionedGraph& g);

/// Throws ValidationError naming the first overlap, foreign edge, doubly covered
/// edge or uncovered edge. Sides within a part must be pairwise disjoint.
void validate(const PartitionedHypergraph& g);
void validate(const BicliquePartitionedGraph& g);

/// The partial class {h_v}: h_v(i) is the side of part i containing v (1-based), undefined otherwise.
/// Twin vertices collapse to one member; `member_of_vertex` keeps the pre-collapse mapping.
struct ClassConstruction {
    PartialClass cls;
    std::vector<std::size_t> member_of_vertex;
    std::size_t vertex_count = 0;
};

ClassConstruction class_from_partition(const BicliquePartitionedGraph& g);
ClassConstruction class_from_hypergraph_partition(const PartitionedHypergraph& g);

/// True iff no edge is monochromatic (for graphs: adjacent vertices differ).
bool is_proper_coloring(const Hypergraph& g, std::span<const std::size_t> colors);

struct ChromaticBudget {
    std::size_t max_vertices = 16;
    std::size_t max_nodes = 50'000'000;
};

struct Coloring {
    std::size_t colors = 0;
    std::vector<std::size_t> color_of; // 0-based colours
};

/// Exact chi(G) by backtracking between a clique lower bound (graphs) and a greedy upper bound.
/// For r-graphs the colouring only has to avoid monochromatic edges.
Coloring chromatic_number(const Hypergraph& g, const ChromaticBudget& budget = {});

struct BicliqueBudget {
    std::size_t max_edges = 16;
    std::size_t max_nodes = 50'000'000;
};

struct BicliquePartition {
    std::size_t value = 0;
    std::vector<Biclique> parts;
};

/// Exact bp(G): always extends the lowest uncovered edge, trying every biclique
/// of uncovered edges that contains it. Graphs only.
BicliquePartition biclique_partition_number(const Hypergraph& g, const BicliqueBudget& budget = {});

Hypergraph complete_graph(std::size_t v);
Hypergraph cycle_graph(std::size_t v);
Hypergraph complete_bipartite_graph(std::size_t a, std::size_t b);
Hypergraph petersen_graph();

} // namespace shatter
