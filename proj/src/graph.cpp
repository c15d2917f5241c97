#include <shatter/errors.hpp>
#include <shatter/graph.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>

namespace shatter {

namespace {

std::string show(const VertexList& vs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i)
        out += (i ? "," : "") + std::to_string(vs[i]);
    return out + "}";
}

} // namespace

Hypergraph make_hypergraph(std::size_t vertices, unsigned uniformity, std::vector<VertexList> edges)
{
    if (uniformity < 2) throw ArgumentError("hypergraph uniformity must be at least 2");
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (e.size() != uniformity)
            throw ValidationError("edge " + show(e) + " does not have " + std::to_string(uniformity) + " vertices");
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw ValidationError("edge " + show(e) + " repeats a vertex");
        if (e.back() >= vertices)
            throw ValidationError("edge " + show(e) + " uses a vertex outside 0.." + std::to_string(vertices) + "-1");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Hypergraph{vertices, uniformity, std::move(edges)};
}

Hypergraph make_graph(std::size_t vertices, const std::vector<std::pair<Vertex, Vertex>>& edges)
{
    std::vector<VertexList> list;
    list.reserve(edges.size());
    for (auto [u, w] : edges)
        list.push_back({u, w});
    return make_hypergraph(vertices, 2, std::move(list));
}

PartitionedHypergraph as_partitioned(const BicliquePartitionedGraph& g)
{
    PartitionedHypergraph out{g.graph, {}};
    for (const auto& b : g.parts)
        out.parts.push_back(PartitePart{{b.left, b.right}});
    return out;
}

void validate(const PartitionedHypergraph& g)
{
    const auto& edges = g.graph.edges;
    std::vector<std::size_t> owner(edges.size(), 0); // 1-based part index, 0 = uncovered

    for (std::size_t p = 0; p < g.parts.size(); ++p) {
        const auto& part = g.parts[p];
        const std::string where = "part " + std::to_string(p + 1);
        if (part.sides.size() != g.graph.uniformity)
            throw ValidationError(where + " has " + std::to_string(part.sides.size()) + " sides, expected "
                                  + std::to_string(g.graph.uniformity));
        std::map<Vertex, std::size_t> side_of;
        for (std::size_t t = 0; t < part.sides.size(); ++t)
            for (auto v : part.sides[t]) {
                if (v >= g.graph.vertices)
                    throw ValidationError(where + " uses vertex " + std::to_string(v) + " outside the graph");
                auto [it, fresh] = side_of.emplace(v, t);
                if (!fresh)
                    throw ValidationError(where + ": vertex " + std::to_string(v) + " appears in sides "
                                          + std::to_string(it->second + 1) + " and " + std::to_string(t + 1));
            }

        if (std::any_of(part.sides.begin(), part.sides.end(), [](const VertexList& s) { return s.empty(); }))
            continue; // no transversals
        std::vector<std::size_t> pos(part.sides.size(), 0);
        while (true) {
            VertexList e;
            for (std::size_t t = 0; t < pos.size(); ++t)
                e.push_back(part.sides[t][pos[t]]);
            std::sort(e.begin(), e.end());
            auto it = std::lower_bound(edges.begin(), edges.end(), e);
            if (it == edges.end() || *it != e)
                throw ValidationError(where + " contains " + show(e) + ", which is not an edge");
            auto& o = owner[static_cast<std::size_t>(it - edges.begin())];
            if (o != 0)
                throw ValidationError("edge " + show(e) + " is covered by parts " + std::to_string(o) + " and "
                                      + std::to_string(p + 1));
            o = p + 1;
            std::size_t t = pos.size();
            while (t > 0 && ++pos[t - 1] == part.sides[t - 1].size())
                pos[--t] = 0;
            if (t == 0) break;
        }
    }
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (owner[e] == 0) throw ValidationError("edge " + show(edges[e]) + " is not covered by any part");
}

void validate(const BicliquePartitionedGraph& g)
{
    if (g.graph.uniformity != 2) throw ValidationError("biclique partitions need a graph (uniformity 2)");
    validate(as_partitioned(g));
}

ClassConstruction class_from_hypergraph_partition(const PartitionedHypergraph& g)
{
    validate(g);
    const std::size_t n = g.parts.size();
    if (n == 0) throw ValidationError("the class construction needs at least one part");

    std::vector<std::vector<Symbol>> rows(g.graph.vertices, std::vector<Symbol>(n, kUndefined));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t t = 0; t < g.parts[p].sides.size(); ++t)
            for (auto v : g.parts[p].sides[t])
                rows[v][p] = static_cast<Symbol>(t + 1);

    ClassConstruction out{PartialClass(g.graph.uniformity, n, rows), {}, g.graph.vertices};
    for (const auto& row : rows) {
        std::size_t lo = 0, hi = out.cls.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto m = out.cls[mid];
            if (std::lexicographical_compare(m.begin(), m.end(), row.begin(), row.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        out.member_of_vertex.push_back(lo);
    }
    return out;
}

ClassConstruction class_from_partition(const BicliquePartitionedGraph& g)
{
    if (g.graph.uniformity != 2) throw ValidationError("biclique partitions need a graph (uniformity 2)");
    return class_from_hypergraph_partition(as_partitioned(g));
}

bool is_proper_coloring(const Hypergraph& g, std::span<const std::size_t> colors)
{
    if (colors.size() != g.vertices) return false;
    for (const auto& e : g.edges) {
        bool mono = true;
        for (auto v : e)
            mono = mono && colors[v] == colors[e.front()];
        if (mono) return false;
    }
    return true;
}

namespace {

std::size_t max_clique(const Hypergraph& g)
{
    const std::size_t n = g.vertices;
    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& e : g.edges) {
        adj[e[0]] |= std::uint64_t{1} << e[1];
        adj[e[1]] |= std::uint64_t{1} << e[0];
    }
    std::size_t best = 0;
    auto grow = [&](auto&& self, std::uint64_t chosen, std::uint64_t candidates) -> void {
        const auto size = static_cast<std::size_t>(std::popcount(chosen));
        best = std::max(best, size);
        if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
        while (candidates) {
            const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
            candidates &= candidates - 1;
            self(self, chosen | std::uint64_t{1} << v, candidates & adj[v]);
            if (size + 1 + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
        }
    };
    grow(grow, 0, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    return best;
}

class ColoringSearch {
public:
    ColoringSearch(const Hypergraph& g, std::size_t max_nodes) : g_(g), max_nodes_(max_nodes)
    {
        std::vector<std::size_t> degree(g.vertices, 0);
        for (const auto& e : g.edges)
            for (auto v : e)
                ++degree[v];
        order_.resize(g.vertices);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return degree[a] > degree[b]; });
        position_.resize(g.vertices);
        for (std::size_t p = 0; p < order_.size(); ++p)
            position_[order_[p]] = p;
        // each edge is checked when its last vertex in the search order is coloured
        closing_.resize(g.vertices);
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            auto last = *std::max_element(g.edges[e].begin(), g.edges[e].end(),
                                          [&](auto a, auto b) { return position_[a] < position_[b]; });
            closing_[last].push_back(e);
        }
    }

    std::vector<std::size_t> greedy() const
    {
        std::vector<std::size_t> colors(g_.vertices, 0);
        for (auto v : order_) {
            std::size_t c = 0;
            while (conflicts(v, c, colors))
                ++c;
            colors[v] = c;
        }
        return colors;
    }

    bool colorable(std::size_t k, std::vector<std::size_t>& out)
    {
        std::vector<std::size_t> colors(g_.vertices, 0);
        if (!assign(0, 0, k, colors)) return false;
        out = std::move(colors);
        return true;
    }

private:
    bool conflicts(Vertex v, std::size_t c, const std::vector<std::size_t>& colors) const
    {
        for (auto e : closing_[v]) {
            bool mono = true;
            for (auto u : g_.edges[e])
                if (u != v && colors[u] != c) {
                    mono = false;
                    break;
                }
            if (mono) return true;
        }
        return false;
    }

    bool assign(std::size_t pos, std::size_t used, std::size_t k, std::vector<std::size_t>& colors)
    {
        if (++nodes_ > max_nodes_)
            throw ResourceError("chromatic number search exceeded its node budget", "max_nodes", max_nodes_);
        if (pos == order_.size()) return true;
        const auto v = order_[pos];
        for (std::size_t c = 0; c < k && c <= used; ++c) {
            if (conflicts(v, c, colors)) continue;
            colors[v] = c;
            if (assign(pos + 1, std::max(used, c + 1), k, colors)) return true;
        }
        return false;
    }

    const Hypergraph& g_;
    std::size_t max_nodes_;
    std::size_t nodes_ = 0;
    std::vector<Vertex> order_;
    std::vector<std::size_t> position_;
    std::vector<std::vector<std::size_t>> closing_;
};

} // namespace

Coloring chromatic_number(const Hypergraph& g, const ChromaticBudget& budget)
{
    if (g.vertices > budget.max_vertices || g.vertices > 64)
        throw ResourceError(std::to_string(g.vertices) + " vertices exceed the exact colouring budget", "max_vertices",
                            budget.max_vertices);
    if (g.vertices == 0) return {};
    if (g.edges.empty()) return Coloring{1, std::vector<std::size_t>(g.vertices, 0)};

    ColoringSearch search(g, budget.max_nodes);
    auto best = search.greedy();
    const std::size_t upper = *std::max_element(best.begin(), best.end()) + 1;
    const std::size_t lower = g.uniformity == 2 ? max_clique(g) : 2;
    for (std::size_t k = lower; k < upper; ++k) {
        std::vector<std::size_t> colors;
        if (search.colorable(k, colors)) return Coloring{k, std::move(colors)};
    }
    return Coloring{upper, std::move(best)};
}

namespace {

class BicliqueSearch {
public:
    BicliqueSearch(const Hypergraph& g, std::size_t max_nodes) : g_(g), max_nodes_(max_nodes), id_(g.vertices)
    {
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            id_[g.edges[e][0]].emplace(g.edges[e][1], e);
            id_[g.edges[e][1]].emplace(g.edges[e][0], e);
        }
        all_ = g.edges.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.edges.size()) - 1;
    }

    BicliquePartition solve()
    {
        best_size_ = g_.edges.size() + 1;
        std::vector<Biclique> stack;
        search(0, stack);
        return BicliquePartition{best_.size(), best_};
    }

private:
    struct Candidate {
        std::uint64_t edges;
        Biclique parts;
    };

    std::uint64_t free_neighbours(Vertex x, std::uint64_t covered) const
    {
        std::uint64_t out = 0;
        for (auto [y, e] : id_[x])
            if (!(covered >> e & 1)) out |= std::uint64_t{1} << y;
        return out;
    }

    std::vector<Candidate> bicliques_through(std::size_t edge, std::uint64_t covered) const
    {
        const Vertex u = g_.edges[edge][0], w = g_.edges[edge][1];
        std::vector<Candidate> out;
        const std::uint64_t left_pool = free_neighbours(w, covered) & ~(std::uint64_t{1} << u);
        // every subset of left_pool joins u on the left
        for (std::uint64_t extra = left_pool;; extra = (extra - 1) & left_pool) {
            const std::uint64_t left = extra | std::uint64_t{1} << u;
            std::uint64_t common = ~std::uint64_t{0};
            for (auto l = left; l; l &= l - 1)
                common &= free_neighbours(static_cast<Vertex>(std::countr_zero(l)), covered);
            const std::uint64_t right_pool = common & ~(std::uint64_t{1} << w);
            for (std::uint64_t rextra = right_pool;; rextra = (rextra - 1) & right_pool) {
                const std::uint64_t right = rextra | std::uint64_t{1} << w;
                Candidate c{0, {}};
                for (auto l = left; l; l &= l - 1)
                    c.parts.left.push_back(static_cast<Vertex>(std::countr_zero(l)));
                for (auto r = right; r; r &= r - 1)
                    c.parts.right.push_back(static_cast<Vertex>(std::countr_zero(r)));
                for (auto a : c.parts.left)
                    for (auto b : c.parts.right)
                        c.edges |= std::uint64_t{1} << id_[a].at(b);
                out.push_back(std::move(c));
                if (rextra == 0) break;
            }
            if (extra == 0) break;
        }
        std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
            return std::popcount(a.edges) > std::popcount(b.edges);
        });
        return out;
    }

    void search(std::uint64_t covered, std::vector<Biclique>& stack)
    {
        if (++nodes_ > max_nodes_)
            throw ResourceError("biclique partition search exceeded its node budget", "max_nodes", max_nodes_);
        if (covered == all_) {
            if (stack.size() < best_size_) {
                best_size_ = stack.size();
                best_ = stack;
            }
            return;
        }
        if (stack.size() + 1 >= best_size_) return;
        const auto edge = static_cast<std::size_t>(std::countr_zero(~covered & all_));
        for (auto& c : bicliques_through(edge, covered)) {
            stack.push_back(c.parts);
            search(covered | c.edges, stack);
            stack.pop_back();
            if (stack.size() + 1 >= best_size_) return;
        }
    }

    const Hypergraph& g_;
    std::size_t max_nodes_;
    std::vector<std::map<Vertex, std::size_t>> id_;
    std::uint64_t all_ = 0;
    std::size_t nodes_ = 0;
    std::size_t best_size_ = 0;
    std::vector<Biclique> best_;
};

} // namespace

BicliquePartition biclique_partition_number(const Hypergraph& g, const BicliqueBudget& budget)
{
    if (g.uniformity != 2) throw ArgumentError("biclique partition number is defined for graphs only");
    if (g.edges.size() > budget.max_edges || g.edges.size() > 64)
        throw ResourceError(std::to_string(g.edges.size()) + " edges exceed the exact biclique budget", "max_edges",
                            budget.max_edges);
    if (g.vertices > 64) throw ResourceError("more than 64 vertices", "max_vertices", 64);
    if (g.edges.empty()) return {};
    return BicliqueSearch(g, budget.max_nodes).solve();
}

Hypergraph complete_graph(std::size_t v)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a < v; ++a)
        for (Vertex b = a + 1; b < v; ++b)
            e.emplace_back(a, b);
    return make_graph(v, e);
}

Hypergraph cycle_graph(std::size_t v)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; a < v; ++a)
        e.emplace_back(a, (a + 1) % v);
    return make_graph(v, e);
}

Hypergraph complete_bipartite_graph(std::size_t a, std::size_t b)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex x = 0; x < a; ++x)
        for (Vertex y = 0; y < b; ++y)
            e.emplace_back(x, a + y);
    return make_graph(a + b, e);
}

Hypergraph petersen_graph()
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return make_graph(10, e);
}

} // namespace shatter
