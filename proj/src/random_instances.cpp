#include <shatter/random_instances.hpp>

namespace shatter {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

PartialClass random_partial_class(Rng& rng, std::size_t n, unsigned r, std::size_t members, double undefined_rate)
{
    std::bernoulli_distribution undefined(undefined_rate);
    std::uniform_int_distribution<unsigned> value(1, r);
    std::vector<Symbol> flat;
    flat.reserve(n * members);
    for (std::size_t m = 0; m < members; ++m)
        for (std::size_t i = 0; i < n; ++i)
            flat.push_back(undefined(rng) ? kUndefined : static_cast<Symbol>(value(rng)));
    return PartialClass(r, n, std::move(flat), members);
}

TotalClass random_total_class(Rng& rng, std::size_t n, unsigned r, std::size_t members)
{
    return TotalClass(random_partial_class(rng, n, r, members, 0.0));
}

Hypergraph random_graph(Rng& rng, std::size_t vertices, double edge_probability)
{
    std::bernoulli_distribution keep(edge_probability);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < vertices; ++a)
        for (Vertex b = a + 1; b < vertices; ++b)
            if (keep(rng)) edges.emplace_back(a, b);
    return make_graph(vertices, edges);
}

WordSpec random_periodic_word(Rng& rng, unsigned r, std::size_t max_period)
{
    std::uniform_int_distribution<std::size_t> length(1, max_period);
    std::uniform_int_distribution<unsigned> letter(1, r);
    std::vector<Symbol> cycle(length(rng));
    for (auto& s : cycle)
        s = static_cast<Symbol>(letter(rng));
    return WordSpec::periodic(r, std::move(cycle));
}

} // namespace shatter
