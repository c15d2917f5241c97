#pragma once

#include <shatter/function_class.hpp>
#include <shatter/graph.hpp>
#include <shatter/words.hpp>

#include <cstdint>
#include <random>

namespace shatter {

using Rng = std::mt19937_64;

/// Deterministic generator for (seed, stream, index) triples.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// `members` draws from {1..r, undefined}^n, each entry undefined with probability `undefined_rate`.
PartialClass random_partial_class(Rng& rng, std::size_t n, unsigned r, std::size_t members, double undefined_rate);

TotalClass random_total_class(Rng& rng, std::size_t n, unsigned r, std::size_t members);

/// G(v, p) with 0-based vertices.
Hypergraph random_graph(Rng& rng, std::size_t vertices, double edge_probability);

WordSpec random_periodic_word(Rng& rng, unsigned r, std::size_t max_period);

} // namespace shatter
