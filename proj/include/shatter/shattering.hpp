#pragma once

#include <shatter/function_class.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace shatter {

/// { h|_S : h in cls }, re-indexed so that S's elements in increasing order become 0..|S|-1.
/// Indices are 0-based and may be given in any order; duplicates or out-of-range indices throw ArgumentError.
PartialClass restrict(const PartialClass& cls, std::span<const std::size_t> indices);

/// True iff every total pattern in {1..r}^S is the restriction of some member.
/// The empty set is shattered exactly by nonempty classes.
bool is_shattered(const PartialClass& cls, IndexMask subset);
bool is_shattered(const PartialClass& cls, std::span<const std::size_t> indices);

/// All shattered subsets, found levelwise by size: a set is tested only when
/// all of its one-smaller subsets are shattered. Sorted by (size, mask).
std::vector<IndexMask> shattered_sets(const PartialClass& cls);

/// Maximum size of a shattered set; std::nullopt for the empty class, which shatters nothing.
std::optional<std::size_t> vc_dimension(const PartialClass& cls);

/// s(H): the number of shattered subsets of [n]. 0 for the empty class.
std::uint64_t shattering_strength(const PartialClass& cls);

/// H_{i->j}: the members taking value j at coordinate i (0-based i, j in 1..r).
PartialClass fix_coordinate(const PartialClass& cls, std::size_t coordinate, Symbol value);

} // namespace shatter
