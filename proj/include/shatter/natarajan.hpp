#pragma once

#include <shatter/bigint.hpp>
#include <shatter/function_class.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace shatter {

/// If S is k-Natarajan shattered, the k-element value sets Y_i (ascending, one
/// per element of S in increasing order) with prod Y_i contained in H|_S.
struct ProductWitness {
    IndexMask subset = 0;
    std::vector<std::vector<Symbol>> value_sets;
};

/// True iff H|_S contains a product of k-element value sets. k may be 1..r.
bool is_k_shattered(const TotalClass& cls, IndexMask subset, unsigned k, ProductWitness* witness = nullptr);

/// dim_k(H): the largest k-Natarajan shattered set, searched levelwise.
/// Requires a nonempty class and 1 <= k <= r.
std::size_t natarajan_dim(const TotalClass& cls, unsigned k, ProductWitness* witness = nullptr, unsigned threads = 1);

/// Coordinate value at some stage of the branching construction: a plain
/// alphabet value, a b_j marker (1 <= j <= k-1) or a c_A marker (A as a bitmask, bit v-1 for value v).
struct BranchSymbol {
    enum class Kind : std::uint8_t { Value, B, C };
    Kind kind = Kind::Value;
    std::uint32_t payload = 0;

    static BranchSymbol value(Symbol v) { return {Kind::Value, v}; }
    static BranchSymbol b(unsigned j) { return {Kind::B, j}; }
    static BranchSymbol c(std::uint32_t set_mask) { return {Kind::C, set_mask}; }

    friend auto operator<=>(const BranchSymbol&, const BranchSymbol&) = default;
};

/// "3", "b1" or "c{1,3}".
std::string to_token(const BranchSymbol& s);
BranchSymbol parse_branch_token(const std::string& token);

using StageRow = std::vector<BranchSymbol>;

/// H_0..H_n of the branching construction. stages[i][m] is the image of input
/// member m under phi_i o ... o phi_1, so every phi_i is "member m -> member m".
struct BranchTrace {
    unsigned r = 0;
    unsigned k = 0;
    std::size_t n = 0;
    std::vector<std::vector<StageRow>> stages;

    std::size_t c_count(std::size_t member) const;
    std::size_t max_c_count() const;
};

/// Builds phi_1..phi_n block by block (blocks in lexicographic order of their
/// fixed coordinates, members of a block by ascending free value) and checks
/// the structural, bijectivity and product-containment properties before
/// returning. Throws InvariantViolation if a check fails. Requires 2 <= k <= r.
BranchTrace branch_construct(const TotalClass& cls, unsigned k);

/// Replays the counting argument of the cardinality bound: member x goes to
/// part i when the (n-d)-th b-coordinate of its final image sits at position n-i.
/// part_sizes[i] = |G_i| for i = 0..d. Throws InvariantViolation when some member
/// has more than d c-coordinates.
struct ProofPartition {
    std::vector<std::size_t> part_of_member;
    std::vector<std::size_t> part_sizes;
};
ProofPartition proof_partition(const BranchTrace& trace, std::size_t d);

/// All vectors of [r]^n with at most d coordinates in {k, ..., r}.
TotalClass tight_family(std::size_t n, unsigned r, unsigned k, std::size_t d);
BigInt tight_family_size(std::size_t n, unsigned r, unsigned k, std::size_t d);

} // namespace shatter
