#pragma once

#include <shatter/function_class.hpp>

#include <cstddef>
#include <vector>

namespace shatter {

/// M_H(i): the value j minimising s(H_{i->j}); ties go to the smallest j.
/// Throws DomainError for the empty class.
Symbol minority_value(const PartialClass& cls, std::size_t coordinate);

/// One run of the minority algorithm: the member it was run for, the total
/// function it produced, and the set of coordinates where step (3) fired.
struct NetTrace {
    std::size_t member;
    std::vector<Symbol> function;
    IndexMask branch_set;
};

struct Net {
    TotalClass carrier;
    std::vector<NetTrace> traces; // one per member of the input, in member order
};

/// Runs the minority algorithm for every member, coordinates in order 0..n-1.
/// The carrier is the set of distinct output functions. Output does not depend on `threads`.
Net build_net(const PartialClass& cls, unsigned threads = 1);

/// Reconstructs the output function from the branch set alone.
std::vector<Symbol> replay_net_function(const PartialClass& cls, IndexMask branch_set);

/// True iff every member disagrees with some candidate at each of its defined coordinates.
bool verify_net(const PartialClass& cls, const TotalClass& candidate);

/// Returns the first candidate that covers `member`, or candidate.size() if none does.
std::size_t covering_function(std::span<const Symbol> member, const TotalClass& candidate);

struct CoverBudget {
    std::size_t max_candidates = std::size_t{1} << 20; // bound on r^n
    std::size_t max_nodes = 20'000'000;                // branch-and-bound nodes
};

struct CoverResult {
    std::size_t value;
    TotalClass witness;
    std::size_t greedy_value;
    std::size_t nodes;
};

/// C(H) by exact minimum set cover over all r^n total functions, branch-and-bound
/// seeded with the greedy cover. Throws ResourceError when either budget is exceeded.
CoverResult covering_number_exact(const PartialClass& cls, const CoverBudget& budget = {});

} // namespace shatter
