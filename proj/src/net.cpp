#include <shatter/errors.hpp>
#include <shatter/net.hpp>
#include <shatter/parallel.hpp>
#include <shatter/shattering.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace shatter {

Symbol minority_value(const PartialClass& cls, std::size_t coordinate)
{
    if (cls.empty())
        throw DomainError("minority value of the empty class is undefined");
    if (coordinate >= cls.arity())
        throw ArgumentError("coordinate " + std::to_string(coordinate) + " out of range");

    Symbol best = 1;
    std::uint64_t best_strength = 0;
    for (unsigned j = 1; j <= cls.alphabet(); ++j) {
        const auto s = shattering_strength(fix_coordinate(cls, coordinate, static_cast<Symbol>(j)));
        if (j == 1 || s < best_strength) {
            best = static_cast<Symbol>(j);
            best_strength = s;
        }
    }
    return best;
}

namespace {

Symbol next_value(Symbol j, unsigned r) { return static_cast<Symbol>(j % r + 1); }

// Intermediate classes H^i are determined by the branch set chosen so far, so
// they are shared between members with a common prefix.
class MinorityCache {
public:
    explicit MinorityCache(const PartialClass& root) { nodes_.emplace(IndexMask{0}, Node{root, {}}); }

    Symbol minority(IndexMask branch, std::size_t coordinate)
    {
        auto& node = nodes_.at(branch);
        if (node.minority.empty()) node.minority.assign(node.cls.arity(), kUndefined);
        if (node.minority[coordinate] == kUndefined)
            node.minority[coordinate] = minority_value(node.cls, coordinate);
        return node.minority[coordinate];
    }

    void descend(IndexMask from, std::size_t coordinate, Symbol value)
    {
        const IndexMask to = from | (IndexMask{1} << coordinate);
        if (nodes_.contains(to)) return;
        nodes_.emplace(to, Node{fix_coordinate(nodes_.at(from).cls, coordinate, value), {}});
    }

private:
    struct Node {
        PartialClass cls;
        std::vector<Symbol> minority;
    };
    std::map<IndexMask, Node> nodes_;
};

void check_net_arity(const PartialClass& cls)
{
    if (cls.arity() > kMaxMaskArity)
        throw ArgumentError("net construction supports arity <= 64");
}

} // namespace

Net build_net(const PartialClass& cls, unsigned threads)
{
    if (cls.empty())
        throw DomainError("cannot build a net for the empty class");
    check_net_arity(cls);

    const std::size_t n = cls.arity();
    const unsigned r = cls.alphabet();
    std::vector<NetTrace> traces(cls.size());
    std::vector<MinorityCache> caches(std::max(threads, 1u), MinorityCache(cls));

    parallel_for(cls.size(), threads, [&](unsigned worker, std::size_t m) {
        auto& cache = caches[worker];
        auto h = cls[m];
        NetTrace trace{m, std::vector<Symbol>(n), 0};
        for (std::size_t i = 0; i < n; ++i) {
            const Symbol j = cache.minority(trace.branch_set, i);
            if (h[i] != j) {
                trace.function[i] = j;
            } else {
                trace.function[i] = next_value(j, r);
                cache.descend(trace.branch_set, i, j);
                trace.branch_set |= IndexMask{1} << i;
            }
        }
        traces[m] = std::move(trace);
    });

    std::vector<std::vector<Symbol>> outputs;
    outputs.reserve(traces.size());
    for (const auto& t : traces)
        outputs.push_back(t.function);
    return Net{TotalClass(r, n, outputs), std::move(traces)};
}

std::vector<Symbol> replay_net_function(const PartialClass& cls, IndexMask branch_set)
{
    check_net_arity(cls);
    const std::size_t n = cls.arity();
    if (n < kMaxMaskArity && (branch_set >> n) != 0)
        throw ArgumentError("branch set reaches beyond the arity");

    std::vector<Symbol> f(n);
    PartialClass current = cls;
    for (std::size_t i = 0; i < n; ++i) {
        if (current.empty())
            throw DomainError("branch set does not correspond to a run of the algorithm");
        const Symbol j = minority_value(current, i);
        if (branch_set >> i & 1) {
            f[i] = next_value(j, cls.alphabet());
            current = fix_coordinate(current, i, j);
        } else {
            f[i] = j;
        }
    }
    return f;
}

namespace {

bool covers(std::span<const Symbol> f, std::span<const Symbol> h)
{
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] != kUndefined && h[i] == f[i]) return false;
    return true;
}

} // namespace

std::size_t covering_function(std::span<const Symbol> member, const TotalClass& candidate)
{
    for (std::size_t k = 0; k < candidate.size(); ++k)
        if (covers(candidate[k], member)) return k;
    return candidate.size();
}

bool verify_net(const PartialClass& cls, const TotalClass& candidate)
{
    if (cls.arity() != candidate.arity() || cls.alphabet() != candidate.alphabet())
        throw ArgumentError("net candidate has a different arity or alphabet than the class");
    for (std::size_t m = 0; m < cls.size(); ++m)
        if (covering_function(cls[m], candidate) == candidate.size()) return false;
    return true;
}

namespace {

using Bits = boost::dynamic_bitset<>;

struct CoverSet {
    Bits members;
    std::vector<Symbol> function;
};

class CoverSearch {
public:
    CoverSearch(std::vector<CoverSet> sets, std::size_t universe, std::size_t max_nodes)
        : sets_(std::move(sets)), universe_(universe), max_nodes_(max_nodes), containing_(universe)
    {
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            largest_ = std::max(largest_, sets_[s].members.count());
            for (auto e = sets_[s].members.find_first(); e != Bits::npos; e = sets_[s].members.find_next(e))
                containing_[e].push_back(s);
        }
    }

    std::vector<std::size_t> greedy() const
    {
        Bits covered(universe_);
        std::vector<std::size_t> chosen;
        while (!covered.all()) {
            std::size_t best = 0, best_gain = 0;
            for (std::size_t s = 0; s < sets_.size(); ++s) {
                const auto gain = (sets_[s].members - covered).count();
                if (gain > best_gain) {
                    best_gain = gain;
                    best = s;
                }
            }
            chosen.push_back(best);
            covered |= sets_[best].members;
        }
        return chosen;
    }

    std::vector<std::size_t> solve(std::vector<std::size_t> incumbent)
    {
        best_ = std::move(incumbent);
        std::vector<std::size_t> stack;
        Bits covered(universe_);
        branch(covered, stack);
        return best_;
    }

    std::size_t nodes() const { return nodes_; }
    const CoverSet& set(std::size_t s) const { return sets_[s]; }

private:
    void branch(const Bits& covered, std::vector<std::size_t>& stack)
    {
        if (++nodes_ > max_nodes_)
            throw ResourceError("exact cover search exceeded its node budget", "max_nodes", max_nodes_);
        const auto uncovered = universe_ - covered.count();
        if (uncovered == 0) {
            if (stack.size() < best_.size()) best_ = stack;
            return;
        }
        const auto lower = (uncovered + largest_ - 1) / largest_;
        if (stack.size() + lower >= best_.size()) return;

        std::size_t pick = universe_;
        for (std::size_t e = 0; e < universe_; ++e) {
            if (covered[e]) continue;
            if (pick == universe_ || containing_[e].size() < containing_[pick].size()) pick = e;
        }
        for (auto s : containing_[pick]) {
            stack.push_back(s);
            branch(covered | sets_[s].members, stack);
            stack.pop_back();
            if (stack.size() + 1 >= best_.size()) return;
        }
    }

    std::vector<CoverSet> sets_;
    std::size_t universe_;
    std::size_t max_nodes_;
    std::vector<std::vector<std::size_t>> containing_;
    std::size_t largest_ = 1;
    std::vector<std::size_t> best_;
    std::size_t nodes_ = 0;
};

} // namespace

CoverResult covering_number_exact(const PartialClass& cls, const CoverBudget& budget)
{
    const unsigned r = cls.alphabet();
    const std::size_t n = cls.arity();
    if (cls.empty()) return CoverResult{0, TotalClass(r, n), 0, 0};

    std::size_t candidates = 1;
    for (std::size_t i = 0; i < n; ++i) {
        candidates *= r;
        if (candidates > budget.max_candidates)
            throw ResourceError("r^n = " + std::to_string(r) + "^" + std::to_string(n)
                                    + " exceeds the candidate budget",
                                "max_candidates", budget.max_candidates);
    }

    // One cover set per distinct covered-member pattern; the first function in
    // lexicographic order represents it.
    std::map<Bits, std::vector<Symbol>> distinct;
    std::vector<Symbol> f(n, 1);
    for (std::size_t c = 0; c < candidates; ++c) {
        Bits hit(cls.size());
        for (std::size_t m = 0; m < cls.size(); ++m)
            if (covers(f, cls[m])) hit.set(m);
        if (hit.any()) distinct.try_emplace(std::move(hit), f);
        for (std::size_t i = n; i-- > 0;) {
            if (f[i] < r) {
                ++f[i];
                break;
            }
            f[i] = 1;
        }
    }

    std::vector<CoverSet> sets;
    for (auto& [bits, fn] : distinct)
        sets.push_back(CoverSet{bits, fn});
    std::stable_sort(sets.begin(), sets.end(),
                     [](const CoverSet& a, const CoverSet& b) { return a.members.count() > b.members.count(); });
    std::vector<CoverSet> maximal;
    for (auto& s : sets) {
        bool dominated = false;
        for (const auto& kept : maximal)
            if (s.members.is_subset_of(kept.members)) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(std::move(s));
    }

    CoverSearch search(std::move(maximal), cls.size(), budget.max_nodes);
    auto greedy = search.greedy();
    const auto greedy_size = greedy.size();
    auto best = search.solve(std::move(greedy));

    std::vector<std::vector<Symbol>> witness;
    for (auto s : best)
        witness.push_back(search.set(s).function);
    return CoverResult{best.size(), TotalClass(r, n, witness), greedy_size, search.nodes()};
}

} // namespace shatter
