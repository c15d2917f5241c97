#include <shatter/errors.hpp>
#include <shatter/natarajan.hpp>
#include <shatter/parallel.hpp>
#include <shatter/shattering.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace shatter {

namespace {

using Row = std::vector<Symbol>;
using Rows = std::vector<Row>;

std::size_t saturating_pow(std::size_t base, std::size_t exp, std::size_t cap)
{
    std::size_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        v *= base;
        if (v > cap) return cap + 1;
    }
    return v;
}

// Does `rows` (sorted, all of width w) contain a product of k-element value sets?
bool contains_product(const Rows& rows, std::size_t width, unsigned k, unsigned r, std::vector<Row>& chosen)
{
    if (width == 0) return !rows.empty();
    const std::size_t tail_need = saturating_pow(k, width - 1, rows.size());
    if (tail_need > rows.size()) return false;

    std::vector<Rows> fibers(r + 1);
    for (const auto& row : rows)
        fibers[row[0]].emplace_back(row.begin() + 1, row.end());
    std::vector<Symbol> usable;
    for (unsigned v = 1; v <= r; ++v)
        if (fibers[v].size() >= tail_need) usable.push_back(static_cast<Symbol>(v));
    if (usable.size() < k) return false;

    // k-combinations of usable values in lexicographic order
    std::vector<std::size_t> pick(k);
    for (unsigned t = 0; t < k; ++t)
        pick[t] = t;
    while (true) {
        Rows common = fibers[usable[pick[0]]];
        for (unsigned t = 1; t < k && common.size() >= tail_need; ++t) {
            Rows next;
            const auto& other = fibers[usable[pick[t]]];
            std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(next));
            common = std::move(next);
        }
        if (common.size() >= tail_need) {
            Row values;
            for (auto p : pick)
                values.push_back(usable[p]);
            chosen.push_back(std::move(values));
            if (contains_product(common, width - 1, k, r, chosen)) return true;
            chosen.pop_back();
        }
        std::size_t t = k;
        while (t > 0 && pick[t - 1] == usable.size() - k + (t - 1))
            --t;
        if (t == 0) break;
        ++pick[t - 1];
        for (std::size_t u = t; u < k; ++u)
            pick[u] = pick[u - 1] + 1;
    }
    return false;
}

void check_k(const TotalClass& cls, unsigned k, unsigned lowest)
{
    if (k < lowest || k > cls.alphabet())
        throw ArgumentError("k = " + std::to_string(k) + " outside [" + std::to_string(lowest) + ", "
                            + std::to_string(cls.alphabet()) + "]");
}

} // namespace

bool is_k_shattered(const TotalClass& cls, IndexMask subset, unsigned k, ProductWitness* witness)
{
    check_k(cls, k, 1);
    if (cls.arity() > kMaxMaskArity) throw ArgumentError("k-shattering search supports arity <= 64");
    if (cls.arity() < kMaxMaskArity && (subset >> cls.arity()) != 0)
        throw ArgumentError("index set reaches beyond the arity");
    if (cls.empty()) return false;

    const auto idx = mask_indices(subset);
    const auto restricted = restrict(cls.as_partial(), idx);
    std::vector<Row> chosen;
    const bool ok = contains_product(restricted.rows(), idx.size(), k, cls.alphabet(), chosen);
    if (ok && witness) *witness = ProductWitness{subset, std::move(chosen)};
    return ok;
}

std::size_t natarajan_dim(const TotalClass& cls, unsigned k, ProductWitness* witness, unsigned threads)
{
    check_k(cls, k, 1);
    if (cls.empty()) throw DomainError("k-Natarajan dimension of the empty class is undefined");
    if (cls.arity() > kMaxMaskArity) throw ArgumentError("k-shattering search supports arity <= 64");

    const std::size_t n = cls.arity();
    std::vector<IndexMask> level{0};
    ProductWitness best{0, {}};
    std::size_t dim = 0;
    while (true) {
        std::vector<IndexMask> candidates;
        for (IndexMask s : level) {
            const std::size_t start = s ? static_cast<std::size_t>(std::bit_width(s)) : 0;
            for (std::size_t j = start; j < n; ++j) {
                const IndexMask cand = s | (IndexMask{1} << j);
                bool faces_ok = true;
                for (IndexMask rest = s; rest && faces_ok; rest &= rest - 1)
                    faces_ok = std::binary_search(level.begin(), level.end(), cand & ~(rest & -rest));
                if (faces_ok) candidates.push_back(cand);
            }
        }
        std::vector<char> ok(candidates.size(), 0);
        std::vector<ProductWitness> found(candidates.size());
        parallel_for(candidates.size(), threads,
                     [&](unsigned, std::size_t c) { ok[c] = is_k_shattered(cls, candidates[c], k, &found[c]); });

        std::vector<IndexMask> next;
        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (ok[c]) next.push_back(candidates[c]);
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (candidates[c] == next.front()) best = std::move(found[c]);
        dim = mask_size(next.front());
        level = std::move(next);
    }
    if (witness) *witness = std::move(best);
    return dim;
}

std::string to_token(const BranchSymbol& s)
{
    switch (s.kind) {
    case BranchSymbol::Kind::Value: return std::to_string(s.payload);
    case BranchSymbol::Kind::B: return "b" + std::to_string(s.payload);
    case BranchSymbol::Kind::C: {
        std::string out = "c{";
        bool first = true;
        for (unsigned v = 0; v < 32; ++v)
            if (s.payload >> v & 1u) {
                if (!first) out += ',';
                out += std::to_string(v + 1);
                first = false;
            }
        return out + "}";
    }
    }
    return "?";
}

BranchSymbol parse_branch_token(const std::string& token)
{
    auto number = [&](const std::string& text) {
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
            throw ArgumentError("bad branch token '" + token + "'");
        return static_cast<std::uint32_t>(std::stoul(text));
    };
    if (token.empty()) throw ArgumentError("empty branch token");
    if (token[0] == 'b') return BranchSymbol::b(number(token.substr(1)));
    if (token[0] == 'c') {
        if (token.size() < 3 || token[1] != '{' || token.back() != '}')
            throw ArgumentError("bad branch token '" + token + "'");
        std::uint32_t mask = 0;
        std::stringstream inner(token.substr(2, token.size() - 3));
        std::string part;
        while (std::getline(inner, part, ',')) {
            const auto v = number(part);
            if (v < 1 || v > 32) throw ArgumentError("bad value in branch token '" + token + "'");
            mask |= 1u << (v - 1);
        }
        return BranchSymbol::c(mask);
    }
    return BranchSymbol::value(static_cast<Symbol>(number(token)));
}

std::size_t BranchTrace::c_count(std::size_t member) const
{
    const auto& row = stages.back()[member];
    return static_cast<std::size_t>(std::count_if(
        row.begin(), row.end(), [](const BranchSymbol& s) { return s.kind == BranchSymbol::Kind::C; }));
}

std::size_t BranchTrace::max_c_count() const
{
    std::size_t best = 0;
    for (std::size_t m = 0; m < stages.back().size(); ++m)
        best = std::max(best, c_count(m));
    return best;
}

namespace {

void verify_stage(const BranchTrace& trace, std::size_t stage)
{
    const auto& rows = trace.stages[stage];
    for (const auto& row : rows)
        for (std::size_t c = 0; c < trace.n; ++c) {
            const bool branched = row[c].kind != BranchSymbol::Kind::Value;
            if (branched != (c < stage))
                throw InvariantViolation("stage " + std::to_string(stage) + " has a misplaced branch symbol at coordinate "
                                         + std::to_string(c + 1));
        }
    if (stage == 0) return;

    const auto& prev = trace.stages[stage - 1];
    for (std::size_t m = 0; m < rows.size(); ++m)
        for (std::size_t c = 0; c < trace.n; ++c)
            if (c != stage - 1 && rows[m][c] != prev[m][c])
                throw InvariantViolation("phi_" + std::to_string(stage) + " changed coordinate " + std::to_string(c + 1));

    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvariantViolation("phi_" + std::to_string(stage) + " is not injective");
}

// Every final image with c_{A_i} at the coordinates I certifies prod A_i inside H|_I.
void verify_products(const TotalClass& cls, const BranchTrace& trace)
{
    std::map<std::vector<BranchSymbol>, bool> checked;
    for (const auto& row : trace.stages.back()) {
        std::vector<std::size_t> idx;
        std::vector<std::vector<Symbol>> sets;
        std::vector<BranchSymbol> key(row.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c].kind != BranchSymbol::Kind::C) continue;
            key[c] = row[c];
            idx.push_back(c);
            std::vector<Symbol> values;
            for (unsigned v = 0; v < trace.r; ++v)
                if (row[c].payload >> v & 1u) values.push_back(static_cast<Symbol>(v + 1));
            if (values.size() != trace.k) throw InvariantViolation("c-symbol with a set of the wrong size");
            sets.push_back(std::move(values));
        }
        if (idx.empty() || checked.contains(key)) continue;
        checked.emplace(key, true);

        const auto restricted = restrict(cls.as_partial(), idx);
        std::vector<std::size_t> pos(idx.size(), 0);
        std::vector<Symbol> tuple(idx.size());
        while (true) {
            for (std::size_t t = 0; t < idx.size(); ++t)
                tuple[t] = sets[t][pos[t]];
            if (!restricted.contains(tuple))
                throw InvariantViolation("final image certifies a product that the class does not contain");
            std::size_t t = idx.size();
            while (t > 0 && ++pos[t - 1] == sets[t - 1].size())
                pos[--t] = 0;
            if (t == 0) break;
        }
    }
}

} // namespace

BranchTrace branch_construct(const TotalClass& cls, unsigned k)
{
    check_k(cls, k, 2);
    if (cls.alphabet() > 32) throw ArgumentError("branching construction supports r <= 32");

    BranchTrace trace;
    trace.r = cls.alphabet();
    trace.k = k;
    trace.n = cls.arity();
    trace.stages.reserve(trace.n + 1);

    std::vector<StageRow> current;
    current.reserve(cls.size());
    for (std::size_t m = 0; m < cls.size(); ++m) {
        StageRow row;
        for (auto v : cls[m])
            row.push_back(BranchSymbol::value(v));
        current.push_back(std::move(row));
    }
    trace.stages.push_back(current);
    verify_stage(trace, 0);

    for (std::size_t c = 0; c < trace.n; ++c) {
        // Blocks: members agreeing outside coordinate c, ordered by the rest of the row, then by the value at c.
        std::vector<std::size_t> order(current.size());
        for (std::size_t m = 0; m < order.size(); ++m)
            order[m] = m;
        auto outside_less = [&](std::size_t a, std::size_t b) {
            const auto& ra = current[a];
            const auto& rb = current[b];
            for (std::size_t t = 0; t < trace.n; ++t) {
                if (t == c) continue;
                if (ra[t] != rb[t]) return ra[t] < rb[t];
            }
            return false;
        };
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (outside_less(a, b)) return true;
            if (outside_less(b, a)) return false;
            return current[a][c] < current[b][c];
        });

        std::vector<StageRow> next = current;
        for (std::size_t start = 0; start < order.size();) {
            std::size_t end = start + 1;
            while (end < order.size() && !outside_less(order[start], order[end]))
                ++end;
            std::uint32_t low_mask = 0;
            for (std::size_t j = 1; j <= end - start; ++j) {
                const auto m = order[start + j - 1];
                const std::uint32_t bit = 1u << (current[m][c].payload - 1);
                if (j <= k - 1) {
                    next[m][c] = BranchSymbol::b(static_cast<unsigned>(j));
                    low_mask |= bit;
                } else {
                    next[m][c] = BranchSymbol::c(low_mask | bit);
                }
            }
            start = end;
        }
        current = std::move(next);
        trace.stages.push_back(current);
        verify_stage(trace, c + 1);
    }
    verify_products(cls, trace);
    return trace;
}

ProofPartition proof_partition(const BranchTrace& trace, std::size_t d)
{
    const std::size_t n = trace.n;
    if (d > n) throw ArgumentError("partition parameter d exceeds n");
    ProofPartition out;
    out.part_sizes.assign(d + 1, 0);
    const auto& final_rows = trace.stages.back();
    out.part_of_member.reserve(final_rows.size());
    for (std::size_t m = 0; m < final_rows.size(); ++m) {
        if (trace.c_count(m) > d)
            throw InvariantViolation("member has more than d c-coordinates");
        std::size_t part = d;
        std::size_t seen = 0;
        for (std::size_t pos = 1; pos <= n && n > d; ++pos) {
            if (final_rows[m][pos - 1].kind == BranchSymbol::Kind::B && ++seen == n - d) {
                part = n - pos;
                break;
            }
        }
        if (part > d) throw InvariantViolation("member falls outside parts 0..d");
        out.part_of_member.push_back(part);
        ++out.part_sizes[part];
    }
    return out;
}

TotalClass tight_family(std::size_t n, unsigned r, unsigned k, std::size_t d)
{
    if (k < 2 || k > r) throw ArgumentError("tight family requires 2 <= k <= r");
    if (d > n) throw ArgumentError("tight family requires d <= n");
    const std::size_t limit = std::size_t{1} << 22;
    if (saturating_pow(r, n, limit) > limit) throw ResourceError("r^n too large to enumerate", "max_candidates", limit);

    std::vector<Symbol> flat;
    std::size_t rows = 0;
    std::vector<Symbol> v(n, 1);
    while (true) {
        const auto big = static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [k](Symbol s) { return s >= k; }));
        if (big <= d) {
            flat.insert(flat.end(), v.begin(), v.end());
            ++rows;
        }
        std::size_t i = n;
        while (i > 0 && v[i - 1] == r)
            v[--i] = 1;
        if (i == 0) break;
        ++v[i - 1];
    }
    return TotalClass(PartialClass(r, n, std::move(flat), rows));
}

BigInt tight_family_size(std::size_t n, unsigned r, unsigned k, std::size_t d)
{
    BigInt total = 0;
    for (std::size_t i = 0; i <= d && i <= n; ++i)
        total += binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(i)) * ipow(r - k + 1, static_cast<std::int64_t>(i))
                 * ipow(k - 1, static_cast<std::int64_t>(n - i));
    return total;
}

} // namespace shatter
