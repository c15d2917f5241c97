#pragma once
// Brute-force reference implementations. Deliberately naive and independent
// of the library algorithms they check.

#include <shatter/function_class.hpp>
#include <shatter/graph.hpp>
#include <shatter/words.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using shatter::PartialClass;
using shatter::Symbol;

inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

// every word of length len over 1..r
inline std::vector<std::vector<Symbol>> all_words(unsigned r, std::size_t len)
{
    std::vector<std::vector<Symbol>> out{{}};
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<std::vector<Symbol>> next;
        for (const auto& w : out)
            for (unsigned v = 1; v <= r; ++v) {
                auto x = w;
                x.push_back(static_cast<Symbol>(v));
                next.push_back(x);
            }
        out = next;
    }
    return out;
}

inline bool shattered(const PartialClass& h, const std::vector<std::size_t>& s)
{
    std::set<std::vector<Symbol>> seen;
    for (std::size_t m = 0; m < h.size(); ++m) {
        std::vector<Symbol> p;
        bool total = true;
        for (auto i : s) {
            total = total && h[m][i] != 0;
            p.push_back(h[m][i]);
        }
        if (total) seen.insert(p);
    }
    for (const auto& w : all_words(h.alphabet(), s.size()))
        if (!seen.count(w)) return false;
    return true;
}

inline std::optional<std::size_t> vc(const PartialClass& h)
{
    std::optional<std::size_t> best;
    for (const auto& s : all_subsets(h.arity()))
        if (shattered(h, s)) best = std::max(best.value_or(0), s.size());
    return best;
}

inline std::uint64_t strength(const PartialClass& h)
{
    std::uint64_t c = 0;
    for (const auto& s : all_subsets(h.arity()))
        c += shattered(h, s);
    return c;
}

inline bool covers(std::span<const Symbol> f, std::span<const Symbol> h)
{
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] != 0 && h[i] == f[i]) return false;
    return true;
}

// minimum net size by trying all families of total functions in increasing size
inline std::size_t cover(const PartialClass& h)
{
    if (h.empty()) return 0;
    const auto fs = all_words(h.alphabet(), h.arity());
    const std::size_t F = fs.size();
    for (std::size_t t = 1;; ++t) {
        std::vector<std::size_t> idx(t);
        for (std::size_t i = 0; i < t; ++i)
            idx[i] = i;
        while (true) {
            bool ok = true;
            for (std::size_t m = 0; m < h.size() && ok; ++m) {
                bool any = false;
                for (auto j : idx)
                    any = any || covers(fs[j], h[m]);
                ok = any;
            }
            if (ok) return t;
            std::size_t i = t;
            while (i > 0 && idx[i - 1] == F - t + i - 1)
                --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < t; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
}

inline std::vector<std::vector<Symbol>> k_subsets(unsigned r, unsigned k)
{
    std::vector<std::vector<Symbol>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m)
        if (static_cast<unsigned>(__builtin_popcountll(m)) == k) {
            std::vector<Symbol> s;
            for (unsigned v = 0; v < r; ++v)
                if (m >> v & 1) s.push_back(static_cast<Symbol>(v + 1));
            out.push_back(s);
        }
    return out;
}

// tries every choice of Y_i and checks the full product against the restriction
inline bool k_shattered(const PartialClass& h, const std::vector<std::size_t>& s, unsigned k)
{
    std::set<std::vector<Symbol>> restr;
    for (std::size_t m = 0; m < h.size(); ++m) {
        std::vector<Symbol> p;
        for (auto i : s)
            p.push_back(h[m][i]);
        restr.insert(p);
    }
    if (s.empty()) return !h.empty();
    const auto ys = k_subsets(h.alphabet(), k);
    std::vector<std::size_t> choice(s.size(), 0);
    while (true) {
        bool all = true;
        std::vector<std::size_t> pos(s.size(), 0);
        while (all) {
            std::vector<Symbol> p;
            for (std::size_t t = 0; t < s.size(); ++t)
                p.push_back(ys[choice[t]][pos[t]]);
            all = restr.count(p) > 0;
            std::size_t t = s.size();
            while (t > 0 && ++pos[t - 1] == k)
                pos[--t] = 0;
            if (t == 0) break;
        }
        if (all) return true;
        std::size_t t = s.size();
        while (t > 0 && ++choice[t - 1] == ys.size())
            choice[--t] = 0;
        if (t == 0) return false;
    }
}

inline std::size_t natarajan(const PartialClass& h, unsigned k)
{
    std::size_t best = 0;
    for (const auto& s : all_subsets(h.arity()))
        if (s.size() > best && k_shattered(h, s, k)) best = s.size();
    return best;
}

// smallest c admitting a colouring with no monochromatic edge
inline std::size_t chi(const shatter::Hypergraph& g)
{
    if (g.vertices == 0) return 0;
    for (std::size_t c = 1;; ++c) {
        std::vector<std::size_t> col(g.vertices, 0);
        while (true) {
            if (shatter::is_proper_coloring(g, col)) return c;
            std::size_t v = g.vertices;
            while (v > 0 && ++col[v - 1] == c)
                col[--v] = 0;
            if (v == 0) break;
        }
    }
}

// true iff the edge set is exactly L x R for some split of its vertices
inline bool is_biclique_edge_set(const std::vector<shatter::VertexList>& edges)
{
    if (edges.empty()) return true;
    std::set<std::size_t> vs;
    for (const auto& e : edges)
        vs.insert(e.begin(), e.end());
    std::vector<std::size_t> verts(vs.begin(), vs.end());
    auto has = [&](std::size_t a, std::size_t b) {
        for (const auto& e : edges)
            if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) return true;
        return false;
    };
    // try every split with verts[0] on the left
    const std::size_t m = verts.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
        std::vector<std::size_t> left{verts[0]}, right;
        for (std::size_t i = 1; i < m; ++i)
            (mask >> (i - 1) & 1 ? left : right).push_back(verts[i]);
        if (left.size() * right.size() != edges.size()) continue;
        bool ok = true;
        for (auto a : left)
            for (auto b : right)
                ok = ok && has(a, b);
        if (ok) return true;
    }
    return false;
}

// bp(G) by assigning every edge to one of t parts, t increasing
inline std::size_t bp(const shatter::Hypergraph& g)
{
    const std::size_t e = g.edges.size();
    if (e == 0) return 0;
    for (std::size_t t = 1;; ++t) {
        std::vector<std::size_t> part(e, 0);
        while (true) {
            bool ok = true;
            for (std::size_t p = 0; p < t && ok; ++p) {
                std::vector<shatter::VertexList> es;
                for (std::size_t i = 0; i < e; ++i)
                    if (part[i] == p) es.push_back(g.edges[i]);
                ok = is_biclique_edge_set(es);
            }
            if (ok) return t;
            std::size_t i = e;
            while (i > 0 && ++part[i - 1] == t)
                part[--i] = 0;
            if (i == 0) break;
        }
    }
}

// p*(n) by scanning every index set inside [0, smax] over shifts [0, shifts)
inline std::size_t pstar(const shatter::WordSpec& w, std::size_t n, std::size_t smax, std::size_t shifts)
{
    const auto a = shatter::generate(w, shifts + smax + 1);
    std::size_t best = 0;
    for (const auto& s : all_subsets(smax + 1)) {
        if (s.size() != n) continue;
        std::set<std::vector<Symbol>> pats;
        for (std::size_t m = 0; m < shifts; ++m) {
            std::vector<Symbol> p;
            for (auto i : s)
                p.push_back(a[m + i]);
            pats.insert(p);
        }
        best = std::max(best, pats.size());
    }
    return best;
}

} // namespace oracle
