#include <shatter/errors.hpp>
#include <shatter/shattering.hpp>

#include <algorithm>
#include <string>

namespace shatter {

namespace {

void check_mask(const PartialClass& cls, IndexMask subset)
{
    if (cls.arity() > kMaxMaskArity)
        throw ArgumentError("shattering search supports arity <= 64");
    if (cls.arity() < kMaxMaskArity && (subset >> cls.arity()) != 0)
        throw ArgumentError("index set reaches beyond arity " + std::to_string(cls.arity()));
}

// r^k, saturating at `cap + 1` so callers can compare against class sizes without overflow.
std::size_t pattern_space(unsigned r, std::size_t k, std::size_t cap)
{
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > cap) return cap + 1;
        total *= r;
    }
    return total;
}

} // namespace

PartialClass restrict(const PartialClass& cls, std::span<const std::size_t> indices)
{
    std::vector<std::size_t> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ArgumentError("restriction index set has a repeated index");
    if (!sorted.empty() && sorted.back() >= cls.arity())
        throw ArgumentError("restriction index " + std::to_string(sorted.back()) + " out of range for arity "
                            + std::to_string(cls.arity()));

    std::vector<Symbol> flat;
    flat.reserve(cls.size() * sorted.size());
    for (std::size_t k = 0; k < cls.size(); ++k) {
        auto row = cls[k];
        for (auto i : sorted)
            flat.push_back(row[i]);
    }
    return PartialClass(cls.alphabet(), sorted.size(), std::move(flat), cls.size());
}

bool is_shattered(const PartialClass& cls, IndexMask subset)
{
    check_mask(cls, subset);
    if (cls.empty()) return false;
    const auto k = mask_size(subset);
    const auto needed = pattern_space(cls.alphabet(), k, cls.size());
    if (needed > cls.size()) return false;

    const auto idx = mask_indices(subset);
    std::vector<char> seen(needed, 0);
    std::size_t found = 0;
    for (std::size_t m = 0; m < cls.size(); ++m) {
        auto row = cls[m];
        std::size_t code = 0;
        bool defined = true;
        for (auto i : idx) {
            if (row[i] == kUndefined) {
                defined = false;
                break;
            }
            code = code * cls.alphabet() + (row[i] - 1);
        }
        if (defined && !seen[code]) {
            seen[code] = 1;
            if (++found == needed) return true;
        }
    }
    return false;
}

bool is_shattered(const PartialClass& cls, std::span<const std::size_t> indices)
{
    for (auto i : indices)
        if (i >= cls.arity())
            throw ArgumentError("index " + std::to_string(i) + " out of range for arity " + std::to_string(cls.arity()));
    return is_shattered(cls, mask_from_indices(indices));
}

std::vector<IndexMask> shattered_sets(const PartialClass& cls)
{
    check_mask(cls, 0);
    std::vector<IndexMask> all;
    if (cls.empty()) return all;

    const std::size_t n = cls.arity();
    std::vector<IndexMask> level{0};
    all.push_back(0);
    while (!level.empty()) {
        std::vector<IndexMask> next;
        for (IndexMask s : level) {
            const std::size_t start = s ? static_cast<std::size_t>(std::bit_width(s)) : 0;
            for (std::size_t j = start; j < n; ++j) {
                const IndexMask cand = s | (IndexMask{1} << j);
                bool faces_ok = true;
                for (IndexMask rest = s; rest; rest &= rest - 1) {
                    const IndexMask face = cand & ~(rest & -rest);
                    if (!std::binary_search(level.begin(), level.end(), face)) {
                        faces_ok = false;
                        break;
                    }
                }
                if (faces_ok && is_shattered(cls, cand))
                    next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return all;
}

std::optional<std::size_t> vc_dimension(const PartialClass& cls)
{
    if (cls.empty()) return std::nullopt;
    auto sets = shattered_sets(cls);
    return mask_size(sets.back());
}

std::uint64_t shattering_strength(const PartialClass& cls)
{
    return shattered_sets(cls).size();
}

PartialClass fix_coordinate(const PartialClass& cls, std::size_t coordinate, Symbol value)
{
    if (coordinate >= cls.arity())
        throw ArgumentError("coordinate " + std::to_string(coordinate) + " out of range for arity "
                            + std::to_string(cls.arity()));
    if (value < 1 || value > cls.alphabet())
        throw ArgumentError("value " + std::to_string(value) + " outside alphabet 1.." + std::to_string(cls.alphabet()));

    std::vector<Symbol> flat;
    std::size_t rows = 0;
    for (std::size_t k = 0; k < cls.size(); ++k) {
        auto row = cls[k];
        if (row[coordinate] == value) {
            flat.insert(flat.end(), row.begin(), row.end());
            ++rows;
        }
    }
    return PartialClass(cls.alphabet(), cls.arity(), std::move(flat), rows);
}

} // namespace shatter
