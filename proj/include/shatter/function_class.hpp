#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shatter {

/// Alphabet value 1..r, or kUndefined for a coordinate where a partial function is undefined.
using Symbol = std::uint8_t;
inline constexpr Symbol kUndefined = 0;
inline constexpr unsigned kMaxAlphabet = 64;

/// Subset of a ground set [n] (0-based bit i = coordinate i). Shattering searches need n <= 64.
using IndexMask = std::uint64_t;
inline constexpr std::size_t kMaxMaskArity = 64;

inline std::size_t mask_size(IndexMask m) { return static_cast<std::size_t>(std::popcount(m)); }
std::vector<std::size_t> mask_indices(IndexMask m);
IndexMask mask_from_indices(std::span<const std::size_t> indices);

/// A finite set of partial functions [n] -> {1..r, undefined}.
///
/// Members are stored as a dense row-major buffer, sorted lexicographically
/// with duplicates removed, so equality and iteration order are canonical.
class PartialClass {
public:
    PartialClass(unsigned r, std::size_t n);
    PartialClass(unsigned r, std::size_t n, const std::vector<std::vector<Symbol>>& members);
    /// `flat` holds `flat.size() / n` rows back to back (n > 0), or `rows` copies of the empty row (n == 0).
    PartialClass(unsigned r, std::size_t n, std::vector<Symbol> flat, std::size_t rows);

    unsigned alphabet() const noexcept { return r_; }
    std::size_t arity() const noexcept { return n_; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    std::span<const Symbol> operator[](std::size_t k) const
    {
        return {data_.data() + k * n_, n_};
    }

    bool contains(std::span<const Symbol> row) const;
    std::vector<std::vector<Symbol>> rows() const;
    bool is_total() const;

    friend bool operator==(const PartialClass&, const PartialClass&) = default;

private:
    void normalize(std::vector<Symbol> flat, std::size_t rows);

    unsigned r_;
    std::size_t n_;
    std::size_t count_ = 0;
    std::vector<Symbol> data_;
};

/// A set of total functions [n] -> {1..r}; a PartialClass without undefined entries.
class TotalClass {
public:
    TotalClass(unsigned r, std::size_t n) : cls_(r, n) {}
    TotalClass(unsigned r, std::size_t n, const std::vector<std::vector<Symbol>>& members);
    explicit TotalClass(PartialClass cls);

    unsigned alphabet() const noexcept { return cls_.alphabet(); }
    std::size_t arity() const noexcept { return cls_.arity(); }
    std::size_t size() const noexcept { return cls_.size(); }
    bool empty() const noexcept { return cls_.empty(); }
    std::span<const Symbol> operator[](std::size_t k) const { return cls_[k]; }
    bool contains(std::span<const Symbol> row) const { return cls_.contains(row); }
    std::vector<std::vector<Symbol>> rows() const { return cls_.rows(); }

    const PartialClass& as_partial() const noexcept { return cls_; }

    friend bool operator==(const TotalClass&, const TotalClass&) = default;

private:
    PartialClass cls_;
};

} // namespace shatter
