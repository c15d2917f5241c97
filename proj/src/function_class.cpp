#include <shatter/errors.hpp>
#include <shatter/function_class.hpp>

#include <algorithm>
#include <numeric>
#include <string>

namespace shatter {

std::vector<std::size_t> mask_indices(IndexMask m)
{
    std::vector<std::size_t> out;
    out.reserve(mask_size(m));
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

IndexMask mask_from_indices(std::span<const std::size_t> indices)
{
    IndexMask m = 0;
    for (auto i : indices) {
        if (i >= kMaxMaskArity)
            throw ArgumentError("index " + std::to_string(i) + " exceeds the 64-coordinate mask limit");
        m |= IndexMask{1} << i;
    }
    return m;
}

namespace {

void check_alphabet(unsigned r)
{
    if (r < 2 || r > kMaxAlphabet)
        throw ArgumentError("alphabet size must be in [2, " + std::to_string(kMaxAlphabet) + "], got " + std::to_string(r));
}

} // namespace

PartialClass::PartialClass(unsigned r, std::size_t n) : r_(r), n_(n)
{
    check_alphabet(r);
}

PartialClass::PartialClass(unsigned r, std::size_t n, const std::vector<std::vector<Symbol>>& members) : r_(r), n_(n)
{
    check_alphabet(r);
    std::vector<Symbol> flat;
    flat.reserve(members.size() * n);
    for (const auto& row : members) {
        if (row.size() != n)
            throw ArgumentError("member of length " + std::to_string(row.size()) + " in a class of arity " + std::to_string(n));
        flat.insert(flat.end(), row.begin(), row.end());
    }
    normalize(std::move(flat), members.size());
}

PartialClass::PartialClass(unsigned r, std::size_t n, std::vector<Symbol> flat, std::size_t rows) : r_(r), n_(n)
{
    check_alphabet(r);
    if (flat.size() != rows * n)
        throw ArgumentError("flat buffer size does not match rows * arity");
    normalize(std::move(flat), rows);
}

void PartialClass::normalize(std::vector<Symbol> flat, std::size_t rows)
{
    for (auto s : flat)
        if (s > r_)
            throw ArgumentError("symbol " + std::to_string(s) + " outside alphabet 1.." + std::to_string(r_));

    if (n_ == 0) {
        count_ = rows ? 1 : 0;
        data_.clear();
        return;
    }

    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto row_of = [&](std::size_t k) { return std::span<const Symbol>(flat.data() + k * n_, n_); };
    auto less = [&](std::size_t a, std::size_t b) {
        auto ra = row_of(a), rb = row_of(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    };
    std::sort(order.begin(), order.end(), less);

    data_.clear();
    data_.reserve(flat.size());
    count_ = 0;
    for (std::size_t idx = 0; idx < rows; ++idx) {
        auto row = row_of(order[idx]);
        if (count_ > 0 && std::equal(row.begin(), row.end(), data_.end() - static_cast<std::ptrdiff_t>(n_)))
            continue;
        data_.insert(data_.end(), row.begin(), row.end());
        ++count_;
    }
}

bool PartialClass::contains(std::span<const Symbol> row) const
{
    if (row.size() != n_) return false;
    if (n_ == 0) return count_ > 0;
    std::size_t lo = 0, hi = count_;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto m = (*this)[mid];
        if (std::lexicographical_compare(m.begin(), m.end(), row.begin(), row.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < count_ && std::ranges::equal((*this)[lo], row);
}

std::vector<std::vector<Symbol>> PartialClass::rows() const
{
    std::vector<std::vector<Symbol>> out;
    out.reserve(count_);
    for (std::size_t k = 0; k < count_; ++k) {
        auto r = (*this)[k];
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

bool PartialClass::is_total() const
{
    return std::find(data_.begin(), data_.end(), kUndefined) == data_.end();
}

TotalClass::TotalClass(unsigned r, std::size_t n, const std::vector<std::vector<Symbol>>& members)
    : TotalClass(PartialClass(r, n, members))
{
}

TotalClass::TotalClass(PartialClass cls) : cls_(std::move(cls))
{
    if (!cls_.is_total())
        throw ArgumentError("total class contains an undefined entry");
}

} // namespace shatter
