#include <shatter/errors.hpp>
#include <shatter/parallel.hpp>
#include <shatter/words.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace shatter {

std::string to_string(WordKind kind)
{
    switch (kind) {
    case WordKind::Periodic: return "periodic";
    case WordKind::EventuallyPeriodic: return "evper";
    case WordKind::Substitution: return "subst";
    case WordKind::Prefix: return "prefix";
    }
    return "unknown";
}

std::string to_string(GrowthAlternative alt)
{
    switch (alt) {
    case GrowthAlternative::Full: return "a";
    case GrowthAlternative::Bounded: return "b";
    case GrowthAlternative::Undetermined: return "undetermined";
    }
    return "undetermined";
}

WordSpec WordSpec::periodic(unsigned r, std::vector<Symbol> cycle)
{
    WordSpec w;
    w.kind = WordKind::Periodic;
    w.r = r;
    w.cycle = std::move(cycle);
    w.validate();
    return w;
}

WordSpec WordSpec::eventually_periodic(unsigned r, std::vector<Symbol> preperiod, std::vector<Symbol> cycle)
{
    WordSpec w;
    w.kind = WordKind::EventuallyPeriodic;
    w.r = r;
    w.preperiod = std::move(preperiod);
    w.cycle = std::move(cycle);
    w.validate();
    return w;
}

WordSpec WordSpec::substitution(unsigned r, std::map<Symbol, std::vector<Symbol>> rules, std::vector<Symbol> seed,
                                std::size_t depth)
{
    WordSpec w;
    w.kind = WordKind::Substitution;
    w.r = r;
    w.rules = std::move(rules);
    w.seed = std::move(seed);
    w.depth = depth;
    w.validate();
    return w;
}

WordSpec WordSpec::explicit_prefix(unsigned r, std::vector<Symbol> prefix)
{
    WordSpec w;
    w.kind = WordKind::Prefix;
    w.r = r;
    w.prefix = std::move(prefix);
    w.validate();
    return w;
}

void WordSpec::validate() const
{
    if (r < 2 || r > kMaxAlphabet) throw ValidationError("word alphabet size must be in [2, 64]");
    auto check_letters = [&](const std::vector<Symbol>& letters, const char* what) {
        for (auto s : letters)
            if (s < 1 || s > r)
                throw ValidationError(std::string(what) + " uses letter " + std::to_string(s) + " outside 1.."
                                      + std::to_string(r));
    };
    switch (kind) {
    case WordKind::Periodic:
    case WordKind::EventuallyPeriodic:
        if (cycle.empty()) throw ValidationError("periodic word needs a nonempty cycle");
        check_letters(cycle, "cycle");
        check_letters(preperiod, "preperiod");
        if (kind == WordKind::Periodic && !preperiod.empty())
            throw ValidationError("a purely periodic word has no preperiod");
        break;
    case WordKind::Substitution:
        if (seed.empty()) throw ValidationError("substitution needs a nonempty seed");
        check_letters(seed, "seed");
        for (const auto& [letter, image] : rules) {
            if (letter < 1 || letter > r) throw ValidationError("rule for letter outside the alphabet");
            if (image.empty())
                throw ValidationError("rule for letter " + std::to_string(letter) + " is erasing");
            check_letters(image, "rule image");
        }
        break;
    case WordKind::Prefix:
        if (prefix.empty()) throw ValidationError("explicit prefix must be nonempty");
        check_letters(prefix, "prefix");
        break;
    }
}

std::size_t shift_classes(const WordSpec& word)
{
    if (!word.is_eventually_periodic()) throw ArgumentError("shift classes are defined for periodic words only");
    return word.preperiod.size() + word.cycle.size();
}

namespace {

constexpr std::size_t kSubstitutionLimit = std::size_t{1} << 24;

std::vector<Symbol> expand(const WordSpec& word)
{
    std::vector<Symbol> current = word.seed;
    for (std::size_t round = 0; round < word.depth; ++round) {
        std::vector<Symbol> next;
        for (auto s : current) {
            auto it = word.rules.find(s);
            if (it == word.rules.end())
                throw ValidationError("substitution has no rule for letter " + std::to_string(s));
            next.insert(next.end(), it->second.begin(), it->second.end());
            if (next.size() > kSubstitutionLimit)
                throw ResourceError("substitution expansion exceeds 2^24 letters", "max_letters", kSubstitutionLimit);
        }
        current = std::move(next);
    }
    return current;
}

} // namespace

std::size_t available_length(const WordSpec& word)
{
    switch (word.kind) {
    case WordKind::Periodic:
    case WordKind::EventuallyPeriodic: return std::numeric_limits<std::size_t>::max();
    case WordKind::Substitution: return expand(word).size();
    case WordKind::Prefix: return word.prefix.size();
    }
    return 0;
}

std::vector<Symbol> generate(const WordSpec& word, std::size_t length)
{
    word.validate();
    std::vector<Symbol> out;
    switch (word.kind) {
    case WordKind::Periodic:
    case WordKind::EventuallyPeriodic: {
        out.reserve(length);
        const auto q = word.preperiod.size(), p = word.cycle.size();
        for (std::size_t m = 0; m < length; ++m)
            out.push_back(m < q ? word.preperiod[m] : word.cycle[(m - q) % p]);
        return out;
    }
    case WordKind::Substitution: out = expand(word); break;
    case WordKind::Prefix: out = word.prefix; break;
    }
    if (out.size() > length) out.resize(length);
    return out;
}

namespace {

void check_offsets(std::span<const std::size_t> offsets)
{
    if (offsets.empty()) throw ArgumentError("index set must be nonempty");
    for (std::size_t i = 1; i < offsets.size(); ++i)
        if (offsets[i] <= offsets[i - 1]) throw ArgumentError("index set offsets must be strictly increasing");
}

std::size_t saturating_pow(std::size_t base, std::size_t exp)
{
    std::size_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (v > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
        v *= base;
    }
    return v;
}

// Number of distinct patterns along `offsets` over shifts 0..shifts-1 of `letters`.
std::size_t count_patterns(const std::vector<Symbol>& letters, std::span<const std::size_t> offsets, std::size_t shifts,
                           unsigned r)
{
    std::vector<std::uint64_t> codes;
    codes.reserve(shifts);
    for (std::size_t m = 0; m < shifts; ++m) {
        std::uint64_t code = 0;
        for (auto s : offsets)
            code = code * r + (letters[m + s] - 1);
        codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    return static_cast<std::size_t>(std::unique(codes.begin(), codes.end()) - codes.begin());
}

} // namespace

PatternTable pattern_count(const WordSpec& word, std::span<const std::size_t> offsets, std::optional<std::size_t> horizon)
{
    word.validate();
    check_offsets(offsets);
    const std::size_t last = offsets.back();

    PatternTable table;
    table.offsets.assign(offsets.begin(), offsets.end());
    std::size_t h;
    if (word.is_eventually_periodic()) {
        const std::size_t sufficient = shift_classes(word) + last;
        h = horizon.value_or(sufficient);
        table.exact = h >= sufficient;
    } else {
        const std::size_t available = available_length(word);
        h = horizon.value_or(available);
        if (h > available) {
            table.truncated = true;
            h = available;
        }
    }
    if (h < last + 1) table.truncated = true;
    table.horizon = h;

    const auto letters = generate(word, h);
    std::set<std::vector<Symbol>> seen;
    for (std::size_t m = 0; m + last < letters.size(); ++m) {
        std::vector<Symbol> pattern;
        pattern.reserve(offsets.size());
        for (auto s : offsets)
            pattern.push_back(letters[m + s]);
        seen.insert(std::move(pattern));
    }
    table.patterns.assign(seen.begin(), seen.end());
    if (table.patterns.size() == saturating_pow(word.r, offsets.size())) table.exact = true;
    return table;
}

PatternComplexity max_pattern_complexity(const WordSpec& word, std::size_t n, const PatternSearchOptions& options)
{
    word.validate();
    if (n == 0) throw ArgumentError("pattern complexity needs n >= 1");
    if (std::pow(static_cast<double>(word.r), static_cast<double>(n)) >= 9.0e18)
        throw ArgumentError("r^n too large for pattern codes");

    PatternComplexity result;
    std::size_t max_offset, shifts;
    std::vector<Symbol> letters;
    const std::size_t full = saturating_pow(word.r, n);
    std::size_t ceiling = full;
    if (word.is_eventually_periodic()) {
        max_offset = std::max(shift_classes(word), n - 1);
        shifts = shift_classes(word);
        letters = generate(word, shifts + max_offset);
        ceiling = std::min(full, shifts);
        result.exact = true;
    } else {
        const std::size_t available = available_length(word);
        if (available < n) throw ArgumentError("word prefix shorter than n");
        max_offset = std::min(options.offset_cap, available - 1);
        max_offset = std::max(max_offset, n - 1);
        letters = generate(word, available);
        shifts = available - max_offset;
        ceiling = std::min(full, available);
    }
    result.max_offset = max_offset;

    // index sets {0} U C with C an (n-1)-subset of 1..max_offset, in lexicographic order
    std::vector<std::size_t> offsets(n);
    for (std::size_t i = 0; i < n; ++i)
        offsets[i] = i;

    // Non-periodic words: a set with small max offset may use more shifts than the fixed window.
    auto count_for = [&](std::span<const std::size_t> s) {
        const std::size_t usable = word.is_eventually_periodic() ? shifts : letters.size() - s.back();
        return count_patterns(letters, s, usable, word.r);
    };

    const std::size_t block = options.threads > 1 ? 4096 : 1;
    bool done = false;
    while (!done) {
        std::vector<std::vector<std::size_t>> batch;
        while (batch.size() < block) {
            if (result.sets_examined + batch.size() >= options.max_sets) {
                result.budget_hit = true;
                done = true;
                break;
            }
            batch.push_back(offsets);
            std::size_t i = n;
            while (i > 1 && offsets[i - 1] == max_offset - (n - i))
                --i;
            if (i <= 1) {
                done = true;
                break;
            }
            ++offsets[i - 1];
            for (std::size_t j = i; j < n; ++j)
                offsets[j] = offsets[j - 1] + 1;
        }
        std::vector<std::size_t> counts(batch.size());
        parallel_for(batch.size(), options.threads, [&](unsigned, std::size_t b) { counts[b] = count_for(batch[b]); });
        for (std::size_t b = 0; b < batch.size(); ++b) {
            ++result.sets_examined;
            if (counts[b] > result.value) {
                result.value = counts[b];
                result.witness = batch[b];
            }
            if (result.value >= ceiling) {
                done = true;
                break;
            }
        }
    }

    if (result.budget_hit && result.value < ceiling) result.exact = false;
    if (result.value == full) result.exact = true;
    if (!word.is_eventually_periodic() && result.value < full) result.exact = false;
    return result;
}

ComplexityProfile complexity_profile(const WordSpec& word, std::size_t up_to, const PatternSearchOptions& options)
{
    ComplexityProfile profile;
    profile.r = word.r;
    profile.exact = true;
    for (std::size_t n = 1; n <= up_to; ++n) {
        auto pc = max_pattern_complexity(word, n, options);
        profile.values.push_back(pc.value);
        profile.exact = profile.exact && pc.exact;
    }
    return profile;
}

Classification classify_profile(const ComplexityProfile& profile)
{
    const auto& p = profile.values;
    const std::size_t N = p.size();
    if (N < 4) throw ArgumentError("classification needs a profile of length at least 4");
    if (p[0] < 1 || p[0] > profile.r) throw InvariantViolation("p*(1) outside [1, r]");
    for (std::size_t i = 1; i < N; ++i) {
        if (p[i] < p[i - 1]) throw InvariantViolation("profile decreases at n = " + std::to_string(i + 1));
        if (p[i] > profile.r * p[i - 1])
            throw InvariantViolation("profile grows by more than r at n = " + std::to_string(i + 1));
    }

    Classification out;
    bool full = true;
    for (std::size_t i = 0; i < N; ++i)
        full = full && p[i] == saturating_pow(profile.r, i + 1);
    if (full) {
        out.ell = profile.r;
        out.alternative = GrowthAlternative::Full;
        out.note = "p*(n) = r^n on the computed range; finite data cannot certify the limit";
        return out;
    }

    // geometric mean of the growth ratios over the second half of the profile
    const std::size_t from = N / 2;
    const double ratio = std::pow(static_cast<double>(p[N - 1]) / static_cast<double>(p[from - 1]),
                                  1.0 / static_cast<double>(N - from));
    out.ell = static_cast<std::size_t>(std::clamp<long>(std::lround(ratio), 1, static_cast<long>(profile.r) - 1));

    bool lower_ok = true;
    double c = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double n = static_cast<double>(i + 1);
        const double base = std::pow(static_cast<double>(out.ell), n);
        if (static_cast<double>(p[i]) < base) lower_ok = false;
        if (i >= 1) c = std::max(c, std::log(static_cast<double>(p[i]) / base) / std::log(n));
    }
    out.exponent = c;
    if (lower_ok) {
        out.alternative = GrowthAlternative::Bounded;
        out.note = "heuristic: ell from tail growth ratios, c fitted on observed n >= 2 only";
    } else {
        out.alternative = GrowthAlternative::Undetermined;
        out.note = "estimated ell violates ell^n <= p*(n) on the observed range";
    }
    if (!profile.exact) out.note += "; profile values are lower bounds, so alternative a is not excluded";
    return out;
}

TotalClass class_from_windows(const WordSpec& word, std::span<const std::size_t> offsets, std::optional<std::size_t> horizon)
{
    auto table = pattern_count(word, offsets, horizon);
    return TotalClass(word.r, offsets.size(), table.patterns);
}

std::vector<Symbol> de_bruijn(unsigned r, std::size_t order)
{
    if (r < 2 || order == 0) throw ArgumentError("de Bruijn sequence needs r >= 2 and order >= 1");
    if (std::pow(static_cast<double>(r), static_cast<double>(order)) > double(std::size_t{1} << 24))
        throw ResourceError("de Bruijn sequence longer than 2^24", "max_letters", std::size_t{1} << 24);

    // concatenation of Lyndon words whose length divides the order, in lexicographic order
    std::vector<Symbol> seq;
    std::vector<unsigned> a(order + 1, 0);
    auto db = [&](auto&& self, std::size_t t, std::size_t p) -> void {
        if (t > order) {
            if (order % p == 0)
                for (std::size_t i = 1; i <= p; ++i)
                    seq.push_back(static_cast<Symbol>(a[i] + 1));
            return;
        }
        a[t] = a[t - p];
        self(self, t + 1, p);
        for (unsigned j = a[t - p] + 1; j < r; ++j) {
            a[t] = j;
            self(self, t + 1, t);
        }
    };
    db(db, 1, 1);
    return seq;
}

WordSpec full_shift_certificate(unsigned r, std::size_t order)
{
    auto seq = de_bruijn(r, order);
    std::vector<Symbol> linear = seq;
    linear.insert(linear.end(), seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(order - 1));
    return WordSpec::explicit_prefix(r, std::move(linear));
}

} // namespace shatter
