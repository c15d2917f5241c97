#pragma once

#include <shatter/function_class.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shatter {

enum class WordKind { Periodic, EventuallyPeriodic, Substitution, Prefix };

std::string to_string(WordKind kind);

/// A one-sided infinite word a_0 a_1 ... over {1..r}, or a finite prefix of one.
/// Offsets are 0-based: a pattern along S reads a_{m+s} for s in S.
struct WordSpec {
    WordKind kind = WordKind::Periodic;
    unsigned r = 2;
    std::vector<Symbol> preperiod;                    // eventually periodic only
    std::vector<Symbol> cycle;                        // (eventually) periodic
    std::map<Symbol, std::vector<Symbol>> rules;      // substitution
    std::vector<Symbol> seed;                         // substitution
    std::size_t depth = 0;                            // substitution expansion rounds
    std::vector<Symbol> prefix;                       // explicit prefix

    static WordSpec periodic(unsigned r, std::vector<Symbol> cycle);
    static WordSpec eventually_periodic(unsigned r, std::vector<Symbol> preperiod, std::vector<Symbol> cycle);
    static WordSpec substitution(unsigned r, std::map<Symbol, std::vector<Symbol>> rules, std::vector<Symbol> seed,
                                 std::size_t depth);
    static WordSpec explicit_prefix(unsigned r, std::vector<Symbol> prefix);

    /// Throws ValidationError: empty cycle or prefix, erasing or missing rules, symbols outside 1..r.
    void validate() const;
    bool is_eventually_periodic() const
    {
        return kind == WordKind::Periodic || kind == WordKind::EventuallyPeriodic;
    }
};

/// Shift classes of an (eventually) periodic word: preperiod + period.
std::size_t shift_classes(const WordSpec& word);

/// The first `length` letters, or fewer when the word description only determines a shorter prefix.
std::vector<Symbol> generate(const WordSpec& word, std::size_t length);

/// Letters available from the word description; SIZE_MAX for (eventually) periodic words.
std::size_t available_length(const WordSpec& word);

/// Distinct patterns (a_{m+s_1}, ..., a_{m+s_n}) for the shifts m with m + max(S) < horizon.
/// `exact` holds when the set provably equals the subshift's pattern set (periodic
/// words with a sufficient horizon, or all r^n patterns present); `truncated` when the
/// requested horizon exceeded the letters the description determines.
struct PatternTable {
    std::vector<std::size_t> offsets;
    std::vector<std::vector<Symbol>> patterns;
    std::size_t horizon = 0;
    bool exact = false;
    bool truncated = false;

    std::size_t count() const { return patterns.size(); }
};

/// Offsets must be strictly increasing. Without a horizon, periodic words use
/// preperiod + period + max(S) and other words use every available letter.
PatternTable pattern_count(const WordSpec& word, std::span<const std::size_t> offsets,
                           std::optional<std::size_t> horizon = std::nullopt);

struct PatternSearchOptions {
    std::size_t offset_cap = 16;       // largest offset tried for non-periodic words
    std::size_t max_sets = 5'000'000;  // index sets examined before giving up
    unsigned threads = 1;
};

/// p*(n) with a maximising index set (s_1 = 0, which loses nothing since shifting S
/// can only drop patterns). Exact for periodic words, where offsets up to
/// max(preperiod + period, n - 1) suffice; otherwise a lower bound unless it reaches r^n.
struct PatternComplexity {
    std::size_t value = 0;
    std::vector<std::size_t> witness;
    bool exact = false;
    bool budget_hit = false;
    std::size_t max_offset = 0;
    std::size_t sets_examined = 0;
};

PatternComplexity max_pattern_complexity(const WordSpec& word, std::size_t n, const PatternSearchOptions& options = {});

struct ComplexityProfile {
    unsigned r = 2;
    std::vector<std::size_t> values; // values[n-1] = p*(n)
    bool exact = false;
};

ComplexityProfile complexity_profile(const WordSpec& word, std::size_t up_to, const PatternSearchOptions& options = {});

enum class GrowthAlternative { Full, Bounded, Undetermined };

std::string to_string(GrowthAlternative alt);

/// Finite-data reading of the profile: Full when p*(n) = r^n throughout; otherwise
/// ell is the rounded tail growth ratio and Bounded reports the smallest c with
/// ell^n <= p*(n) <= n^c ell^n on the observed range. Heuristic by nature.
struct Classification {
    std::size_t ell = 1;
    GrowthAlternative alternative = GrowthAlternative::Undetermined;
    double exponent = 0.0;
    std::string note;
};

/// Requires at least 4 values; throws InvariantViolation for a profile that is not
/// nondecreasing or grows by more than a factor r in one step.
Classification classify_profile(const ComplexityProfile& profile);

/// The window patterns along S as a total class over [r]^{|S|}.
TotalClass class_from_windows(const WordSpec& word, std::span<const std::size_t> offsets,
                              std::optional<std::size_t> horizon = std::nullopt);

/// A cyclic de Bruijn sequence of the given order over {1..r}: length r^order,
/// every word of that length appears exactly once cyclically.
std::vector<Symbol> de_bruijn(unsigned r, std::size_t order);

/// Explicit-prefix word containing every word of length <= order as a factor.
WordSpec full_shift_certificate(unsigned r, std::size_t order);

} // namespace shatter
