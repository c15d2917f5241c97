#include <shatter/bounds.hpp>
#include <shatter/errors.hpp>
#include <shatter/graph.hpp>
#include <shatter/natarajan.hpp>
#include <shatter/net.hpp>
#include <shatter/parallel.hpp>
#include <shatter/random_instances.hpp>
#include <shatter/shattering.hpp>
#include <shatter/suite.hpp>
#include <shatter/words.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

namespace shatter {

namespace {

// A trial returns a failure message, or nothing when the property held.
// `Skip` marks instances outside the exact-search budget.
struct Skip {};
using Trial = std::function<std::optional<std::string>(Rng&)>;

struct Check {
    std::string module;
    std::string name;
    Trial trial;
};

std::string fail(const std::string& what, const PartialClass& cls)
{
    std::ostringstream out;
    out << what << " (r=" << cls.alphabet() << " n=" << cls.arity() << " members=" << cls.size() << ")";
    return out.str();
}

PartialClass sample_class(Rng& rng, std::size_t max_n, std::size_t max_members)
{
    std::uniform_int_distribution<std::size_t> arity(1, max_n), members(1, max_members);
    std::uniform_int_distribution<unsigned> alphabet(2, 4);
    const double rates[] = {0.0, 0.2, 0.4};
    const auto n = arity(rng);
    const auto r = alphabet(rng);
    const auto m = members(rng);
    return random_partial_class(rng, n, r, m, rates[std::uniform_int_distribution<int>(0, 2)(rng)]);
}

TotalClass sample_total(Rng& rng, std::size_t max_n, std::size_t max_members)
{
    std::uniform_int_distribution<std::size_t> arity(1, max_n), members(1, max_members);
    std::uniform_int_distribution<unsigned> alphabet(2, 4);
    const auto n = arity(rng);
    const auto r = alphabet(rng);
    return random_total_class(rng, n, r, members(rng));
}

std::vector<Check> class_core_checks()
{
    std::vector<Check> checks;
    checks.push_back({"class-core", "downward-closure", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          auto sets = shattered_sets(h);
                          const IndexMask all = (IndexMask{1} << h.arity()) - 1;
                          for (IndexMask s = 0;; s = (s - all) & all) {
                              const bool listed = std::binary_search(sets.begin(), sets.end(), s, [](auto a, auto b) {
                                  return std::pair(mask_size(a), a) < std::pair(mask_size(b), b);
                              });
                              if (listed != is_shattered(h, s)) return fail("levelwise search disagrees with direct test", h);
                              if (listed)
                                  for (IndexMask e = s; e; e &= e - 1)
                                      if (!is_shattered(h, s & ~(e & -e))) return fail("shattered set has unshattered subset", h);
                              if (s == all) break;
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"class-core", "strength-at-most-binomial-sum", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          const auto vc = vc_dimension(h);
                          if (!vc) return std::nullopt;
                          if (shattering_strength(h) > binomial_sum(static_cast<std::int64_t>(h.arity()),
                                                                    static_cast<std::int64_t>(*vc)))
                              return fail("s(H) exceeds binom(n, <= VC)", h);
                          return std::nullopt;
                      }});
    checks.push_back({"class-core", "fixed-coordinate-strength-sum", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          const auto s = shattering_strength(h);
                          for (std::size_t i = 0; i < h.arity(); ++i) {
                              std::uint64_t sum = 0;
                              for (unsigned j = 1; j <= h.alphabet(); ++j)
                                  sum += shattering_strength(fix_coordinate(h, i, static_cast<Symbol>(j)));
                              if ((h.alphabet() - 1) * s < sum) return fail("(r-1) s(H) < sum_j s(H_{i->j})", h);
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"class-core", "minority-shrinks-strength", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          const auto s = shattering_strength(h);
                          for (std::size_t i = 0; i < h.arity(); ++i) {
                              const auto j = minority_value(h, i);
                              const auto sj = shattering_strength(fix_coordinate(h, i, j));
                              if (h.alphabet() * sj > (h.alphabet() - 1) * s)
                                  return fail("s(H_{i->M(i)}) > (r-1)/r s(H)", h);
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"class-core", "restriction-composes", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          std::vector<std::size_t> outer, positions, inner;
                          std::bernoulli_distribution coin(0.6);
                          for (std::size_t i = 0; i < h.arity(); ++i)
                              if (coin(rng)) outer.push_back(i);
                          for (std::size_t p = 0; p < outer.size(); ++p)
                              if (coin(rng)) {
                                  positions.push_back(p);
                                  inner.push_back(outer[p]);
                              }
                          if (restrict(restrict(h, outer), positions) != restrict(h, inner))
                              return fail("restriction of a restriction differs", h);
                          return std::nullopt;
                      }});
    return checks;
}

std::vector<Check> net_checks(unsigned threads)
{
    std::vector<Check> checks;
    checks.push_back({"net-builder", "net-verifies-and-size-bound", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          auto net = build_net(h);
                          if (!verify_net(h, net.carrier)) return fail("build_net output is not a net", h);
                          const auto s = shattering_strength(h);
                          const auto r = static_cast<std::int64_t>(h.alphabet());
                          const auto t = floor_log_ratio(s, r, r - 1);
                          if (net.carrier.size() > binomial_sum(static_cast<std::int64_t>(h.arity()), t))
                              return fail("net larger than binom(n, <= log s(H))", h);
                          for (const auto& tr : net.traces)
                              if (static_cast<std::int64_t>(mask_size(tr.branch_set)) > t)
                                  return fail("branch set larger than log s(H)", h);
                          return std::nullopt;
                      }});
    checks.push_back({"net-builder", "replay-from-branch-set", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          auto net = build_net(h);
                          for (const auto& tr : net.traces)
                              if (replay_net_function(h, tr.branch_set) != tr.function)
                                  return fail("replay from the branch set gives a different function", h);
                          return std::nullopt;
                      }});
    checks.push_back({"net-builder", "deterministic-across-threads", [threads](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 8, 30);
                          auto a = build_net(h, 1);
                          auto b = build_net(h, std::max(threads, 3u));
                          if (a.carrier != b.carrier) return fail("net differs between schedules", h);
                          for (std::size_t m = 0; m < a.traces.size(); ++m)
                              if (a.traces[m].function != b.traces[m].function
                                  || a.traces[m].branch_set != b.traces[m].branch_set)
                                  return fail("trace differs between schedules", h);
                          return std::nullopt;
                      }});
    checks.push_back({"net-builder", "exact-cover-below-net-and-bound", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_class(rng, 6, 20);
                          auto net = build_net(h);
                          CoverResult cover = [&] {
                              try {
                                  return covering_number_exact(h);
                              } catch (const ResourceError&) {
                                  throw Skip{};
                              }
                          }();
                          if (!verify_net(h, cover.witness)) return fail("cover witness is not a net", h);
                          if (cover.value > net.carrier.size()) return fail("exact cover larger than the built net", h);
                          const auto d = std::max<std::int64_t>(1, static_cast<std::int64_t>(*vc_dimension(h)));
                          const auto bound = comb_bound(static_cast<std::int64_t>(h.arity()), h.alphabet(), d);
                          if (cover.value > bound.rhs_value) return fail("C(H) exceeds the covering bound", h);
                          return std::nullopt;
                      }});
    return checks;
}

std::vector<Check> natarajan_checks()
{
    std::vector<Check> checks;
    checks.push_back({"natarajan-dim", "downward-closure", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_total(rng, 6, 40);
                          const unsigned k = std::uniform_int_distribution<unsigned>(2, h.alphabet())(rng);
                          const IndexMask all = (IndexMask{1} << h.arity()) - 1;
                          for (IndexMask s = 1; s <= all; ++s)
                              if (is_k_shattered(h, s, k))
                                  for (IndexMask e = s; e; e &= e - 1)
                                      if (!is_k_shattered(h, s & ~(e & -e), k))
                                          return fail("k-shattered set with a non-shattered subset", h.as_partial());
                          return std::nullopt;
                      }});
    checks.push_back({"natarajan-dim", "monotone-in-k", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_total(rng, 7, 60);
                          for (unsigned k = 1; k < h.alphabet(); ++k)
                              if (natarajan_dim(h, k + 1) > natarajan_dim(h, k))
                                  return fail("dim_{k+1} > dim_k", h.as_partial());
                          return std::nullopt;
                      }});
    checks.push_back({"natarajan-dim", "bound-soundness", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_total(rng, 8, 80);
                          const auto n = static_cast<std::int64_t>(h.arity());
                          for (unsigned k = 2; k <= h.alphabet(); ++k) {
                              const auto d = std::max<std::int64_t>(1, static_cast<std::int64_t>(natarajan_dim(h, k)));
                              if (h.size() > natarajan_bound(n, h.alphabet(), k, d).rhs_value)
                                  return fail("|H| exceeds the Natarajan bound", h.as_partial());
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"natarajan-dim", "branching-bijective-and-bounded", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_total(rng, 7, 60);
                          for (unsigned k = 2; k <= h.alphabet(); ++k) {
                              auto trace = branch_construct(h, k);
                              for (const auto& stage : trace.stages)
                                  if (stage.size() != h.size()) return fail("stage size changed", h.as_partial());
                              if (trace.max_c_count() > natarajan_dim(h, k))
                                  return fail("final image has more c-symbols than dim_k", h.as_partial());
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"natarajan-dim", "proof-partition-terms", [](Rng& rng) -> std::optional<std::string> {
                          auto h = sample_total(rng, 7, 60);
                          const auto n = static_cast<std::int64_t>(h.arity());
                          for (unsigned k = 2; k <= h.alphabet(); ++k) {
                              const auto dim = natarajan_dim(h, k);
                              for (std::size_t d = std::max<std::size_t>(dim, 1); d <= h.arity(); ++d) {
                                  auto part = proof_partition(branch_construct(h, k), d);
                                  for (std::size_t i = 0; i <= d; ++i)
                                      if (part.part_sizes[i] > natarajan_term(n, h.alphabet(), k, static_cast<std::int64_t>(d),
                                                                              static_cast<std::int64_t>(i)))
                                          return fail("|G_i| exceeds its term of the bound", h.as_partial());
                              }
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"natarajan-dim", "sauer-shelah-identity", [](Rng& rng) -> std::optional<std::string> {
                          const auto n = std::uniform_int_distribution<std::int64_t>(0, 30)(rng);
                          const auto d = std::uniform_int_distribution<std::int64_t>(0, n)(rng);
                          BigInt lhs = 0;
                          for (std::int64_t i = 0; i <= d; ++i)
                              lhs += binomial(n - i - 1, d - i) * ipow(2, i);
                          if (lhs != binomial_sum(n, d))
                              return "identity fails at n=" + std::to_string(n) + " d=" + std::to_string(d);
                          return std::nullopt;
                      }});
    return checks;
}

std::vector<Check> graph_checks()
{
    std::vector<Check> checks;
    auto sample = [](Rng& rng) {
        const auto v = std::uniform_int_distribution<std::size_t>(2, 7)(rng);
        auto g = random_graph(rng, v, std::uniform_real_distribution<double>(0.2, 0.7)(rng));
        if (g.edges.empty() || g.edges.size() > 16) throw Skip{};
        auto bp = biclique_partition_number(g);
        return BicliquePartitionedGraph{g, bp.parts};
    };
    checks.push_back({"graph-bridge", "class-has-vc-at-most-one-and-cover-at-least-chi",
                      [sample](Rng& rng) -> std::optional<std::string> {
                          auto g = sample(rng);
                          auto built = class_from_partition(g);
                          if (vc_dimension(built.cls).value_or(0) > 1) return fail("VC(H) > 1", built.cls);
                          const auto chi = chromatic_number(g.graph).colors;
                          auto cover = covering_number_exact(built.cls);
                          if (cover.value < chi) return fail("C(H) < chi(G)", built.cls);
                          // colouring argument: colour v by the net member covering h_v
                          std::vector<std::size_t> colors;
                          for (std::size_t v = 0; v < g.graph.vertices; ++v)
                              colors.push_back(covering_function(built.cls[built.member_of_vertex[v]], cover.witness));
                          if (!is_proper_coloring(g.graph, colors)) return fail("net colouring is not proper", built.cls);
                          return std::nullopt;
                      }});
    checks.push_back({"graph-bridge", "no-pair-shattered", [sample](Rng& rng) -> std::optional<std::string> {
                          auto g = sample(rng);
                          auto built = class_from_partition(g);
                          for (std::size_t i = 0; i < built.cls.arity(); ++i)
                              for (std::size_t j = i + 1; j < built.cls.arity(); ++j)
                                  if (is_shattered(built.cls, (IndexMask{1} << i) | (IndexMask{1} << j)))
                                      return fail("a pair of coordinates is shattered", built.cls);
                          return std::nullopt;
                      }});
    checks.push_back({"graph-bridge", "corrupted-witness-detected", [sample](Rng& rng) -> std::optional<std::string> {
                          auto g = sample(rng);
                          validate(g);
                          auto p = std::uniform_int_distribution<std::size_t>(0, g.parts.size() - 1)(rng);
                          auto broken = g;
                          if (std::bernoulli_distribution(0.5)(rng)) {
                              auto& side = broken.parts[p].left;
                              side.erase(side.begin() + static_cast<std::ptrdiff_t>(
                                             std::uniform_int_distribution<std::size_t>(0, side.size() - 1)(rng)));
                          } else {
                              std::vector<Vertex> outside;
                              for (Vertex v = 0; v < g.graph.vertices; ++v)
                                  if (std::find(g.parts[p].left.begin(), g.parts[p].left.end(), v) == g.parts[p].left.end()
                                      && std::find(g.parts[p].right.begin(), g.parts[p].right.end(), v)
                                             == g.parts[p].right.end())
                                      outside.push_back(v);
                              if (outside.empty()) throw Skip{};
                              broken.parts[p].left.push_back(
                                  outside[std::uniform_int_distribution<std::size_t>(0, outside.size() - 1)(rng)]);
                          }
                          try {
                              validate(broken);
                          } catch (const ValidationError&) {
                              return std::nullopt;
                          }
                          return std::string("corrupted partition passed validation");
                      }});
    return checks;
}

std::vector<Check> word_checks()
{
    std::vector<Check> checks;
    checks.push_back({"symbolic-dyn", "profile-monotone-and-period-bounded", [](Rng& rng) -> std::optional<std::string> {
                          const unsigned r = std::uniform_int_distribution<unsigned>(2, 3)(rng);
                          auto w = random_periodic_word(rng, r, 6);
                          auto profile = complexity_profile(w, 5);
                          for (std::size_t i = 0; i < profile.values.size(); ++i) {
                              if (profile.values[i] > w.cycle.size()) return std::string("p*(n) exceeds the period");
                              if (i && (profile.values[i] < profile.values[i - 1]
                                        || profile.values[i] > r * profile.values[i - 1]))
                                  return std::string("profile not monotone or grows faster than r");
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"symbolic-dyn", "contiguous-window-at-most-pstar", [](Rng& rng) -> std::optional<std::string> {
                          auto w = random_periodic_word(rng, 3, 7);
                          for (std::size_t n = 1; n <= 5; ++n) {
                              std::vector<std::size_t> window(n);
                              for (std::size_t i = 0; i < n; ++i)
                                  window[i] = i;
                              if (pattern_count(w, window).count() > max_pattern_complexity(w, n).value)
                                  return std::string("contiguous window beats p*(n)");
                          }
                          return std::nullopt;
                      }});
    checks.push_back({"symbolic-dyn", "window-class-matches-pattern-count", [](Rng& rng) -> std::optional<std::string> {
                          auto w = random_periodic_word(rng, 3, 7);
                          std::vector<std::size_t> offsets;
                          std::size_t next = 0;
                          for (int i = 0; i < 4; ++i) {
                              next += std::uniform_int_distribution<std::size_t>(1, 3)(rng);
                              offsets.push_back(next);
                          }
                          if (class_from_windows(w, offsets).size() != pattern_count(w, offsets).count())
                              return std::string("window class size differs from pattern count");
                          return std::nullopt;
                      }});
    checks.push_back({"symbolic-dyn", "full-shift-certificate", [](Rng& rng) -> std::optional<std::string> {
                          const unsigned r = std::uniform_int_distribution<unsigned>(2, 3)(rng);
                          const std::size_t order = r == 2 ? 5 : 3;
                          auto w = full_shift_certificate(r, order);
                          std::size_t full = 1;
                          for (std::size_t n = 1; n <= order; ++n) {
                              full *= r;
                              if (max_pattern_complexity(w, n).value != full) return std::string("p*(n) != r^n");
                          }
                          return std::nullopt;
                      }});
    return checks;
}

} // namespace

std::vector<CheckOutcome> run_verify_suite(const SuiteOptions& options)
{
    std::vector<Check> checks;
    for (auto&& group : {class_core_checks(), net_checks(options.threads), natarajan_checks(), graph_checks(), word_checks()})
        checks.insert(checks.end(), group.begin(), group.end());

    std::vector<CheckOutcome> outcomes;
    for (std::size_t c = 0; c < checks.size(); ++c) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<std::optional<std::string>> results(options.trials);
        std::vector<char> skipped(options.trials, 0);
        parallel_for(options.trials, options.threads, [&](unsigned, std::size_t t) {
            auto rng = make_rng(options.seed, c, t);
            try {
                results[t] = checks[c].trial(rng);
            } catch (const Skip&) {
                skipped[t] = 1;
            } catch (const std::exception& e) {
                results[t] = std::string("exception: ") + e.what();
            }
        });
        CheckOutcome out;
        out.module = checks[c].module;
        out.name = checks[c].name;
        out.trials = options.trials;
        for (std::size_t t = 0; t < options.trials; ++t) {
            out.skipped += static_cast<std::size_t>(skipped[t]);
            if (results[t]) {
                if (out.failures++ == 0) out.first_failure = "trial " + std::to_string(t) + ": " + *results[t];
            }
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

} // namespace shatter
