#pragma once

#include <shatter/function_class.hpp>
#include <shatter/graph.hpp>
#include <shatter/natarajan.hpp>
#include <shatter/words.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace shatter::io {

/// Whole file as a string; ParseError when it cannot be opened.
std::string read_file(const std::string& path);

/// Class files:
///
///     r=3 n=2
///     1,2
///     *,3
///
/// One member per line, `*` for undefined. Blank lines and `#` comments are ignored.
/// An arity-0 member is written `()`. format_class emits members in canonical order,
/// so parse/format round-trips byte for byte on its own output.
PartialClass parse_class(std::string_view text);
std::string format_class(const PartialClass& cls);

/// Graph files: header `v=<int> e=<int>` (plus `r=<int>` for hypergraphs), then e edge
/// lines of 0-based vertex ids, then optional part lines. Graph parts are written
/// `part: L={0} R={1,2}`; hypergraph parts `part: S1={0} S2={1} S3={2,3}`.
PartitionedHypergraph parse_graph(std::string_view text);
std::string format_graph(const PartitionedHypergraph& g);
BicliquePartitionedGraph to_biclique_graph(const PartitionedHypergraph& g);

/// Word files: `key=value` lines with kind=periodic|evper|subst|prefix, r=<int> and
/// cycle=, preperiod=, rules=1->12,2->1, seed=, depth=, prefix= as the kind requires.
/// Letter strings are digit runs ("112") or comma-separated numbers when r > 9.
WordSpec parse_word(std::string_view text);
std::string format_word(const WordSpec& word);

/// Stage dumps of the branching construction: the class format with `b<j>` and
/// `c{a,b,...}` tokens and a header `r=<r> n=<n> k=<k> stage=<i>`.
std::string format_stage(const BranchTrace& trace, std::size_t stage);
std::vector<StageRow> parse_stage(std::string_view text);

/// "1,3,5" or "{1,3,5}" -> indices; used by the CLI for index sets.
std::vector<std::size_t> parse_index_list(std::string_view text);

} // namespace shatter::io
