#include <shatter/bounds.hpp>
#include <shatter/cli.hpp>
#include <shatter/errors.hpp>
#include <shatter/graph.hpp>
#include <shatter/io.hpp>
#include <shatter/natarajan.hpp>
#include <shatter/net.hpp>
#include <shatter/random_instances.hpp>
#include <shatter/shattering.hpp>
#include <shatter/suite.hpp>
#include <shatter/version.hpp>
#include <shatter/words.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

namespace shatter::cli {

namespace {

using json = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    std::string subcommand;
    std::string input_hash;
    json parameters = json::object();
    json result = json::object();
    json checks = json::array();
    std::optional<Table> table;
    int exit_code = kOk;

    void check(const std::string& name, bool passed, const std::string& detail = {})
    {
        json c{{"name", name}, {"passed", passed}};
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(std::move(c));
        if (!passed && exit_code == kOk) exit_code = kValidation;
    }
};

struct Options {
    bool csv = false;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::optional<std::size_t> budget;
};

std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

json big(const BigInt& v)
{
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
    return v.str();
}

std::string symbol_text(Symbol s) { return s == kUndefined ? "*" : std::to_string(s); }

std::string row_text(std::span<const Symbol> row)
{
    if (row.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += symbol_text(row[i]);
    }
    return out;
}

std::string word_text(std::span<const Symbol> w, unsigned r)
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (r > 9 && i) out += ',';
        out += std::to_string(w[i]);
    }
    return out;
}

json class_rows(const PartialClass& cls)
{
    json rows = json::array();
    for (std::size_t m = 0; m < cls.size(); ++m)
        rows.push_back(row_text(cls[m]));
    return rows;
}

json index_list(IndexMask mask) { return mask_indices(mask); }

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write '" + path + "'");
    out << text;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Report& report, const Options& opt, double wall_ms, std::ostream& out)
{
    if (opt.csv) {
        auto line = [&](const std::vector<std::string>& fields) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                out << (i ? "," : "") << csv_field(fields[i]);
            out << '\n';
        };
        if (report.table) {
            line(report.table->header);
            for (const auto& row : report.table->rows)
                line(row);
        } else {
            line({"key", "value"});
            for (const auto& [key, value] : report.result.items())
                line({key, scalar_text(value)});
        }
        return;
    }
    json doc{{"subcommand", report.subcommand},
             {"version", kVersion},
             {"input_hash", report.input_hash},
             {"parameters", report.parameters},
             {"result", report.result},
             {"checks", report.checks},
             {"wall_time_ms", wall_ms}};
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------- loaders

struct Loaded {
    std::string text;
    std::string path;
};

Loaded load(const std::string& path) { return {io::read_file(path), path}; }

TotalClass require_total(const PartialClass& cls)
{
    if (!cls.is_total()) throw ValidationError("this command needs a total class (no '*')");
    return TotalClass(cls);
}

class Budgets {
public:
    explicit Budgets(std::optional<std::size_t> nodes) : nodes_(nodes) {}

    CoverBudget cover() const
    {
        CoverBudget b;
        if (nodes_) b.max_nodes = *nodes_;
        return b;
    }
    ChromaticBudget chromatic() const
    {
        ChromaticBudget b;
        if (nodes_) b.max_nodes = *nodes_;
        return b;
    }
    BicliqueBudget biclique() const
    {
        BicliqueBudget b;
        if (nodes_) b.max_nodes = *nodes_;
        return b;
    }
    PatternSearchOptions patterns(unsigned threads, std::size_t offset_cap) const
    {
        PatternSearchOptions o;
        if (nodes_) o.max_sets = *nodes_;
        o.threads = threads;
        o.offset_cap = offset_cap;
        return o;
    }

private:
    std::optional<std::size_t> nodes_;
};

json bound_json(const BoundReport& b)
{
    json j{{"formula", to_string(b.formula)}, {"n", b.n}, {"r", b.r}, {"d", b.d}};
    if (b.formula == BoundFormula::Natarajan) j["k"] = b.k;
    if (b.formula != BoundFormula::Natarajan) j["threshold"] = b.threshold;
    if (b.threshold_floor) j["threshold_floor"] = *b.threshold_floor;
    j["rhs_value"] = big(b.rhs_value);
    j["rhs_log2"] = b.rhs_log2;
    j["exact"] = b.exact;
    j["notes"] = b.notes;
    return j;
}

// ---------------------------------------------------------------- net / cover / bound

Report net_build(const std::string& file, const std::string& emit_path, const Options& opt)
{
    Report rep;
    rep.subcommand = "net build";
    const auto in = load(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}, {"threads", opt.threads}};
    const auto cls = io::parse_class(in.text);
    const auto net = build_net(cls, opt.threads);

    rep.result["members"] = cls.size();
    rep.result["value"] = net.carrier.size();
    rep.result["strength"] = shattering_strength(cls);
    const auto vc = vc_dimension(cls);
    rep.result["vc"] = vc ? json(*vc) : json("empty");
    if (cls.alphabet() >= 2 && !cls.empty()) {
        const auto r = static_cast<std::int64_t>(cls.alphabet());
        const auto t = floor_log_ratio(shattering_strength(cls), r, r - 1);
        const auto bound = binomial_sum(static_cast<std::int64_t>(cls.arity()), t);
        rep.result["threshold_floor"] = t;
        rep.result["bound"] = big(bound);
        rep.check("size within binomial bound", net.carrier.size() <= bound);
    }
    rep.result["witness"] = class_rows(net.carrier.as_partial());
    json traces = json::array();
    for (const auto& tr : net.traces)
        traces.push_back({{"member", row_text(cls[tr.member])},
                          {"function", row_text(tr.function)},
                          {"branch_set", index_list(tr.branch_set)}});
    rep.result["traces"] = traces;
    rep.check("carrier is a net", verify_net(cls, net.carrier));
    bool replay = true;
    for (const auto& tr : net.traces)
        replay = replay && replay_net_function(cls, tr.branch_set) == tr.function;
    rep.check("replay from branch sets", replay);
    if (!emit_path.empty()) write_file(emit_path, io::format_class(net.carrier.as_partial()));

    rep.table = Table{{"member", "function", "branch_set"}, {}};
    for (const auto& tr : net.traces) {
        std::string bs;
        for (auto i : mask_indices(tr.branch_set))
            bs += (bs.empty() ? "" : " ") + std::to_string(i);
        rep.table->rows.push_back({row_text(cls[tr.member]), row_text(tr.function), bs});
    }
    return rep;
}

Report net_verify(const std::string& file, const std::string& net_file)
{
    Report rep;
    rep.subcommand = "net verify";
    const auto in = load(file);
    const auto nf = load(net_file);
    rep.input_hash = sha256_hex(in.text + '\0' + nf.text);
    rep.parameters = {{"file", file}, {"net", net_file}};
    const auto cls = io::parse_class(in.text);
    const auto candidate = require_total(io::parse_class(nf.text));
    if (candidate.alphabet() != cls.alphabet() || candidate.arity() != cls.arity())
        throw ValidationError("net and class have different shapes");
    json uncovered = json::array();
    for (std::size_t m = 0; m < cls.size(); ++m)
        if (covering_function(cls[m], candidate) == candidate.size()) uncovered.push_back(row_text(cls[m]));
    rep.result["value"] = uncovered.empty();
    rep.result["net_size"] = candidate.size();
    rep.result["uncovered"] = uncovered;
    rep.check("candidate is a net", uncovered.empty());
    return rep;
}

Report cover_exact(const std::string& file, const Options& opt, const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "cover exact";
    const auto in = load(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}};
    if (opt.budget) rep.parameters["budget"] = *opt.budget;
    const auto cls = io::parse_class(in.text);
    const auto cover = covering_number_exact(cls, budgets.cover());
    rep.result["value"] = cover.value;
    rep.result["greedy_value"] = cover.greedy_value;
    rep.result["nodes"] = cover.nodes;
    const auto vc = vc_dimension(cls);
    rep.result["vc"] = vc ? json(*vc) : json("empty");
    if (cls.alphabet() >= 2 && cls.arity() >= 1) {
        const auto d = std::max<std::int64_t>(1, static_cast<std::int64_t>(vc.value_or(0)));
        const auto b = comb_bound(static_cast<std::int64_t>(cls.arity()), cls.alphabet(), d);
        rep.result["bound"] = big(b.rhs_value);
        rep.check("value within covering bound", cover.value <= b.rhs_value);
    }
    rep.result["witness"] = class_rows(cover.witness.as_partial());
    rep.check("witness is a net", verify_net(cls, cover.witness));
    return rep;
}

Report bound_report(BoundFormula formula, std::int64_t n, std::int64_t r, std::int64_t d, std::int64_t k)
{
    Report rep;
    rep.parameters = {{"n", n}, {"r", r}, {"d", d}};
    BoundReport b;
    switch (formula) {
    case BoundFormula::Comb:
        rep.subcommand = "bound comb";
        b = comb_bound(n, r, d);
        break;
    case BoundFormula::HuangYe:
        rep.subcommand = "bound hy";
        b = hy_bound(n, r, d);
        break;
    case BoundFormula::Natarajan:
        rep.subcommand = "natarajan bound";
        rep.parameters["k"] = k;
        b = natarajan_bound(n, r, k, d);
        json terms = json::array();
        for (std::int64_t i = 0; i <= d; ++i)
            terms.push_back(big(natarajan_term(n, r, k, d, i)));
        rep.result["terms"] = terms;
        break;
    }
    rep.input_hash = sha256_hex(rep.parameters.dump());
    rep.result.update(bound_json(b));
    rep.result["bound"] = rep.result["rhs_value"];
    return rep;
}

// ---------------------------------------------------------------- natarajan

json witness_json(const ProductWitness& w)
{
    json sets = json::array();
    for (const auto& s : w.value_sets) {
        json vs = json::array();
        for (auto v : s)
            vs.push_back(static_cast<unsigned>(v));
        sets.push_back(vs);
    }
    return {{"subset", index_list(w.subset)}, {"value_sets", sets}};
}

Report natarajan_dim_cmd(const std::string& file, unsigned k, const Options& opt)
{
    Report rep;
    rep.subcommand = "natarajan dim";
    const auto in = load(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}, {"k", k}};
    const auto cls = require_total(io::parse_class(in.text));
    std::vector<unsigned> ks;
    if (k) {
        ks.push_back(k);
    } else {
        for (unsigned j = 1; j <= cls.alphabet(); ++j)
            ks.push_back(j);
    }
    rep.table = Table{{"k", "dim"}, {}};
    json dims = json::array();
    std::optional<std::size_t> previous;
    for (auto kk : ks) {
        ProductWitness w;
        const auto dim = natarajan_dim(cls, kk, &w, opt.threads);
        dims.push_back({{"k", kk}, {"dim", dim}, {"witness", witness_json(w)}});
        rep.table->rows.push_back({std::to_string(kk), std::to_string(dim)});
        if (previous) rep.check("dim_" + std::to_string(kk) + " <= dim_" + std::to_string(kk - 1), dim <= *previous);
        previous = dim;
    }
    if (ks.size() == 1) {
        rep.result["value"] = dims[0]["dim"];
        rep.result["witness"] = dims[0]["witness"];
    } else {
        rep.result["dims"] = dims;
    }
    if (cls.alphabet() == 2 && (k == 0 || k == 2)) {
        const auto vc = vc_dimension(cls.as_partial());
        rep.check("dim_2 equals VC for r = 2", vc && *vc == natarajan_dim(cls, 2));
    }
    return rep;
}

Report natarajan_bound_from_file(const std::string& file, unsigned k, std::optional<std::int64_t> d,
                                 const Options& opt)
{
    const auto in = load(file);
    const auto cls = require_total(io::parse_class(in.text));
    const auto dim = natarajan_dim(cls, k, nullptr, opt.threads);
    const auto dd = d.value_or(std::max<std::int64_t>(1, static_cast<std::int64_t>(dim)));
    auto rep = bound_report(BoundFormula::Natarajan, static_cast<std::int64_t>(cls.arity()), cls.alphabet(), dd, k);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters["file"] = file;
    rep.result["dim"] = dim;
    rep.result["members"] = cls.size();
    if (static_cast<std::int64_t>(dim) <= dd) {
        const auto b = natarajan_bound(static_cast<std::int64_t>(cls.arity()), cls.alphabet(), k, dd);
        rep.check("|H| within bound", cls.size() <= b.rhs_value);
    }
    return rep;
}

Report natarajan_branch(const std::string& file, unsigned k, std::optional<std::size_t> d, const std::string& dump_dir,
                        const Options& opt)
{
    Report rep;
    rep.subcommand = "natarajan branch";
    const auto in = load(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}, {"k", k}};
    const auto cls = require_total(io::parse_class(in.text));
    const auto trace = branch_construct(cls, k);
    const auto dim = natarajan_dim(cls, k, nullptr, opt.threads);
    const auto dd = d.value_or(std::max<std::size_t>(dim, 1));
    if (dd > cls.arity()) throw ArgumentError("d exceeds n");
    if (dd < dim) throw ArgumentError("d must be at least dim_k(H) = " + std::to_string(dim));
    rep.parameters["d"] = dd;

    rep.result["members"] = cls.size();
    rep.result["stages"] = trace.stages.size();
    rep.result["dim"] = dim;
    rep.result["max_c_count"] = trace.max_c_count();
    json c_counts = json::array();
    for (std::size_t m = 0; m < cls.size(); ++m)
        c_counts.push_back(trace.c_count(m));
    rep.result["c_counts"] = c_counts;
    rep.check("stage invariants verified during construction", true);
    bool sizes = std::all_of(trace.stages.begin(), trace.stages.end(),
                             [&](const auto& s) { return s.size() == cls.size(); });
    rep.check("|H_i| = |H| at every stage", sizes);
    rep.check("c-symbols per member <= dim_k", trace.max_c_count() <= dim);

    const auto part = proof_partition(trace, dd);
    json parts = json::array();
    const auto n = static_cast<std::int64_t>(cls.arity());
    bool within = true;
    for (std::size_t i = 0; i <= dd; ++i) {
        const auto term = natarajan_term(n, cls.alphabet(), k, static_cast<std::int64_t>(dd), static_cast<std::int64_t>(i));
        within = within && part.part_sizes[i] <= term;
        parts.push_back({{"i", i}, {"size", part.part_sizes[i]}, {"term", big(term)}});
    }
    rep.result["proof_partition"] = parts;
    rep.check("|G_i| within its term", within);

    if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        json files = json::array();
        for (std::size_t s = 0; s < trace.stages.size(); ++s) {
            const auto path = (std::filesystem::path(dump_dir) / ("stage_" + std::to_string(s) + ".txt")).string();
            write_file(path, io::format_stage(trace, s));
            files.push_back(path);
        }
        rep.result["stage_files"] = files;
    }
    return rep;
}

Report natarajan_tight(std::size_t n, unsigned r, unsigned k, std::size_t d, const std::string& emit_path,
                       const Options& opt)
{
    Report rep;
    rep.subcommand = "natarajan tight-family";
    rep.parameters = {{"n", n}, {"r", r}, {"k", k}, {"d", d}};
    rep.input_hash = sha256_hex(rep.parameters.dump());
    const auto size = tight_family_size(n, r, k, d);
    BigInt formula = 0;
    for (std::size_t i = 0; i <= d; ++i)
        formula += binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(i)) * ipow(r - k + 1, static_cast<std::int64_t>(i))
                   * ipow(k - 1, static_cast<std::int64_t>(n - i));
    rep.result["value"] = big(size);
    rep.result["formula"] = big(formula);
    rep.check("size matches closed form", size == formula);
    if (d >= 1) {
        const auto b = natarajan_bound(static_cast<std::int64_t>(n), r, k, static_cast<std::int64_t>(d));
        rep.result["bound"] = big(b.rhs_value);
        rep.check("size within Natarajan bound", size <= b.rhs_value);
    }
    try {
        const auto family = tight_family(n, r, k, d);
        const auto dim = natarajan_dim(family, k, nullptr, opt.threads);
        rep.result["dim"] = dim;
        rep.check("dim_k equals d", dim == d);
        rep.check("enumerated size matches", BigInt(family.size()) == size);
        if (!emit_path.empty()) write_file(emit_path, io::format_class(family.as_partial()));
    } catch (const ResourceError& e) {
        rep.result["dim"] = nullptr;
        rep.result["note"] = std::string("family not enumerated: ") + e.what();
    }
    return rep;
}

// ---------------------------------------------------------------- graph

struct GraphInput {
    PartitionedHypergraph g;
    std::string text;
};

GraphInput load_graph(const std::string& file)
{
    auto in = load(file);
    return {io::parse_graph(in.text), in.text};
}

json graph_partition_json(const PartitionedHypergraph& g)
{
    json parts = json::array();
    for (const auto& p : g.parts)
        parts.push_back(p.sides);
    return parts;
}

// Ensures a validated partition is present, computing an exact biclique
// partition for graphs that come without one.
void complete_partition(PartitionedHypergraph& g, Report& rep, const Budgets& budgets)
{
    if (g.parts.empty()) {
        if (g.graph.edges.empty()) {
            g.parts.push_back(PartitePart{std::vector<VertexList>(g.graph.uniformity)});
            rep.result["partition_note"] = "edgeless graph: padded with one empty part";
        } else if (g.graph.uniformity == 2) {
            const auto bp = biclique_partition_number(g.graph, budgets.biclique());
            g = as_partitioned(BicliquePartitionedGraph{g.graph, bp.parts});
            rep.result["partition_note"] = "no witness in input: exact biclique partition computed";
        } else {
            throw ValidationError("an r-graph needs an explicit r-partite partition");
        }
    }
    validate(g);
}

Report graph_to_class(const std::string& file, const std::string& emit_path, const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "graph to-class";
    auto in = load_graph(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}};
    complete_partition(in.g, rep, budgets);
    const auto built = class_from_hypergraph_partition(in.g);
    std::vector<std::size_t> multiplicity(built.cls.size(), 0);
    for (auto m : built.member_of_vertex)
        ++multiplicity[m];
    rep.result["vertices"] = built.vertex_count;
    rep.result["value"] = built.cls.size();
    rep.result["parts"] = in.g.parts.size();
    rep.result["class"] = class_rows(built.cls);
    rep.result["multiplicity"] = multiplicity;
    rep.result["member_of_vertex"] = built.member_of_vertex;
    const auto vc = vc_dimension(built.cls);
    rep.result["vc"] = vc ? json(*vc) : json("empty");
    rep.check("VC <= 1", vc.value_or(0) <= 1);
    if (!emit_path.empty()) write_file(emit_path, io::format_class(built.cls));
    return rep;
}

Report graph_chi(const std::string& file, const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "graph chi";
    const auto in = load_graph(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}};
    const auto col = chromatic_number(in.g.graph, budgets.chromatic());
    rep.result["value"] = col.colors;
    rep.result["witness"] = col.color_of;
    rep.check("colouring is proper", is_proper_coloring(in.g.graph, col.color_of));
    return rep;
}

Report graph_bp(const std::string& file, const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "graph bp";
    const auto in = load_graph(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}};
    const auto bp = biclique_partition_number(in.g.graph, budgets.biclique());
    const auto witness = as_partitioned(BicliquePartitionedGraph{in.g.graph, bp.parts});
    rep.result["value"] = bp.value;
    rep.result["witness"] = graph_partition_json(witness);
    rep.result["witness_file"] = io::format_graph(witness);
    bool ok = true;
    try {
        validate(witness);
    } catch (const ValidationError&) {
        ok = false;
    }
    rep.check("witness is a biclique partition", ok);
    return rep;
}

Report graph_check_lemma(const std::string& file, const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "graph check-lemma";
    auto in = load_graph(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}};
    complete_partition(in.g, rep, budgets);
    const auto built = class_from_hypergraph_partition(in.g);
    const auto vc = vc_dimension(built.cls);
    const auto cover = covering_number_exact(built.cls, budgets.cover());
    const auto chi = chromatic_number(in.g.graph, budgets.chromatic());
    rep.result["parts"] = in.g.parts.size();
    rep.result["members"] = built.cls.size();
    rep.result["vc"] = vc ? json(*vc) : json("empty");
    rep.result["cover"] = cover.value;
    rep.result["chi"] = chi.colors;
    rep.result["cover_witness"] = class_rows(cover.witness.as_partial());

    bool pair_free = true;
    for (std::size_t i = 0; i < built.cls.arity(); ++i)
        for (std::size_t j = i + 1; j < built.cls.arity(); ++j)
            pair_free = pair_free && !is_shattered(built.cls, (IndexMask{1} << i) | (IndexMask{1} << j));
    std::vector<std::size_t> colors;
    for (std::size_t v = 0; v < built.vertex_count; ++v)
        colors.push_back(covering_function(built.cls[built.member_of_vertex[v]], cover.witness));
    rep.result["net_coloring"] = colors;
    rep.check("VC <= 1", vc.value_or(0) <= 1);
    rep.check("no pair of coordinates shattered", pair_free);
    rep.check("C(H) >= chi(G)", cover.value >= chi.colors);
    rep.check("net colouring is proper", is_proper_coloring(in.g.graph, colors));
    return rep;
}

Report graph_explore(std::size_t count, std::size_t vertices, double p, const Options& opt, const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "graph explore";
    rep.parameters = {{"count", count}, {"vertices", vertices}, {"p", p}, {"seed", opt.seed}};
    rep.input_hash = sha256_hex(rep.parameters.dump());
    rep.table = Table{{"index", "vertices", "edges", "chi", "bp", "ratio"}, {}};
    json rows = json::array();
    double best = 0.0;
    std::optional<std::size_t> best_index;
    std::size_t skipped = 0;
    for (std::size_t t = 0; t < count; ++t) {
        auto rng = make_rng(opt.seed, 0x6578706c, t);
        const auto g = random_graph(rng, vertices, p);
        try {
            const auto bp = biclique_partition_number(g, budgets.biclique());
            const auto chi = chromatic_number(g, budgets.chromatic());
            const double ratio = bp.value ? static_cast<double>(chi.colors) / static_cast<double>(bp.value) : 0.0;
            rows.push_back({{"index", t}, {"edges", g.edges.size()}, {"chi", chi.colors}, {"bp", bp.value}, {"ratio", ratio}});
            rep.table->rows.push_back({std::to_string(t), std::to_string(vertices), std::to_string(g.edges.size()),
                                       std::to_string(chi.colors), std::to_string(bp.value), json(ratio).dump()});
            if (bp.value && ratio > best) {
                best = ratio;
                best_index = t;
            }
        } catch (const ResourceError&) {
            ++skipped;
        }
    }
    rep.result["samples"] = rows;
    rep.result["skipped"] = skipped;
    rep.result["best_ratio"] = best;
    rep.result["best_index"] = best_index ? json(*best_index) : json(nullptr);
    rep.result["note"] = "best found on random samples; no optimality claim";
    return rep;
}

// ---------------------------------------------------------------- words

struct WordInput {
    WordSpec word;
    std::string text;
};

WordInput load_word(const std::string& file)
{
    auto in = load(file);
    return {io::parse_word(in.text), in.text};
}

Report word_pcount(const std::string& file, const std::string& offsets_text, std::optional<std::size_t> horizon)
{
    Report rep;
    rep.subcommand = "word pcount";
    const auto in = load_word(file);
    rep.input_hash = sha256_hex(in.text);
    const auto offsets = io::parse_index_list(offsets_text);
    rep.parameters = {{"file", file}, {"S", offsets}};
    if (horizon) rep.parameters["horizon"] = *horizon;
    const auto table = pattern_count(in.word, offsets, horizon);
    rep.result["value"] = table.count();
    json patterns = json::array();
    for (const auto& p : table.patterns)
        patterns.push_back(word_text(p, in.word.r));
    rep.result["patterns"] = patterns;
    rep.result["horizon"] = table.horizon;
    rep.result["exact"] = table.exact;
    rep.result["truncated"] = table.truncated;
    if (!table.exact) rep.result["note"] = "lower bound: pattern set computed from a finite prefix";
    return rep;
}

Report word_pstar(const std::string& file, std::size_t n, bool profile, std::size_t offset_cap, const Options& opt,
                  const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "word pstar";
    const auto in = load_word(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}, {"n", n}, {"profile", profile}, {"offset_cap", offset_cap}};
    if (opt.budget) rep.parameters["budget"] = *opt.budget;
    if (n == 0) throw ArgumentError("--n must be at least 1");
    const auto options = budgets.patterns(opt.threads, offset_cap);
    rep.table = Table{{"n", "pstar", "exact", "witness"}, {}};
    auto row = [&](std::size_t m, const PatternComplexity& pc) {
        std::string w;
        for (auto s : pc.witness)
            w += (w.empty() ? "" : " ") + std::to_string(s);
        rep.table->rows.push_back({std::to_string(m), std::to_string(pc.value), pc.exact ? "true" : "false", w});
    };
    auto entry = [](const PatternComplexity& pc) {
        json j{{"value", pc.value},
               {"witness", pc.witness},
               {"exact", pc.exact},
               {"budget_hit", pc.budget_hit},
               {"max_offset", pc.max_offset},
               {"sets_examined", pc.sets_examined}};
        if (!pc.exact) j["note"] = "lower bound";
        return j;
    };
    if (profile) {
        json values = json::array();
        for (std::size_t m = 1; m <= n; ++m) {
            const auto pc = max_pattern_complexity(in.word, m, options);
            values.push_back(entry(pc));
            row(m, pc);
        }
        rep.result["profile"] = values;
    } else {
        const auto pc = max_pattern_complexity(in.word, n, options);
        rep.result.update(entry(pc));
        row(n, pc);
    }
    return rep;
}

Report word_classify(const std::string& file, std::size_t n, std::size_t offset_cap, const Options& opt,
                     const Budgets& budgets)
{
    Report rep;
    rep.subcommand = "word classify";
    const auto in = load_word(file);
    rep.input_hash = sha256_hex(in.text);
    rep.parameters = {{"file", file}, {"n", n}, {"offset_cap", offset_cap}};
    const auto profile = complexity_profile(in.word, n, budgets.patterns(opt.threads, offset_cap));
    const auto c = classify_profile(profile);
    rep.result["profile"] = profile.values;
    rep.result["profile_exact"] = profile.exact;
    rep.result["ell"] = c.ell;
    rep.result["alternative"] = to_string(c.alternative);
    rep.result["exponent"] = c.exponent;
    rep.result["note"] = c.note;
    bool monotone = true;
    for (std::size_t i = 1; i < profile.values.size(); ++i)
        monotone = monotone && profile.values[i - 1] <= profile.values[i]
                   && profile.values[i] <= in.word.r * profile.values[i - 1];
    rep.check("profile nondecreasing and p*(n+1) <= r p*(n)", monotone);
    return rep;
}

Report word_to_class(const std::string& file, const std::string& offsets_text, std::optional<std::size_t> horizon,
                     const std::string& emit_path, const Options& opt)
{
    Report rep;
    rep.subcommand = "word to-class";
    const auto in = load_word(file);
    rep.input_hash = sha256_hex(in.text);
    const auto offsets = io::parse_index_list(offsets_text);
    rep.parameters = {{"file", file}, {"S", offsets}};
    if (horizon) rep.parameters["horizon"] = *horizon;
    const auto cls = class_from_windows(in.word, offsets, horizon);
    const auto table = pattern_count(in.word, offsets, horizon);
    rep.result["value"] = cls.size();
    rep.result["class"] = class_rows(cls.as_partial());
    rep.result["exact"] = table.exact;
    json dims = json::array();
    for (unsigned k = 1; k <= cls.alphabet(); ++k)
        dims.push_back({{"k", k}, {"dim", natarajan_dim(cls, k, nullptr, opt.threads)}});
    rep.result["dims"] = dims;
    rep.check("class size equals pattern count", cls.size() == table.count());
    if (!emit_path.empty()) write_file(emit_path, io::format_class(cls.as_partial()));
    return rep;
}

// ---------------------------------------------------------------- verify-suite

Report verify_suite(std::size_t trials, const Options& opt)
{
    Report rep;
    rep.subcommand = "verify-suite";
    rep.parameters = {{"trials", trials}, {"seed", opt.seed}};
    rep.input_hash = sha256_hex(rep.parameters.dump());
    SuiteOptions so;
    so.seed = opt.seed;
    so.trials = trials;
    so.threads = opt.threads;
    const auto outcomes = run_verify_suite(so);
    rep.table = Table{{"module", "check", "trials", "skipped", "failures", "seconds", "first_failure"}, {}};
    json list = json::array();
    std::size_t failures = 0;
    for (const auto& o : outcomes) {
        list.push_back({{"module", o.module},
                        {"check", o.name},
                        {"trials", o.trials},
                        {"skipped", o.skipped},
                        {"failures", o.failures},
                        {"first_failure", o.first_failure}});
        rep.table->rows.push_back({o.module, o.name, std::to_string(o.trials), std::to_string(o.skipped),
                                   std::to_string(o.failures), json(o.seconds).dump(), o.first_failure});
        rep.check(o.module + "/" + o.name, o.passed(), o.first_failure);
        failures += o.failures;
    }
    rep.result["seed"] = opt.seed;
    rep.result["checks"] = list;
    rep.result["total_failures"] = failures;
    return rep;
}

std::optional<std::size_t> budget_from_env()
{
    const char* raw = std::getenv(kBudgetEnv);
    if (!raw || !*raw) return std::nullopt;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(raw, &used);
        if (used != std::string_view(raw).size() || v == 0) throw std::invalid_argument("bad");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw CLI::ValidationError(kBudgetEnv, std::string("must be a positive integer, got '") + raw + "'");
    }
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Shattering, nets, Natarajan dimension, graph reductions and pattern complexity.", "shatter"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.footer(std::string("Environment:\n  ") + kBudgetEnv
               + "=<N>  default node budget for exact searches (cover, chi, bp, p* index sets);\n"
                 "                    --budget takes precedence.\n"
                 "Exit codes: 0 ok, 1 internal self-check failed, 2 usage, 3 parse, 4 validation, 5 resource budget.");

    Options opt;
    app.add_flag("--csv", opt.csv, "Emit CSV instead of JSON");
    app.add_option("--seed", opt.seed, "Seed for randomized sweeps")->capture_default_str();
    app.add_option("--threads", opt.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
    std::size_t budget_flag = 0;
    auto* budget_opt = app.add_option("--budget", budget_flag, "Node budget for exact searches")->check(CLI::PositiveNumber);

    std::function<Report()> run;
    std::string file, other, emit_path, offsets, dump_dir;
    std::int64_t n = 0, r = 0, d = 0, k = 0;
    std::optional<std::int64_t> d_opt;
    std::optional<std::size_t> horizon;
    std::size_t count = 20, vertices = 6, trials = 100, word_n = 6, offset_cap = 16;
    double prob = 0.5;
    bool profile = false;
    unsigned kk = 2;
    // `opt.budget` is final only after parsing.
    auto budgets = [&] { return Budgets(opt.budget); };

    auto add_file = [&](CLI::App* sub) { sub->add_option("--file", file, "Input file")->required(); };

    auto* net = app.add_subcommand("net", "Net construction")->require_subcommand(1);
    auto* net_build_cmd = net->add_subcommand("build", "Build a net from the VC-minority algorithm");
    add_file(net_build_cmd);
    net_build_cmd->add_option("--emit", emit_path, "Write the carrier as a class file");
    net_build_cmd->callback([&] { run = [&] { return net_build(file, emit_path, opt); }; });
    auto* net_verify_cmd = net->add_subcommand("verify", "Check that a total class is a net");
    add_file(net_verify_cmd);
    net_verify_cmd->add_option("--net", other, "Candidate net (class file)")->required();
    net_verify_cmd->callback([&] { run = [&] { return net_verify(file, other); }; });

    auto* cover = app.add_subcommand("cover", "Covering number")->require_subcommand(1);
    auto* cover_exact_cmd = cover->add_subcommand("exact", "Exact minimum net by branch and bound");
    add_file(cover_exact_cmd);
    cover_exact_cmd->callback([&] { run = [&] { return cover_exact(file, opt, budgets()); }; });

    auto* bound = app.add_subcommand("bound", "Closed-form covering bounds")->require_subcommand(1);
    for (auto [name, formula] : {std::pair{"comb", BoundFormula::Comb}, std::pair{"hy", BoundFormula::HuangYe}}) {
        auto* sub = bound->add_subcommand(name, name == std::string("comb") ? "Binomial-threshold bound"
                                                                           : "Huang-Ye style bound");
        sub->add_option("--n", n, "Arity")->required();
        sub->add_option("--r", r, "Alphabet size")->required();
        sub->add_option("--d", d, "VC dimension bound")->required();
        sub->callback([&, formula = formula] { run = [&, formula] { return bound_report(formula, n, r, d, 0); }; });
    }

    auto* nat = app.add_subcommand("natarajan", "k-Natarajan dimension")->require_subcommand(1);
    auto* nat_dim = nat->add_subcommand("dim", "Exact dim_k (all k when --k is omitted)");
    add_file(nat_dim);
    unsigned dim_k = 0;
    nat_dim->add_option("--k", dim_k, "Value-set size");
    nat_dim->callback([&] { run = [&] { return natarajan_dim_cmd(file, dim_k, opt); }; });
    auto* nat_bound = nat->add_subcommand("bound", "Cardinality bound from parameters or from a class file");
    auto* nb_file = nat_bound->add_option("--file", file, "Total class; d defaults to max(dim_k, 1)");
    nat_bound->add_option("--n", n, "Arity")->excludes(nb_file);
    nat_bound->add_option("--r", r, "Alphabet size")->excludes(nb_file);
    nat_bound->add_option("--k", k, "Value-set size")->required();
    nat_bound->add_option("--d", d_opt, "Dimension bound");
    nat_bound->callback([&] {
        run = [&] {
            if (!file.empty()) return natarajan_bound_from_file(file, static_cast<unsigned>(k), d_opt, opt);
            if (!d_opt) throw ArgumentError("--d is required without --file");
            return bound_report(BoundFormula::Natarajan, n, r, *d_opt, k);
        };
    });
    auto* nat_branch = nat->add_subcommand("branch", "Branching construction with proof-partition replay");
    add_file(nat_branch);
    nat_branch->add_option("--k", kk, "Value-set size")->capture_default_str();
    std::optional<std::size_t> branch_d;
    nat_branch->add_option("--d", branch_d, "Partition parameter (default max(dim_k, 1))");
    nat_branch->add_option("--dump-stages", dump_dir, "Directory for stage files");
    nat_branch->callback([&] { run = [&] { return natarajan_branch(file, kk, branch_d, dump_dir, opt); }; });
    auto* nat_tight = nat->add_subcommand("tight-family", "Family meeting the bound's shape");
    std::size_t tn = 0, td = 0;
    unsigned tr = 0, tk = 0;
    nat_tight->add_option("--n", tn, "Arity")->required();
    nat_tight->add_option("--r", tr, "Alphabet size")->required();
    nat_tight->add_option("--k", tk, "Value-set size")->required();
    nat_tight->add_option("--d", td, "Dimension")->required();
    nat_tight->add_option("--emit", emit_path, "Write the family as a class file");
    nat_tight->callback([&] { run = [&] { return natarajan_tight(tn, tr, tk, td, emit_path, opt); }; });

    auto* graph = app.add_subcommand("graph", "Graph to class reduction")->require_subcommand(1);
    auto* g_class = graph->add_subcommand("to-class", "Build the partial class of a partitioned graph");
    add_file(g_class);
    g_class->add_option("--emit", emit_path, "Write the class file");
    g_class->callback([&] { run = [&] { return graph_to_class(file, emit_path, budgets()); }; });
    auto* g_chi = graph->add_subcommand("chi", "Exact chromatic number (weak colouring for r-graphs)");
    add_file(g_chi);
    g_chi->callback([&] { run = [&] { return graph_chi(file, budgets()); }; });
    auto* g_bp = graph->add_subcommand("bp", "Exact biclique partition number");
    add_file(g_bp);
    g_bp->callback([&] { run = [&] { return graph_bp(file, budgets()); }; });
    auto* g_lemma = graph->add_subcommand("check-lemma", "Check VC <= 1 and C(H) >= chi(G)");
    add_file(g_lemma);
    g_lemma->callback([&] { run = [&] { return graph_check_lemma(file, budgets()); }; });
    auto* g_explore = graph->add_subcommand("explore", "Random search comparing chi with bp");
    g_explore->add_option("--count", count, "Samples")->capture_default_str();
    g_explore->add_option("--vertices", vertices, "Vertices per sample")->capture_default_str();
    g_explore->add_option("--p", prob, "Edge probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    g_explore->callback([&] { run = [&] { return graph_explore(count, vertices, prob, opt, budgets()); }; });

    auto* word = app.add_subcommand("word", "Pattern complexity of words")->require_subcommand(1);
    auto* w_count = word->add_subcommand("pcount", "Distinct patterns along an index set");
    add_file(w_count);
    w_count->add_option("--S", offsets, "Offsets, e.g. 0,1,3")->required();
    w_count->add_option("--horizon", horizon, "Prefix length examined");
    w_count->callback([&] { run = [&] { return word_pcount(file, offsets, horizon); }; });
    auto* w_star = word->add_subcommand("pstar", "Maximal pattern complexity p*(n)");
    add_file(w_star);
    w_star->add_option("--n", word_n, "Index-set size")->required();
    w_star->add_flag("--profile", profile, "Report p*(1..n)");
    w_star->add_option("--offset-cap", offset_cap, "Largest offset for non-periodic words")->capture_default_str();
    w_star->callback([&] { run = [&] { return word_pstar(file, word_n, profile, offset_cap, opt, budgets()); }; });
    auto* w_class = word->add_subcommand("classify", "Heuristic growth classification of p*");
    add_file(w_class);
    w_class->add_option("--n", word_n, "Profile length (>= 4)")->capture_default_str();
    w_class->add_option("--offset-cap", offset_cap, "Largest offset for non-periodic words")->capture_default_str();
    w_class->callback([&] { run = [&] { return word_classify(file, word_n, offset_cap, opt, budgets()); }; });
    auto* w_to = word->add_subcommand("to-class", "Window patterns as a total class");
    add_file(w_to);
    w_to->add_option("--S", offsets, "Offsets")->required();
    w_to->add_option("--horizon", horizon, "Prefix length examined");
    w_to->add_option("--emit", emit_path, "Write the class file");
    w_to->callback([&] { run = [&] { return word_to_class(file, offsets, horizon, emit_path, opt); }; });

    auto* suite = app.add_subcommand("verify-suite", "Seeded randomized property sweeps over every module");
    suite->add_option("--trials", trials, "Trials per check")->capture_default_str();
    suite->callback([&] { run = [&] { return verify_suite(trials, opt); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        opt.budget = budget_opt->count() ? std::optional<std::size_t>(budget_flag) : budget_from_env();
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        auto report = run();
        report.parameters["argv"] = args;
        report.parameters["seed"] = opt.seed;
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit(report, opt, ms, out);
        return report.exit_code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << " (budget " << e.budget_name() << " = " << e.budget() << ")\n";
        return kResource;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const ArgumentError& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kValidation;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kValidation;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    }
}

} // namespace shatter::cli
