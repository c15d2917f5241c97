#include <shatter/errors.hpp>
#include <shatter/io.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace shatter::io {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

struct Line {
    std::size_t number;
    std::string_view text;
};

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> content_lines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        const auto end = text.find('\n');
        auto line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.push_back({number, line});
    }
    return out;
}

std::size_t parse_uint(std::string_view s, std::size_t line, const char* what)
{
    s = trim(s);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(std::string("expected a non-negative integer for ") + what + ", got '" + std::string(s) + "'",
                         line);
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(sep);
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s = s.substr(pos + 1);
    }
    return out;
}

// Splits on commas that are not inside braces.
std::vector<std::string_view> split_tokens(std::string_view s)
{
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '{') ++depth;
        if (s[i] == '}') --depth;
        if (s[i] == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

// "key=value key=value" header fields.
std::map<std::string, std::size_t> header_fields(const Line& line)
{
    std::map<std::string, std::size_t> fields;
    std::istringstream in{std::string(line.text)};
    std::string item;
    while (in >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("header field '" + item + "' is not key=value", line.number);
        fields[item.substr(0, eq)] = parse_uint(std::string_view(item).substr(eq + 1), line.number, item.c_str());
    }
    return fields;
}

std::size_t require(const std::map<std::string, std::size_t>& fields, const std::string& key, std::size_t line)
{
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("header is missing " + key + "=", line);
    return it->second;
}

} // namespace

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PartialClass parse_class(std::string_view text)
{
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty class file", 0);
    const auto fields = header_fields(lines[0]);
    const auto r = require(fields, "r", lines[0].number);
    const auto n = require(fields, "n", lines[0].number);
    if (r < 2 || r > kMaxAlphabet) throw ParseError("r must be in [2, 64]", lines[0].number);

    std::vector<Symbol> flat;
    std::size_t rows = 0;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& line = lines[l];
        if (n == 0) {
            if (line.text != "()") throw ParseError("arity-0 members are written ()", line.number);
            ++rows;
            continue;
        }
        const auto tokens = split(line.text, ',');
        if (tokens.size() != n)
            throw ParseError("member has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(n),
                             line.number);
        for (auto t : tokens) {
            if (t == "*") {
                flat.push_back(kUndefined);
                continue;
            }
            const auto v = parse_uint(t, line.number, "a symbol");
            if (v < 1 || v > r)
                throw ParseError("symbol " + std::to_string(v) + " outside 1.." + std::to_string(r), line.number);
            flat.push_back(static_cast<Symbol>(v));
        }
        ++rows;
    }
    return PartialClass(static_cast<unsigned>(r), n, std::move(flat), rows);
}

std::string format_class(const PartialClass& cls)
{
    std::string out = "r=" + std::to_string(cls.alphabet()) + " n=" + std::to_string(cls.arity()) + "\n";
    for (std::size_t m = 0; m < cls.size(); ++m) {
        if (cls.arity() == 0) {
            out += "()\n";
            continue;
        }
        auto row = cls[m];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i] == kUndefined ? std::string("*") : std::to_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

VertexList parse_vertex_set(std::string_view s, std::size_t line)
{
    s = trim(s);
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("vertex set must be written {..}", line);
    s = trim(s.substr(1, s.size() - 2));
    VertexList out;
    if (s.empty()) return out;
    for (auto t : split(s, ','))
        out.push_back(parse_uint(t, line, "a vertex"));
    return out;
}

std::string show_set(const VertexList& vs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i)
        out += (i ? "," : "") + std::to_string(vs[i]);
    return out + "}";
}

} // namespace

PartitionedHypergraph parse_graph(std::string_view text)
{
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty graph file", 0);
    const auto fields = header_fields(lines[0]);
    const auto v = require(fields, "v", lines[0].number);
    const auto e = require(fields, "e", lines[0].number);
    const auto r = fields.contains("r") ? fields.at("r") : 2;
    if (r < 2) throw ParseError("uniformity must be at least 2", lines[0].number);

    std::vector<VertexList> edges;
    std::vector<PartitePart> parts;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& line = lines[l];
        if (line.text.starts_with("part:")) {
            PartitePart part;
            std::string_view rest = trim(line.text.substr(5));
            // fields "X={...}" separated by whitespace
            while (!rest.empty()) {
                const auto eq = rest.find('=');
                const auto close = rest.find('}');
                if (eq == std::string_view::npos || close == std::string_view::npos || close < eq)
                    throw ParseError("malformed part line", line.number);
                const auto label = trim(rest.substr(0, eq));
                const auto expected = r == 2 ? (part.sides.empty() ? std::string("L") : std::string("R"))
                                             : "S" + std::to_string(part.sides.size() + 1);
                const auto generic = "S" + std::to_string(part.sides.size() + 1);
                if (label != expected && label != generic)
                    throw ParseError("expected side label " + expected + ", got '" + std::string(label) + "'",
                                     line.number);
                part.sides.push_back(parse_vertex_set(rest.substr(eq + 1, close - eq), line.number));
                rest = trim(rest.substr(close + 1));
            }
            if (part.sides.size() != r)
                throw ParseError("part has " + std::to_string(part.sides.size()) + " sides, expected " + std::to_string(r),
                                 line.number);
            parts.push_back(std::move(part));
            continue;
        }
        if (!parts.empty()) throw ParseError("edge line after part lines", line.number);
        std::istringstream in{std::string(line.text)};
        VertexList edge;
        std::string tok;
        while (in >> tok)
            edge.push_back(parse_uint(tok, line.number, "a vertex"));
        if (edge.size() != r)
            throw ParseError("edge has " + std::to_string(edge.size()) + " vertices, expected " + std::to_string(r),
                             line.number);
        for (auto x : edge)
            if (x >= v) throw ParseError("vertex " + std::to_string(x) + " outside 0.." + std::to_string(v - 1), line.number);
        edges.push_back(std::move(edge));
    }
    if (edges.size() != e)
        throw ParseError("header declares " + std::to_string(e) + " edges but " + std::to_string(edges.size())
                             + " were listed",
                         lines[0].number);
    Hypergraph g;
    try {
        g = make_hypergraph(v, static_cast<unsigned>(r), std::move(edges));
    } catch (const ValidationError& err) {
        throw ParseError(err.what(), 0);
    }
    return PartitionedHypergraph{std::move(g), std::move(parts)};
}

std::string format_graph(const PartitionedHypergraph& g)
{
    std::string out = "v=" + std::to_string(g.graph.vertices) + " e=" + std::to_string(g.graph.edges.size());
    if (g.graph.uniformity != 2) out += " r=" + std::to_string(g.graph.uniformity);
    out += '\n';
    for (const auto& e : g.graph.edges) {
        for (std::size_t i = 0; i < e.size(); ++i)
            out += (i ? " " : "") + std::to_string(e[i]);
        out += '\n';
    }
    for (const auto& p : g.parts) {
        out += "part:";
        for (std::size_t t = 0; t < p.sides.size(); ++t) {
            const std::string label = g.graph.uniformity == 2 ? (t == 0 ? "L" : "R") : "S" + std::to_string(t + 1);
            out += " " + label + "=" + show_set(p.sides[t]);
        }
        out += '\n';
    }
    return out;
}

BicliquePartitionedGraph to_biclique_graph(const PartitionedHypergraph& g)
{
    if (g.graph.uniformity != 2) throw ValidationError("not a graph: uniformity " + std::to_string(g.graph.uniformity));
    BicliquePartitionedGraph out{g.graph, {}};
    for (const auto& p : g.parts)
        out.parts.push_back(Biclique{p.sides.at(0), p.sides.at(1)});
    return out;
}

namespace {

std::vector<Symbol> parse_letters(std::string_view s, std::size_t line)
{
    s = trim(s);
    std::vector<Symbol> out;
    if (s.find(',') != std::string_view::npos) {
        for (auto t : split(s, ','))
            out.push_back(static_cast<Symbol>(parse_uint(t, line, "a letter")));
        return out;
    }
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError(std::string("bad letter '") + c + "'", line);
        out.push_back(static_cast<Symbol>(c - '0'));
    }
    return out;
}

std::string show_letters(const std::vector<Symbol>& letters, unsigned r)
{
    std::string out;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (r > 9 && i) out += ',';
        out += std::to_string(letters[i]);
    }
    return out;
}

} // namespace

WordSpec parse_word(std::string_view text)
{
    WordSpec w;
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    for (const auto& line : content_lines(text)) {
        const auto eq = line.text.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value", line.number);
        kv[std::string(trim(line.text.substr(0, eq)))] = {std::string(trim(line.text.substr(eq + 1))), line.number};
    }
    auto get = [&](const std::string& key) -> const std::pair<std::string, std::size_t>& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("word file is missing " + key + "=", 0);
        return it->second;
    };

    const auto& [kind, kind_line] = get("kind");
    const auto& [r_text, r_line] = get("r");
    w.r = static_cast<unsigned>(parse_uint(r_text, r_line, "r"));
    if (kind == "periodic") {
        w.kind = WordKind::Periodic;
        w.cycle = parse_letters(get("cycle").first, get("cycle").second);
    } else if (kind == "evper") {
        w.kind = WordKind::EventuallyPeriodic;
        w.cycle = parse_letters(get("cycle").first, get("cycle").second);
        w.preperiod = parse_letters(get("preperiod").first, get("preperiod").second);
    } else if (kind == "subst") {
        w.kind = WordKind::Substitution;
        const auto& [rules, rules_line] = get("rules");
        for (auto rule : split(rules, ';').size() > 1 ? split(rules, ';') : split(rules, ',')) {
            const auto arrow = rule.find("->");
            if (arrow == std::string_view::npos) throw ParseError("rule must be written a->word", rules_line);
            const auto letter = parse_uint(rule.substr(0, arrow), rules_line, "a rule letter");
            w.rules[static_cast<Symbol>(letter)] = parse_letters(rule.substr(arrow + 2), rules_line);
        }
        w.seed = parse_letters(get("seed").first, get("seed").second);
        w.depth = parse_uint(get("depth").first, get("depth").second, "depth");
    } else if (kind == "prefix") {
        w.kind = WordKind::Prefix;
        w.prefix = parse_letters(get("prefix").first, get("prefix").second);
    } else {
        throw ParseError("unknown word kind '" + kind + "'", kind_line);
    }
    try {
        w.validate();
    } catch (const ValidationError& err) {
        throw ParseError(err.what(), 0);
    }
    return w;
}

std::string format_word(const WordSpec& w)
{
    std::string out = "kind=" + to_string(w.kind) + "\nr=" + std::to_string(w.r) + "\n";
    switch (w.kind) {
    case WordKind::EventuallyPeriodic: out += "preperiod=" + show_letters(w.preperiod, w.r) + "\n"; [[fallthrough]];
    case WordKind::Periodic: out += "cycle=" + show_letters(w.cycle, w.r) + "\n"; break;
    case WordKind::Substitution: {
        out += "rules=";
        bool first = true;
        for (const auto& [letter, image] : w.rules) {
            out += (first ? "" : (w.r > 9 ? ";" : ",")) + std::to_string(letter) + "->" + show_letters(image, w.r);
            first = false;
        }
        out += "\nseed=" + show_letters(w.seed, w.r) + "\ndepth=" + std::to_string(w.depth) + "\n";
        break;
    }
    case WordKind::Prefix: out += "prefix=" + show_letters(w.prefix, w.r) + "\n"; break;
    }
    return out;
}

std::string format_stage(const BranchTrace& trace, std::size_t stage)
{
    auto rows = trace.stages.at(stage);
    std::sort(rows.begin(), rows.end());
    std::string out = "r=" + std::to_string(trace.r) + " n=" + std::to_string(trace.n) + " k=" + std::to_string(trace.k)
                      + " stage=" + std::to_string(stage) + "\n";
    for (const auto& row : rows) {
        if (row.empty()) {
            out += "()\n";
            continue;
        }
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + to_token(row[i]);
        out += '\n';
    }
    return out;
}

std::vector<StageRow> parse_stage(std::string_view text)
{
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty stage dump", 0);
    const auto fields = header_fields(lines[0]);
    const auto n = require(fields, "n", lines[0].number);
    std::vector<StageRow> rows;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        StageRow row;
        if (lines[l].text != "()") {
            for (auto t : split_tokens(lines[l].text)) {
                try {
                    row.push_back(parse_branch_token(std::string(t)));
                } catch (const ArgumentError& err) {
                    throw ParseError(err.what(), lines[l].number);
                }
            }
        }
        if (row.size() != n) throw ParseError("stage row has the wrong length", lines[l].number);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::size_t> parse_index_list(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '{' && text.back() == '}') text = trim(text.substr(1, text.size() - 2));
    std::vector<std::size_t> out;
    if (text.empty()) return out;
    for (auto t : split(text, ','))
        out.push_back(parse_uint(t, 0, "an index"));
    return out;
}

} // namespace shatter::io
