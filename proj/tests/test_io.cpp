#include <shatter/errors.hpp>
#include <shatter/io.hpp>
#include <shatter/natarajan.hpp>
#include <shatter/random_instances.hpp>

#include <doctest.h>

using namespace shatter;

TEST_CASE("class format round-trips")
{
    const std::string text = "r=3 n=3\n1,2,*\n3,*,*\n";
    const auto h = io::parse_class(text);
    CHECK(h == PartialClass(3, 3, {{1, 2, 0}, {3, 0, 0}}));
    CHECK(io::format_class(h) == text);
    for (std::size_t t = 0; t < 30; ++t) {
        auto rng = make_rng(61, 1, t);
        const auto g = random_partial_class(rng, 1 + t % 6, 2 + t % 5, 1 + t, 0.3);
        CHECK(io::parse_class(io::format_class(g)) == g);
        const auto s = io::format_class(g);
        CHECK(io::format_class(io::parse_class(s)) == s);
    }
    const PartialClass zero(2, 0, {{}});
    CHECK(io::parse_class(io::format_class(zero)) == zero);
}

TEST_CASE("class parse errors carry line numbers")
{
    auto line_of = [](const std::string& text) {
        try {
            io::parse_class(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{9999};
    };
    CHECK(line_of("r=2 n=2\n1,2\n1\n") == 3);
    CHECK(line_of("# comment\nr=2 n=2\n1,3\n") == 3);
    CHECK(line_of("r=2 n=2\n1,x\n") == 2);
    CHECK(line_of("n=2\n1,1\n") == 1);
    CHECK_THROWS_AS(io::parse_class(""), ParseError);
    CHECK_THROWS_AS(io::read_file("/nonexistent/file"), ParseError);
}

TEST_CASE("graph format")
{
    const std::string text = "v=3 e=3\n0 1\n1 2\n0 2\npart: L={0} R={1,2}\npart: L={1} R={2}\n";
    const auto g = io::parse_graph(text);
    CHECK(g.graph.vertices == 3);
    CHECK(g.graph.edges.size() == 3);
    CHECK(g.parts.size() == 2);
    CHECK_NOTHROW(validate(g));
    CHECK(io::parse_graph(io::format_graph(g)).parts.size() == 2);
    CHECK(io::format_graph(io::parse_graph(io::format_graph(g))) == io::format_graph(g));
    const auto bg = io::to_biclique_graph(g);
    CHECK(bg.parts[0].right == VertexList{1, 2});

    const auto hyper = io::parse_graph("v=4 e=2 r=3\n0 1 2\n0 1 3\npart: S1={0} S2={1} S3={2,3}\n");
    CHECK(hyper.graph.uniformity == 3);
    CHECK_NOTHROW(validate(hyper));
    CHECK_THROWS_AS(io::parse_graph("v=3 e=2\n0 1\n"), ParseError);
    CHECK_THROWS_AS(io::parse_graph("v=3 e=1\n0 1 2\n"), ParseError);
}

TEST_CASE("word format")
{
    const auto w = io::parse_word("kind=periodic\nr=2\ncycle=112\n");
    CHECK(w.kind == WordKind::Periodic);
    CHECK(w.cycle == std::vector<Symbol>{1, 1, 2});
    const auto s = io::parse_word("kind=subst\nr=2\nrules=1->12,2->1\nseed=1\ndepth=10\n");
    CHECK(s.rules.at(1) == std::vector<Symbol>{1, 2});
    CHECK(s.depth == 10);
    const auto e = io::parse_word("kind=evper\nr=3\npreperiod=3\ncycle=12\n");
    CHECK(e.preperiod == std::vector<Symbol>{3});
    for (const auto& ws : {w, s, e, io::parse_word("kind=prefix\nr=2\nprefix=1221\n")})
        CHECK(io::format_word(io::parse_word(io::format_word(ws))) == io::format_word(ws));
    CHECK_THROWS_AS(io::parse_word("kind=weird\nr=2\n"), ParseError);
    CHECK_THROWS(io::parse_word("kind=periodic\nr=2\ncycle=13\n"));
}

TEST_CASE("stage dump round-trips")
{
    const auto trace = branch_construct(TotalClass(3, 2, {{1, 1}, {2, 3}, {3, 2}, {3, 3}}), 2);
    for (std::size_t i = 0; i < trace.stages.size(); ++i) {
        auto rows = trace.stages[i];
        std::sort(rows.begin(), rows.end());
        CHECK(io::parse_stage(io::format_stage(trace, i)) == rows);
    }
    CHECK(io::format_stage(trace, 0).rfind("r=3 n=2 k=2 stage=0", 0) == 0);
}

TEST_CASE("index lists")
{
    CHECK(io::parse_index_list("0,1,3") == std::vector<std::size_t>{0, 1, 3});
    CHECK(io::parse_index_list(" 2 , 5 ") == std::vector<std::size_t>{2, 5});
    CHECK_THROWS_AS(io::parse_index_list("1,a"), ParseError);
}
