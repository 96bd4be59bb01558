#include <sstream>

#include "cechborder/space_io.hpp"
#include "doctest.h"

using namespace cechb;

namespace {

int error_line(const std::string& text, std::string* message = nullptr)
{
    try {
        parse_space_text(text);
    } catch (const ParseError& e) {
        if (message)
            *message = e.what();
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("point file")
{
    const auto p = parse_space_text("# a point\nvertex p stage=0\n\n");
    CHECK(p.space().vertex_count() == 1);
    CHECK(p.space().is_compact());
    CHECK(p.a_empty());
    CHECK(render_space(p) == "depth 0\nvertex p stage=0\n");
}

TEST_CASE("round trips")
{
    for (Example e : all_examples()) {
        for (int depth : {1, 3}) {
            const auto p = generate_example(e, depth);
            const std::string text = render_space(p);
            const auto q = parse_space_text(text);
            CAPTURE(example_name(e));
            CHECK(q == p);
            CHECK(render_space(q) == text);
        }
    }

    auto line = generate_example(Example::line, 3);
    std::vector<bool> a(line.space().vertex_count(), false);
    a.front() = a.back() = true;
    line = line.with_a(a);
    CHECK(parse_space_text(render_space(line)) == line);
    CHECK(render_space(line).find("vertex -3 stage=3 inA\n") != std::string::npos);
}

TEST_CASE("order and duplicates")
{
    const std::string canonical = "depth 2\nvertex a stage=0\nvertex b stage=1 inA\nvertex c stage=2\n"
                                  "simplex a b\nsimplex a c\nsimplex b c\nsimplex a b c\n";
    const std::string shuffled = "simplex c b a\nsimplex b c\n# comment\nvertex c stage=2\nsimplex c a\n"
                                 "vertex a stage=0   # trailing\nsimplex b a\nvertex b stage=1 inA\n"
                                 "simplex a b\nvertex a stage=0\n";
    CHECK(render_space(parse_space_text(shuffled)) == render_space(parse_space_text(canonical)));
    CHECK(parse_space_text(shuffled).space().depth() == 2);
    CHECK(render_space(parse_space_text(canonical)) == canonical);
    CHECK(parse_space_text("vertex a stage=0\nvertex b stage=1\nsimplex a b\ndepth 4\n").space().depth() == 4);
}

TEST_CASE("diagnostics")
{
    std::string msg;
    CHECK(error_line("vertex a stage=0\nsimplex a b\n", &msg) == 2);
    CHECK(msg.find("'b'") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);

    CHECK(error_line("vertex a stage=0\nvertex b stage=0\nvertex c stage=0\nsimplex a b c\nsimplex a b\n", &msg) == 4);
    CHECK(msg.find("face") != std::string::npos);

    CHECK(error_line("vertex a stage=x\n") == 1);
    CHECK(error_line("vertex a stage=-1\n") == 1);
    CHECK(error_line("vertex a\n") == 1);
    CHECK(error_line("vertex a stage=0 inB\n") == 1);
    CHECK(error_line("vertex a stage=0\nedge a a\n", &msg) == 2);
    CHECK(msg.find("unknown directive") != std::string::npos);
    CHECK(error_line("vertex a stage=0\nvertex a stage=1\n") == 2);
    CHECK(error_line("vertex a stage=0\nsimplex a a\n") == 2);
    CHECK(error_line("vertex a stage=0\nsimplex a\n") == 2);
    CHECK(error_line("depth 1\nvertex a stage=2\n") == 1);
    CHECK(error_line("depth 1\ndepth 2\nvertex a stage=0\n") == 2);
    CHECK(error_line("# nothing\n") == 0);
}

TEST_CASE("families")
{
    const auto line = generate_example(Example::line, 3);
    std::istringstream in("# left ray\n-3 -2 -1\n\n0\n");
    const auto f = parse_family(in, line.space());
    REQUIRE(f.size() == 2);
    CHECK(std::count(f[0].begin(), f[0].end(), true) == 3);
    CHECK(f[1][static_cast<size_t>(*line.space().find("0"))]);
    std::istringstream bad("1 2\n9\n");
    try {
        parse_family(bad, line.space());
        FAIL("expected rejection");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}
