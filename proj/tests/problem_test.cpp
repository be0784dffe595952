// SPDX-License-Identifier: Apache-2.0

#include "ovf/problem.hpp"

#include <doctest.h>

#include <sstream>

using namespace ovf;

namespace {

Problem parse(const std::string& text) {
    std::istringstream in(text);
    return parse_problem(in);
}

} // namespace

TEST_CASE("problem files parse machine, facts and queries") {
    Problem p = parse(
        "# fixture\n"
        "machine int4\n"
        "var x in [-2, 2]\n"
        "var y in [-1, 3]\n"
        "var z in [-1, 4]\n"
        "rel y + z in [-2, 4]\n"
        "rel x - z in [-3, 3]\n"
        "template x + 2*y in [-1, 1]\n"
        "query q1 sum: x + y + z\n"
        "query q2 rel: x + y <= z\n"
        "repair q1 group: x + (y + z)\n");
    CHECK(p.machine == MachineType::make_signed(4));
    CHECK(p.env.unary({"x"}) == Interval(-2, 2));
    CHECK(p.env.pair_fact({"y"}, 1, {"z"}, 1) == Interval(-2, 4));
    CHECK(p.env.pair_fact({"x"}, 1, {"z"}, -1) == Interval(-3, 3));
    CHECK(p.env.pair_fact({"x"}, 1, {"y"}, 1) == std::nullopt);
    REQUIRE(p.env.templates().size() == 1);
    REQUIRE(p.queries.size() == 2);
    CHECK(p.queries[0].kind == Query::Kind::Sum);
    CHECK(to_string(p.queries[0].sum) == "x + y + z");
    CHECK(p.queries[1].kind == Query::Kind::Rel);
    REQUIRE(p.repairs.count("q1") == 1);
    CHECK(to_string(std::get<GroupedExpr>(p.repairs.at("q1"))) == "x + (y + z)");
}

TEST_CASE("problem parse errors carry the line number") {
    auto expect_line = [](const std::string& text, std::size_t line) {
        try {
            parse(text);
            FAIL("expected a parse error");
        } catch (const problem_parse_error& e) {
            CHECK(e.line == line);
        }
    };
    expect_line("machine int5\n", 1);
    expect_line("machine int4\nvar x [-1, 1]\n", 2);
    expect_line("machine int4\nvar x in [2, 1]\n", 2);
    expect_line("machine int4\nvar x in [-1, 1]\nquery q1 sum: x +\n", 3);
    expect_line("machine int4\nrel x + y in [0, 1]\n", 2); // x, y unbound
    expect_line("machine int4\nbogus line\n", 2);
    expect_line("var x in [0, 1]\n", 1); // missing machine line
}

TEST_CASE("pair facts normalize both orders and both signs") {
    const char* header = "machine int4\nvar a in [0, 3]\nvar b in [0, 3]\n";
    CHECK(parse(header + std::string("rel b + a in [0, 2]\n")).env.pair_fact({"a"}, 1, {"b"}, 1) ==
          Interval(0, 2));
    CHECK(parse(header + std::string("rel b - a in [0, 2]\n")).env.pair_fact({"a"}, -1, {"b"}, 1) ==
          Interval(0, 2));
    CHECK(parse(header + std::string("rel -a - b in [-2, 0]\n")).env.pair_fact({"a"}, 1, {"b"}, 1) ==
          Interval(0, 2));
}

TEST_CASE("reports round-trip through the tab-separated form") {
    std::vector<ReportRecord> records = {
        {"q1", "sum", "repaired", "x + (y + z)", 12},
        {"q2", "rel", "safe", "-", 3},
        {"q3", "sum", "unrepairable", "-", 7},
    };
    std::ostringstream out;
    write_report(out, records);
    std::istringstream in(out.str());
    auto parsed = parse_report(in);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed == records);
    CHECK(parsed[0].micros == 12);
}

TEST_CASE("query runner dispatches by kind and domain") {
    Problem p = parse(
        "machine int4\n"
        "var x in [-2, 2]\n"
        "var y in [-1, 3]\n"
        "var z in [-1, 4]\n"
        "rel y + z in [-2, 4]\n"
        "query q1 sum: x + y + z\n");
    ReportRecord boxed = run_query(p.queries[0], p.env, p.machine, Domain::Box);
    CHECK(boxed.outcome == "unrepairable");
    ReportRecord oct = run_query(p.queries[0], p.env, p.machine, Domain::Oct);
    CHECK(oct.outcome == "repaired");
    CHECK(oct.expr == "x + (y + z)");
}
