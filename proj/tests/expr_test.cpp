// SPDX-License-Identifier: Apache-2.0

#include "ovf/expr.hpp"

#include <doctest.h>

using namespace ovf;

TEST_CASE("parse and print linear expressions") {
    LinearExpr e = parse_linear("2*x + y - 3*z");
    REQUIRE(e.terms.size() == 3);
    CHECK(e.terms[0] == Term{2, {"x"}});
    CHECK(e.terms[1] == Term{1, {"y"}});
    CHECK(e.terms[2] == Term{-3, {"z"}});
    CHECK(to_string(e) == "2*x + y - 3*z");

    CHECK(to_string(parse_linear("-x")) == "-x");
    CHECK(to_string(parse_linear("  x1+x2 ")) == "x1 + x2");
    CHECK(to_string(parse_linear("arr.Length - start")) == "arr.Length - start");
}

TEST_CASE("parse errors carry a column") {
    CHECK_THROWS_AS(parse_linear(""), parse_error);
    CHECK_THROWS_AS(parse_linear("x +"), parse_error);
    CHECK_THROWS_AS(parse_linear("2 x"), parse_error); // missing '*'
    CHECK_THROWS_AS(parse_linear("x y"), parse_error); // trailing input
    CHECK_THROWS_AS(parse_linear("(x + y)"), parse_error);
    try {
        parse_linear("x + $");
    } catch (const parse_error& e) {
        CHECK(e.column == 4);
        CHECK(std::string(e.what()).find("column 5") != std::string::npos);
    }
}

TEST_CASE("parse boolean expressions") {
    BoolExpr b = parse_bool("x + y <= 2*z");
    CHECK(b.op == RelOp::Le);
    CHECK(to_string(b) == "x + y <= 2*z");
    CHECK(parse_bool("x == y").op == RelOp::Eq);
    CHECK(parse_bool("x != y").op == RelOp::Ne);
    CHECK(parse_bool("x < y").op == RelOp::Lt);
    CHECK(parse_bool("x >= y").op == RelOp::Ge);
    CHECK_THROWS_AS(parse_bool("x + y"), parse_error);
}

TEST_CASE("parse and print grouped expressions") {
    GroupedExpr g = parse_grouped("x + (y + z) - (w - v)");
    REQUIRE(g.groups.size() == 3);
    CHECK(g.groups[0] == std::vector<SignedVar>{{1, {"x"}}});
    CHECK(g.groups[1] == std::vector<SignedVar>{{1, {"y"}}, {1, {"z"}}});
    // a leading '-' distributes over the group
    CHECK(g.groups[2] == std::vector<SignedVar>{{-1, {"w"}}, {1, {"v"}}});
    CHECK(to_string(g) == "x + (y + z) + (-w + v)");
    CHECK(to_string(parse_grouped(to_string(g))) == to_string(g));
    CHECK_THROWS_AS(parse_grouped("2*x + (y + z)"), parse_error);
}

TEST_CASE("flatten erases grouping") {
    GroupedExpr g = parse_grouped("x + (y + z)");
    CHECK(flatten(g) == parse_linear("x + y + z"));
}

TEST_CASE("canonicalize merges occurrences and drops zeros") {
    auto c = canonicalize(parse_linear("x + y + x - 2*z"));
    REQUIRE(c.size() == 3);
    CHECK(c["x"] == 2);
    CHECK(c["y"] == 1);
    CHECK(c["z"] == -2);
    CHECK(canonicalize(parse_linear("x - x")).empty());

    // renamed copies of a variable share the Z-level coefficient
    LinearExpr copies{{{1, {"x", 0}}, {1, {"x", 1}}}};
    CHECK(canonicalize(copies)["x"] == 2);
}

TEST_CASE("z-equivalence of sums") {
    CHECK(z_equivalent(parse_linear("x + y + x"), parse_linear("2*x + y")));
    CHECK(z_equivalent(parse_linear("x - x + y"), parse_linear("y")));
    CHECK_FALSE(z_equivalent(parse_linear("x + y"), parse_linear("x - y")));
}

TEST_CASE("z-equivalence of relations compares the difference") {
    CHECK(z_equivalent(parse_bool("x + y <= z"), parse_bool("x <= z - y")));
    CHECK(z_equivalent(parse_bool("start + count <= arr.Length"),
                       parse_bool("start <= arr.Length - count")));
    CHECK_FALSE(z_equivalent(parse_bool("x <= z"), parse_bool("x < z")));
    CHECK_FALSE(z_equivalent(parse_bool("x + y <= z"), parse_bool("x - y <= z")));
}

TEST_CASE("variable display includes the occurrence index") {
    CHECK(VarId{"x", 0}.display() == "x");
    CHECK(VarId{"x", 2}.display() == "x#2");
}
