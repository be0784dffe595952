// SPDX-License-Identifier: Apache-2.0
//
// Expression AST: linear sums with integer coefficients, comparisons of
// linear sums, grouped (parenthesized) sums, and the Z-level canonical form.

#pragma once

#include "ovf/interval.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace ovf {

// A program variable occurrence. Renamed copies of the same variable share
// the name and differ in the occurrence index; over Z they denote the same
// value.
struct VarId {
    std::string name;
    int occurrence = 0;

    auto operator<=>(const VarId&) const = default;

    std::string display() const {
        if (occurrence == 0)
            return name;
        return name + "#" + std::to_string(occurrence);
    }
};

struct Term {
    Int coeff;
    VarId var;

    friend bool operator==(const Term& a, const Term& b) {
        return a.coeff == b.coeff && a.var == b.var;
    }
};

// Ordered sum of coefficient-scaled variables. Term order is semantically
// significant: machine evaluation is left-to-right.
struct LinearExpr {
    std::vector<Term> terms;

    friend bool operator==(const LinearExpr& a, const LinearExpr& b) {
        return a.terms == b.terms;
    }
};

enum class RelOp { Eq, Ne, Lt, Gt, Le, Ge };

const char* rel_op_text(RelOp op);

struct BoolExpr {
    LinearExpr lhs;
    RelOp op;
    LinearExpr rhs;
};

struct SignedVar {
    int sign; // +1 or -1
    VarId var;

    friend bool operator==(const SignedVar& a, const SignedVar& b) {
        return a.sign == b.sign && a.var == b.var;
    }
};

// A sum of parenthesized groups; each group of size >= 2 is evaluated as a
// unit (its internal sum first), justified by a relational or template
// constraint.
struct GroupedExpr {
    std::vector<std::vector<SignedVar>> groups;

    friend bool operator==(const GroupedExpr& a, const GroupedExpr& b) {
        return a.groups == b.groups;
    }
};

LinearExpr flatten(const GroupedExpr& g);

// Total coefficient per variable name, occurrences merged, zero entries
// dropped. This realizes equivalence over Z.
std::map<std::string, Int> canonicalize(const LinearExpr& e);

bool z_equivalent(const LinearExpr& a, const LinearExpr& b);
bool z_equivalent(const BoolExpr& a, const BoolExpr& b);

std::string to_string(const LinearExpr& e);
std::string to_string(const BoolExpr& b);
std::string to_string(const GroupedExpr& g);

// Textual grammar:
//   expr  := term (('+'|'-') term)*
//   term  := [int '*'] ident | '(' expr ')'     (parens only one level deep)
//   bool  := expr ('=='|'!='|'<'|'>'|'<='|'>=') expr
// Whitespace-insensitive; idents match [A-Za-z_][A-Za-z0-9_.]*.
class parse_error : public error {
  public:
    parse_error(const std::string& what, std::size_t column)
        : error(what + " (column " + std::to_string(column + 1) + ")"), column(column) {}
    std::size_t column;
};

LinearExpr parse_linear(std::string_view text);
GroupedExpr parse_grouped(std::string_view text);
BoolExpr parse_bool(std::string_view text);

} // namespace ovf
