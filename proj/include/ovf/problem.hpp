// SPDX-License-Identifier: Apache-2.0
//
// Problem files bundle a machine type, analyzer facts and queries in a
// line-oriented text format; reports are TSV, one record per query.
//
//   # comment
//   machine int32
//   var x in [-100, 100]
//   rel x + y in [-50, 50]
//   rel x - z in [0, 10]
//   template 2*x + 3*y in [-8, 8]
//   query q1 sum: x + 2*y + z
//   query q2 rel: x + y <= z
//   repair q1 sum: y + x + y + z        (expected output, for verify runs)
//   repair q1 group: (x + y) + y + z

#pragma once

#include "ovf/env.hpp"
#include "ovf/expr.hpp"
#include "ovf/machine.hpp"
#include "ovf/repair.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ovf {

struct Query {
    enum class Kind { Sum, Rel };

    std::string id;
    Kind kind;
    LinearExpr sum; // valid when kind == Sum
    BoolExpr rel;   // valid when kind == Rel
};

const char* query_kind_text(Query::Kind k);

using RepairedExpr = std::variant<LinearExpr, GroupedExpr, BoolExpr>;

struct Problem {
    MachineType machine = MachineType::make_signed(32);
    AbstractEnv env;
    std::vector<Query> queries;
    std::map<std::string, RepairedExpr> repairs; // query id -> expected repair
};

class problem_parse_error : public error {
  public:
    problem_parse_error(const std::string& what, std::size_t line)
        : error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

Problem parse_problem(std::istream& in);
Problem parse_problem_file(const std::string& path);

// Which facts the repair may lean on: Box restricts to unary intervals (sums
// go through the greedy reorder), Oct and Template admit the relational
// search.
enum class Domain { Box, Oct, Template };
std::optional<Domain> parse_domain(std::string_view text);

struct ReportRecord {
    std::string id;
    std::string kind;    // "sum" | "rel"
    std::string outcome; // "safe" | "repaired" | "unrepairable"
    std::string expr;    // repaired expression text, "-" otherwise
    long long micros = 0;

    friend bool operator==(const ReportRecord& a, const ReportRecord& b) {
        return a.id == b.id && a.kind == b.kind && a.outcome == b.outcome && a.expr == b.expr;
    }
};

// Run one query; micros is filled by the caller when timing.
ReportRecord run_query(const Query& q, const AbstractEnv& env, const MachineType& m,
                       Domain domain, RepairStats* stats = nullptr);

RepairOutcome repair_query(const Query& q, const AbstractEnv& env, const MachineType& m,
                           Domain domain, RepairStats* stats = nullptr);

void write_report(std::ostream& os, const std::vector<ReportRecord>& records);
std::vector<ReportRecord> parse_report(std::istream& in);

} // namespace ovf
