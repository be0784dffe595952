// SPDX-License-Identifier: Apache-2.0
//
// The three repair algorithms: complete greedy reordering of a linear sum,
// incomplete term-moving for comparisons, and complete backtracking search
// using relational facts.

#pragma once

#include "ovf/env.hpp"
#include "ovf/expr.hpp"
#include "ovf/machine.hpp"
#include "ovf/semantics.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ovf {

inline const Int kDefaultCoefficientCap = 64;

// A +/-1-signed variable occurrence with its sign-adjusted interval.
struct UnitTerm {
    VarId origin;
    int sign; // -1 iff the source coefficient was negative
    Interval bound;
};

// Expand integer coefficients into repeated unit terms; negative
// coefficients become sign -1 with negated bounds, zero coefficients are
// dropped. Throws coefficient_cap_error when |coeff| exceeds cap.
std::vector<UnitTerm> preprocess(const LinearExpr& e, const AbstractEnv& env,
                                 const Int& coefficient_cap = kDefaultCoefficientCap);

// Prefix-sum check over an explicit unit-term sequence.
bool units_not_overflow(std::span<const UnitTerm> units, const MachineType& m);

struct RepairOutcome {
    enum class Kind { AlreadySafe, Repaired, Unrepairable };

    Kind kind;
    std::variant<std::monostate, LinearExpr, GroupedExpr, BoolExpr> expr;
    std::vector<Interval> certificate; // prefix intervals of the repaired order
    std::string reason;                // set for Unrepairable

    static RepairOutcome already_safe() { return {Kind::AlreadySafe, {}, {}, {}}; }
    static RepairOutcome unrepairable(std::string why) {
        return {Kind::Unrepairable, {}, {}, std::move(why)};
    }
};

const char* outcome_text(RepairOutcome::Kind k);

// Operation counters for the complexity smoke checks.
struct RepairStats {
    std::size_t operations = 0; // interval feasibility checks
    std::size_t iterations = 0; // term moves (relation repair)
};

// Algorithm: greedy selection over the partition {lo > 0} / {hi < 0} /
// {contains 0}, complete for linear sums under interval facts.
RepairOutcome repair_sum(const LinearExpr& e, const AbstractEnv& env, const MachineType& m,
                         RepairStats* stats = nullptr);

// Same greedy over an explicit unit-term sequence; order holds indices into
// `units` for AlreadySafe (identity) and Repaired.
struct SumRepairResult {
    RepairOutcome::Kind kind;
    std::vector<std::size_t> order;
    std::vector<Interval> certificate;
};
SumRepairResult repair_units(std::span<const UnitTerm> units, const MachineType& m,
                             RepairStats* stats = nullptr);

// Move maximal-magnitude terms across the relation, negating them, until
// both sides are repairable. Deliberately incomplete: Unrepairable does not
// prove absence of a repair.
RepairOutcome repair_relation(const BoolExpr& b, const AbstractEnv& env, const MachineType& m,
                              RepairStats* stats = nullptr);

// Depth-first search over the implicit graph whose nodes are covered
// occurrence sets; pair and template facts become grouped steps. Complete:
// Unrepairable means no path stays within m.
RepairOutcome repair_with_relations(const LinearExpr& e, const AbstractEnv& env,
                                    const MachineType& m, RepairStats* stats = nullptr);

} // namespace ovf
