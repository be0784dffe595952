// SPDX-License-Identifier: Apache-2.0
//
// Concrete checked evaluation (left-to-right, like C# or Java), the exact Z
// evaluation, the interval not-overflow checker, and the most precise
// unbounded interval evaluation.

#pragma once

#include "ovf/env.hpp"
#include "ovf/expr.hpp"
#include "ovf/machine.hpp"

#include <map>
#include <optional>

namespace ovf {

using ConcreteState = std::map<VarId, Int>;

// Value(v) or Err; Value implies the result is machine-representable.
struct EvalResult {
    std::optional<Int> value;

    static EvalResult err() { return {std::nullopt}; }
    static EvalResult of(Int v) { return {std::move(v)}; }
    bool is_err() const { return !value.has_value(); }
};

// Checked machine evaluation. Coefficients are applied as repeated
// additions, each intermediate checked against m; groups are evaluated as
// units, innermost first.
EvalResult eval_concrete(const LinearExpr& e, const ConcreteState& sigma, const MachineType& m);
EvalResult eval_concrete(const GroupedExpr& e, const ConcreteState& sigma, const MachineType& m);

// Exact evaluation over Z; never overflows.
Int eval_z(const LinearExpr& e, const ConcreteState& sigma);
Int eval_z(const GroupedExpr& e, const ConcreteState& sigma);

bool eval_rel(RelOp op, const Int& lhs, const Int& rhs);

// Interval partial-sum checker: true iff every prefix of the left-to-right
// evaluation stays within m. Sound: true implies no state in the
// concretization of env makes eval_concrete return Err.
bool check_not_overflow(const LinearExpr& e, const AbstractEnv& env, const MachineType& m);
bool check_not_overflow(const GroupedExpr& e, const AbstractEnv& env, const MachineType& m);

// Most precise evaluation of e using unbounded interval arithmetic. Exact
// when every variable name occurs once, a sound over-approximation
// otherwise.
Interval eval_interval(const LinearExpr& e, const AbstractEnv& env);

} // namespace ovf
