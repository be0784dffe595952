// SPDX-License-Identifier: Apache-2.0
//
// Brute-force ground truth: permutation enumeration, path enumeration over
// the relational graph, and exhaustive concrete-state checking. Kept
// independent of the repair algorithms it validates.

#pragma once

#include "ovf/env.hpp"
#include "ovf/expr.hpp"
#include "ovf/machine.hpp"
#include "ovf/repair.hpp"
#include "ovf/semantics.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace ovf {

struct OracleVerdict {
    bool safe_exists = false;
    // For permutations: a safe index order. For paths: the step occurrence
    // sets along a safe path.
    std::optional<std::vector<std::size_t>> witness_order;
    std::optional<std::vector<std::vector<std::size_t>>> witness_path;
    std::optional<ConcreteState> counterexample;
};

// Enumerate all k! orders in lexicographic order; verdict true iff some
// order keeps every prefix interval sum within m. Throws cap_exceeded_error
// for k > cap.
OracleVerdict brute_force_permutations(std::span<const UnitTerm> units, const MachineType& m,
                                       std::size_t cap = 8);

// Enumerate every path from the empty set to full coverage built from
// unary, pair and template steps; verdict true iff some path's prefixes all
// stay within m. Throws cap_exceeded_error for |units| > cap.
OracleVerdict brute_force_paths(std::span<const UnitTerm> units, const AbstractEnv& env,
                                const MachineType& m, std::size_t cap = 5);

using AnySum = std::variant<LinearExpr, GroupedExpr>;

// Iterate every state in the concretization of env clipped to m's range;
// confirm the repaired expression never errs and agrees with the original
// over Z. Returns the first counterexample otherwise. Throws
// cap_exceeded_error when the state count exceeds state_cap.
OracleVerdict exhaustive_concrete_check(const AnySum& original, const AnySum& repaired,
                                        const AbstractEnv& env, const MachineType& m,
                                        std::size_t state_cap = 1000000);
OracleVerdict exhaustive_concrete_check(const BoolExpr& original, const BoolExpr& repaired,
                                        const AbstractEnv& env, const MachineType& m,
                                        std::size_t state_cap = 1000000);

// Number of states the exhaustive check would enumerate, saturated at
// limit+1.
std::size_t concrete_state_count(const AbstractEnv& env, const MachineType& m, std::size_t limit);

} // namespace ovf
