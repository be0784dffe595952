// SPDX-License-Identifier: Apache-2.0
//
// Abstract environments: unary interval bounds per variable plus optional
// octagon pair facts and linear template facts. Environments are consumed as
// produced by an analyzer; no fixpoint or closure is computed here.

#pragma once

#include "ovf/expr.hpp"
#include "ovf/interval.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace ovf {

// Key for a pair fact. sign = +1 bounds a+b, sign = -1 bounds a-b.
// Keys are normalized so that a < b.
struct PairKey {
    VarId a;
    VarId b;
    int sign;

    auto operator<=>(const PairKey&) const = default;
};

struct TemplateConstraint {
    std::vector<std::pair<VarId, Int>> coeffs; // nonzero coefficients
    Interval bound;
};

class AbstractEnv {
  public:
    void set_unary(const VarId& v, Interval iv);

    // Throws unbound_variable_error if absent.
    const Interval& unary(const VarId& v) const;
    const Interval* find_unary(const VarId& v) const;
    const std::map<VarId, Interval>& unary_map() const { return unary_; }

    // a + b (sign +1) or a - b (sign -1) in iv. Both variables must already
    // have unary bounds. The key is normalized; for a > b with sign -1 the
    // interval is flipped accordingly.
    void add_pair(const VarId& a, const VarId& b, int sign, const Interval& iv);

    void add_template(TemplateConstraint t);
    const std::vector<TemplateConstraint>& templates() const { return templates_; }
    const std::map<PairKey, Interval>& pairs() const { return pairs_; }

    // Bound on sa*a + sb*b derivable from an explicitly stored pair fact,
    // if one exists. No octagon closure: facts of the wrong sign shape are
    // never fabricated from the stored ones.
    std::optional<Interval> pair_fact(const VarId& a, int sa, const VarId& b, int sb) const;

    // Fresh environment with v's unary interval negated, tracking a term
    // that moved across a relation with its sign flipped.
    AbstractEnv with_negated(const VarId& v) const;

  private:
    std::map<VarId, Interval> unary_;
    std::map<PairKey, Interval> pairs_;
    std::vector<TemplateConstraint> templates_;
};

} // namespace ovf
