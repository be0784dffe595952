// SPDX-License-Identifier: Apache-2.0

#include "ovf/semantics.hpp"

#include "ovf/repair.hpp"

namespace ovf {

namespace {

const Int& lookup(const ConcreteState& sigma, const VarId& v) {
    auto it = sigma.find(v);
    if (it == sigma.end())
        throw unbound_variable_error(v.display());
    return it->second;
}

// Accumulator for checked left-to-right evaluation. A positive first unit is
// a plain variable load and needs no check; a negative first unit is a
// checked negation. Every later unit is one checked addition or subtraction,
// with no intermediate negation of the operand.
class CheckedSum {
  public:
    explicit CheckedSum(const MachineType& m) : m_(m) {}

    bool push(const Int& v, int sign) {
        if (empty_)
            return push_value(sign < 0 ? Int(-v) : v) && (sign > 0 || m_.contains(total_));
        total_ += sign < 0 ? Int(-v) : v;
        return m_.contains(total_);
    }

    bool push_value(const Int& v) {
        if (empty_) {
            total_ = v;
            empty_ = false;
            return true;
        }
        total_ += v;
        return m_.contains(total_);
    }

    Int total() const { return empty_ ? Int(0) : total_; }

  private:
    const MachineType& m_;
    Int total_ = 0;
    bool empty_ = true;
};

} // namespace

EvalResult eval_concrete(const LinearExpr& e, const ConcreteState& sigma, const MachineType& m) {
    CheckedSum acc(m);
    for (const auto& t : e.terms) {
        if (t.coeff == 0)
            continue;
        const Int& v = lookup(sigma, t.var);
        int sign = t.coeff < 0 ? -1 : 1;
        Int count = abs(t.coeff);
        for (Int i = 0; i < count; ++i)
            if (!acc.push(v, sign))
                return EvalResult::err();
    }
    return EvalResult::of(acc.total());
}

EvalResult eval_concrete(const GroupedExpr& e, const ConcreteState& sigma, const MachineType& m) {
    CheckedSum acc(m);
    for (const auto& group : e.groups) {
        // a singleton group is a plain term of the outer sum; parenthesized
        // groups are evaluated as units before joining it
        if (group.size() == 1) {
            if (!acc.push(lookup(sigma, group[0].var), group[0].sign))
                return EvalResult::err();
            continue;
        }
        CheckedSum inner(m);
        for (const auto& sv : group)
            if (!inner.push(lookup(sigma, sv.var), sv.sign))
                return EvalResult::err();
        if (!acc.push_value(inner.total()))
            return EvalResult::err();
    }
    return EvalResult::of(acc.total());
}

Int eval_z(const LinearExpr& e, const ConcreteState& sigma) {
    Int total = 0;
    for (const auto& t : e.terms)
        total += t.coeff * lookup(sigma, t.var);
    return total;
}

Int eval_z(const GroupedExpr& e, const ConcreteState& sigma) {
    return eval_z(flatten(e), sigma);
}

bool eval_rel(RelOp op, const Int& lhs, const Int& rhs) {
    switch (op) {
    case RelOp::Eq: return lhs == rhs;
    case RelOp::Ne: return lhs != rhs;
    case RelOp::Lt: return lhs < rhs;
    case RelOp::Gt: return lhs > rhs;
    case RelOp::Le: return lhs <= rhs;
    case RelOp::Ge: return lhs >= rhs;
    }
    return false;
}

bool check_not_overflow(const LinearExpr& e, const AbstractEnv& env, const MachineType& m) {
    auto units = preprocess(e, env);
    return units_not_overflow(units, m);
}

bool check_not_overflow(const GroupedExpr& e, const AbstractEnv& env, const MachineType& m) {
    Interval partial = Interval::zero();
    bool first = true;
    for (const auto& group : e.groups) {
        // internal prefixes use unary bounds; the group total uses a
        // matching relational fact when one exists
        Interval inner = Interval::zero();
        for (std::size_t i = 0; i < group.size(); ++i) {
            const auto& sv = group[i];
            Interval b = env.unary(sv.var);
            if (sv.sign < 0)
                b = negate(b);
            inner = add(inner, b);
            if (group.size() >= 2 && i + 1 < group.size() && !within_machine(inner, m))
                return false;
        }
        Interval weight = inner;
        if (group.size() == 2) {
            if (auto fact =
                    env.pair_fact(group[0].var, group[0].sign, group[1].var, group[1].sign))
                weight = *fact;
        } else if (group.size() > 2) {
            // match a template fact: per-name signed multiplicities
            std::map<VarId, Int> need;
            for (const auto& sv : group)
                need[sv.var] += sv.sign;
            for (int dir : {+1, -1}) {
                for (const auto& t : env.templates()) {
                    if (t.coeffs.size() != need.size())
                        continue;
                    bool match = true;
                    for (const auto& [v, c] : t.coeffs) {
                        auto it = need.find(v);
                        if (it == need.end() || it->second != dir * c) {
                            match = false;
                            break;
                        }
                    }
                    if (match) {
                        weight = dir > 0 ? t.bound : negate(t.bound);
                        dir = 0; // found
                        break;
                    }
                }
                if (dir == 0)
                    break;
            }
        }
        if (group.size() >= 2 && !within_machine(weight, m))
            return false;
        partial = first ? weight : add(partial, weight);
        first = false;
        if (!within_machine(partial, m))
            return false;
    }
    return true;
}

Interval eval_interval(const LinearExpr& e, const AbstractEnv& env) {
    Interval total = Interval::zero();
    for (const auto& t : e.terms)
        total = add(total, scale(env.unary(t.var), t.coeff));
    return total;
}

} // namespace ovf
