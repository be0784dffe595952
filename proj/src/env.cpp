// SPDX-License-Identifier: Apache-2.0

#include "ovf/env.hpp"

namespace ovf {

void AbstractEnv::set_unary(const VarId& v, Interval iv) {
    unary_.insert_or_assign(v, std::move(iv));
}

const Interval& AbstractEnv::unary(const VarId& v) const {
    auto it = unary_.find(v);
    if (it == unary_.end())
        throw unbound_variable_error(v.display());
    return it->second;
}

const Interval* AbstractEnv::find_unary(const VarId& v) const {
    auto it = unary_.find(v);
    return it == unary_.end() ? nullptr : &it->second;
}

void AbstractEnv::add_pair(const VarId& a, const VarId& b, int sign, const Interval& iv) {
    if (a == b)
        throw error("pair fact needs two distinct variables: " + a.display());
    unary(a);
    unary(b);
    if (a < b) {
        pairs_.insert_or_assign(PairKey{a, b, sign}, iv);
    } else if (sign > 0) {
        pairs_.insert_or_assign(PairKey{b, a, sign}, iv);
    } else {
        // a - b in [lo, hi]  ==  b - a in [-hi, -lo]
        pairs_.insert_or_assign(PairKey{b, a, sign}, negate(iv));
    }
}

void AbstractEnv::add_template(TemplateConstraint t) {
    if (t.coeffs.empty())
        throw error("template fact with no terms");
    for (const auto& [v, c] : t.coeffs) {
        unary(v);
        if (c == 0)
            throw error("template fact with zero coefficient on " + v.display());
    }
    templates_.push_back(std::move(t));
}

std::optional<Interval> AbstractEnv::pair_fact(const VarId& a, int sa, const VarId& b,
                                               int sb) const {
    // Bound on sa*a + sb*b from a stored fact of matching shape.
    auto lookup = [this](const PairKey& k) -> const Interval* {
        auto it = pairs_.find(k);
        return it == pairs_.end() ? nullptr : &it->second;
    };
    const VarId& lo = a < b ? a : b;
    const VarId& hi = a < b ? b : a;
    int slo = a < b ? sa : sb;
    int shi = a < b ? sb : sa;
    if (slo == shi) {
        // +-(lo + hi)
        if (const Interval* iv = lookup({lo, hi, +1}))
            return slo > 0 ? *iv : negate(*iv);
        return std::nullopt;
    }
    // +-(lo - hi)
    if (const Interval* iv = lookup({lo, hi, -1}))
        return slo > 0 ? *iv : negate(*iv);
    return std::nullopt;
}

AbstractEnv AbstractEnv::with_negated(const VarId& v) const {
    AbstractEnv out = *this;
    out.set_unary(v, negate(unary(v)));
    return out;
}

} // namespace ovf
