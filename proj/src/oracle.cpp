// SPDX-License-Identifier: Apache-2.0

#include "ovf/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace ovf {

namespace {

bool prefixes_within(std::span<const UnitTerm> units, const std::vector<std::size_t>& order,
                     const MachineType& m) {
    Interval partial = Interval::zero();
    for (std::size_t idx : order) {
        partial = add(partial, units[idx].bound);
        if (!within_machine(partial, m))
            return false;
    }
    return true;
}

} // namespace

OracleVerdict brute_force_permutations(std::span<const UnitTerm> units, const MachineType& m,
                                       std::size_t cap) {
    if (units.size() > cap)
        throw cap_exceeded_error("permutation oracle limited to " + std::to_string(cap) +
                                 " terms, got " + std::to_string(units.size()));
    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), 0);
    do {
        if (prefixes_within(units, order, m)) {
            OracleVerdict v;
            v.safe_exists = true;
            v.witness_order = order;
            return v;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return {};
}

namespace {

// Exhaustive path enumeration at occurrence granularity. Steps mirror the
// search the repair algorithm prunes: any uncovered occurrence, any
// fact-backed pair of uncovered occurrences of distinct variables, any
// occurrence multiset matching a template in either direction.
class PathOracle {
  public:
    PathOracle(std::span<const UnitTerm> units, const AbstractEnv& env, const MachineType& m)
        : units_(units), env_(env), m_(m), covered_(units.size(), false) {}

    bool search(std::vector<std::vector<std::size_t>>& path_out) {
        return dfs(Interval::zero(), path_out);
    }

  private:
    bool all_covered() const {
        return std::find(covered_.begin(), covered_.end(), false) == covered_.end();
    }

    bool internal_prefixes_ok(const std::vector<std::size_t>& ids) const {
        Interval inner = Interval::zero();
        for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
            inner = add(inner, units_[ids[i]].bound);
            if (!within_machine(inner, m_))
                return false;
        }
        return true;
    }

    bool try_step(std::vector<std::size_t> ids, const Interval& weight, const Interval& partial,
                  std::vector<std::vector<std::size_t>>& path_out) {
        std::sort(ids.begin(), ids.end());
        if (ids.size() >= 2 && (!within_machine(weight, m_) || !internal_prefixes_ok(ids)))
            return false;
        Interval next = add(partial, weight);
        if (!within_machine(next, m_))
            return false;
        for (std::size_t id : ids)
            covered_[id] = true;
        path_out.push_back(ids);
        if (dfs(next, path_out))
            return true;
        path_out.pop_back();
        for (std::size_t id : ids)
            covered_[id] = false;
        return false;
    }

    // every way to pick the occurrences a template instance needs
    bool try_template_picks(const TemplateConstraint& t, int dir, std::size_t entry,
                            std::vector<std::size_t>& picked, const Interval& partial,
                            std::vector<std::vector<std::size_t>>& path_out) {
        if (entry == t.coeffs.size()) {
            Interval w = dir > 0 ? t.bound : negate(t.bound);
            return try_step(picked, w, partial, path_out);
        }
        const auto& [v, coeff] = t.coeffs[entry];
        int want_sign = (coeff > 0 ? 1 : -1) * dir;
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < units_.size(); ++i)
            if (!covered_[i] && units_[i].origin == v && units_[i].sign == want_sign &&
                std::find(picked.begin(), picked.end(), i) == picked.end())
                pool.push_back(i);
        Int need = abs(coeff);
        if (pool.size() < need)
            return false;
        std::vector<bool> choose(pool.size(), false);
        std::fill(choose.begin(), choose.begin() + static_cast<std::size_t>(need), true);
        // enumerate combinations via permutations of the selection mask
        std::sort(choose.begin(), choose.end(), std::greater<>());
        do {
            std::size_t before = picked.size();
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (choose[i])
                    picked.push_back(pool[i]);
            if (try_template_picks(t, dir, entry + 1, picked, partial, path_out))
                return true;
            picked.resize(before);
        } while (std::prev_permutation(choose.begin(), choose.end()));
        return false;
    }

    bool dfs(const Interval& partial, std::vector<std::vector<std::size_t>>& path_out) {
        if (all_covered())
            return true;
        for (std::size_t i = 0; i < units_.size(); ++i) {
            if (covered_[i])
                continue;
            if (try_step({i}, units_[i].bound, partial, path_out))
                return true;
        }
        for (std::size_t i = 0; i < units_.size(); ++i) {
            if (covered_[i])
                continue;
            for (std::size_t j = i + 1; j < units_.size(); ++j) {
                if (covered_[j] || units_[i].origin == units_[j].origin)
                    continue;
                auto fact = env_.pair_fact(units_[i].origin, units_[i].sign, units_[j].origin,
                                           units_[j].sign);
                if (fact && try_step({i, j}, *fact, partial, path_out))
                    return true;
            }
        }
        for (const auto& t : env_.templates()) {
            for (int dir : {+1, -1}) {
                std::vector<std::size_t> picked;
                if (try_template_picks(t, dir, 0, picked, partial, path_out))
                    return true;
            }
        }
        return false;
    }

    std::span<const UnitTerm> units_;
    const AbstractEnv& env_;
    const MachineType& m_;
    std::vector<bool> covered_;
};

} // namespace

OracleVerdict brute_force_paths(std::span<const UnitTerm> units, const AbstractEnv& env,
                                const MachineType& m, std::size_t cap) {
    if (units.size() > cap)
        throw cap_exceeded_error("path oracle limited to " + std::to_string(cap) +
                                 " occurrences, got " + std::to_string(units.size()));
    PathOracle oracle(units, env, m);
    std::vector<std::vector<std::size_t>> path;
    if (oracle.search(path)) {
        OracleVerdict v;
        v.safe_exists = true;
        v.witness_path = std::move(path);
        return v;
    }
    return {};
}

namespace {

// variable domains: unary intervals clipped to the machine range
std::vector<std::pair<VarId, Interval>> state_domains(const AbstractEnv& env,
                                                      const MachineType& m) {
    std::vector<std::pair<VarId, Interval>> doms;
    for (const auto& [v, iv] : env.unary_map()) {
        Int lo = iv.lo < m.min() ? m.min() : iv.lo;
        Int hi = iv.hi > m.max() ? m.max() : iv.hi;
        if (lo > hi)
            throw error("unary interval of " + v.display() + " misses the " + m.name() +
                        " range entirely");
        doms.emplace_back(v, Interval(lo, hi));
    }
    return doms;
}

// a state belongs to the concretization only if it satisfies the relational
// facts as well as the unary boxes
bool satisfies_facts(const ConcreteState& sigma, const AbstractEnv& env) {
    for (const auto& [key, iv] : env.pairs()) {
        Int v = sigma.at(key.a) + key.sign * sigma.at(key.b);
        if (!iv.contains(v))
            return false;
    }
    for (const auto& t : env.templates()) {
        Int v = 0;
        for (const auto& [var, c] : t.coeffs)
            v += c * sigma.at(var);
        if (!t.bound.contains(v))
            return false;
    }
    return true;
}

template <typename Check>
OracleVerdict enumerate_states(const AbstractEnv& env, const MachineType& m,
                               std::size_t state_cap, Check&& holds) {
    auto doms = state_domains(env, m);
    Int total = 1;
    for (const auto& [v, iv] : doms) {
        total *= iv.width() + 1;
        if (total > state_cap)
            throw cap_exceeded_error("state space exceeds cap " + std::to_string(state_cap));
    }
    ConcreteState sigma;
    for (const auto& [v, iv] : doms)
        sigma[v] = iv.lo;
    OracleVerdict verdict;
    verdict.safe_exists = true;
    while (true) {
        if (satisfies_facts(sigma, env) && !holds(sigma)) {
            verdict.safe_exists = false;
            verdict.counterexample = sigma;
            return verdict;
        }
        // odometer increment over the domains
        std::size_t k = 0;
        for (; k < doms.size(); ++k) {
            Int& v = sigma[doms[k].first];
            if (v < doms[k].second.hi) {
                ++v;
                break;
            }
            v = doms[k].second.lo;
        }
        if (k == doms.size())
            return verdict;
    }
}

EvalResult eval_any(const AnySum& e, const ConcreteState& sigma, const MachineType& m) {
    return std::visit([&](const auto& x) { return eval_concrete(x, sigma, m); }, e);
}

Int eval_any_z(const AnySum& e, const ConcreteState& sigma) {
    return std::visit([&](const auto& x) { return eval_z(x, sigma); }, e);
}

} // namespace

OracleVerdict exhaustive_concrete_check(const AnySum& original, const AnySum& repaired,
                                        const AbstractEnv& env, const MachineType& m,
                                        std::size_t state_cap) {
    return enumerate_states(env, m, state_cap, [&](const ConcreteState& sigma) {
        EvalResult r = eval_any(repaired, sigma, m);
        return !r.is_err() && *r.value == eval_any_z(original, sigma);
    });
}

OracleVerdict exhaustive_concrete_check(const BoolExpr& original, const BoolExpr& repaired,
                                        const AbstractEnv& env, const MachineType& m,
                                        std::size_t state_cap) {
    return enumerate_states(env, m, state_cap, [&](const ConcreteState& sigma) {
        EvalResult lhs = eval_concrete(repaired.lhs, sigma, m);
        EvalResult rhs = eval_concrete(repaired.rhs, sigma, m);
        if (lhs.is_err() || rhs.is_err())
            return false;
        bool want = eval_rel(original.op, eval_z(original.lhs, sigma), eval_z(original.rhs, sigma));
        bool got = eval_rel(repaired.op, *lhs.value, *rhs.value);
        return want == got;
    });
}

std::size_t concrete_state_count(const AbstractEnv& env, const MachineType& m,
                                 std::size_t limit) {
    auto doms = state_domains(env, m);
    Int total = 1;
    for (const auto& [v, iv] : doms) {
        total *= iv.width() + 1;
        if (total > limit)
            return limit + 1;
    }
    return static_cast<std::size_t>(total);
}

} // namespace ovf
