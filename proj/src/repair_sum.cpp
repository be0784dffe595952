// SPDX-License-Identifier: Apache-2.0
//
// Greedy sum refactoring: partition unit terms by the sign of their
// interval, keep picking a feasible strictly-signed term that re-centers the
// partial sum, then append the zero-straddling terms in input order.

#include "ovf/repair.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ovf {

namespace {

// Complete search over the strictly-signed terms, used only when the greedy
// gets stuck. The greedy can fail on repairable inputs when the remaining
// terms overflow on mixed bounds (some only above, some only below); a
// counterexample at 4 bits is [-7,-7], [-3,-2], [1,5], [7,7], where the
// greedy picks [-3,-2] then [1,5] and stalls although starting from [7,7]
// succeeds. Feasibility of an order depends only on how many terms of each
// distinct interval have been placed, so the search runs over count vectors
// with memoized dead states and is exact.
struct StrictSearch {
    struct Class {
        Interval bound;
        std::vector<std::size_t> ids; // unit indices, ascending
        std::size_t used = 0;
    };

    std::vector<Class> classes;
    std::set<std::vector<std::size_t>> dead;
    std::vector<std::size_t> order;
    RepairStats* stats;

    explicit StrictSearch(std::span<const UnitTerm> units,
                          const std::vector<std::size_t>& strict, RepairStats* s)
        : stats(s) {
        std::map<std::pair<Int, Int>, std::size_t> index;
        for (std::size_t j : strict) {
            const Interval& b = units[j].bound;
            auto [it, fresh] = index.try_emplace({b.lo, b.hi}, classes.size());
            if (fresh)
                classes.push_back({b, {}, 0});
            classes[it->second].ids.push_back(j);
        }
    }

    bool run(const Interval& partial, const MachineType& m, std::size_t placed,
             std::size_t total) {
        if (placed == total)
            return true;
        // feasible classes first by the greedy's own preference
        std::vector<std::pair<Int, std::size_t>> ranked;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (classes[c].used == classes[c].ids.size())
                continue;
            Interval next = add(partial, classes[c].bound);
            if (stats)
                ++stats->operations;
            if (within_machine(next, m))
                ranked.emplace_back(abs(next.lo + next.hi), c);
        }
        std::sort(ranked.begin(), ranked.end());
        for (auto& [mid, c] : ranked) {
            classes[c].used++;
            order.push_back(classes[c].ids[classes[c].used - 1]);
            std::vector<std::size_t> key;
            for (const auto& cl : classes)
                key.push_back(cl.used);
            if (!dead.count(key) &&
                run(add(partial, classes[c].bound), m, placed + 1, total))
                return true;
            dead.insert(std::move(key));
            classes[c].used--;
            order.pop_back();
        }
        return false;
    }
};

} // namespace

const char* outcome_text(RepairOutcome::Kind k) {
    switch (k) {
    case RepairOutcome::Kind::AlreadySafe: return "safe";
    case RepairOutcome::Kind::Repaired: return "repaired";
    case RepairOutcome::Kind::Unrepairable: return "unrepairable";
    }
    return "?";
}

std::vector<UnitTerm> preprocess(const LinearExpr& e, const AbstractEnv& env,
                                 const Int& coefficient_cap) {
    std::vector<UnitTerm> units;
    for (const auto& t : e.terms) {
        if (t.coeff == 0)
            continue;
        Int count = abs(t.coeff);
        if (count > coefficient_cap)
            throw coefficient_cap_error("coefficient " + t.coeff.str() + " on " +
                                        t.var.display() + " exceeds expansion cap " +
                                        coefficient_cap.str());
        const Interval& iv = env.unary(t.var);
        int sign = t.coeff < 0 ? -1 : 1;
        Interval bound = sign < 0 ? negate(iv) : iv;
        for (Int i = 0; i < count; ++i)
            units.push_back({t.var, sign, bound});
    }
    return units;
}

bool units_not_overflow(std::span<const UnitTerm> units, const MachineType& m) {
    Interval partial = Interval::zero();
    for (const auto& u : units) {
        partial = add(partial, u.bound);
        if (!within_machine(partial, m))
            return false;
    }
    return true;
}

SumRepairResult repair_units(std::span<const UnitTerm> units, const MachineType& m,
                             RepairStats* stats) {
    auto count_op = [stats] {
        if (stats)
            ++stats->operations;
    };

    {
        // safe inputs are passed through untouched
        Interval partial = Interval::zero();
        bool safe = true;
        std::vector<Interval> cert;
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < units.size(); ++i) {
            partial = add(partial, units[i].bound);
            count_op();
            if (!within_machine(partial, m)) {
                safe = false;
                break;
            }
            cert.push_back(partial);
            order.push_back(i);
        }
        if (safe)
            return {RepairOutcome::Kind::AlreadySafe, std::move(order), std::move(cert)};
    }

    std::vector<std::size_t> strict; // lo > 0 or hi < 0
    std::vector<std::size_t> tops;   // contains 0
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (units[i].bound.lo > 0 || units[i].bound.hi < 0)
            strict.push_back(i);
        else
            tops.push_back(i);
    }

    Interval partial = Interval::zero();
    std::vector<std::size_t> order;
    std::vector<Interval> cert;
    std::vector<bool> used(units.size(), false);

    for (std::size_t step = 0; step < strict.size(); ++step) {
        // among feasible candidates, take the one whose new partial sum has
        // the smallest |midpoint|; remaining ties go to the lowest index
        bool found = false;
        std::size_t best = 0;
        Int best_mid = 0;
        Interval best_partial = Interval::zero();
        for (std::size_t j : strict) {
            if (used[j])
                continue;
            Interval next = add(partial, units[j].bound);
            count_op();
            if (!within_machine(next, m))
                continue;
            Int mid = abs(next.lo + next.hi); // |midpoint| * 2
            if (!found || mid < best_mid) {
                found = true;
                best = j;
                best_mid = mid;
                best_partial = next;
            }
        }
        if (!found) {
            StrictSearch search(units, strict, stats);
            if (!search.run(Interval::zero(), m, 0, strict.size()))
                return {RepairOutcome::Kind::Unrepairable, {}, {}};
            partial = Interval::zero();
            order.clear();
            cert.clear();
            for (std::size_t j : search.order) {
                partial = add(partial, units[j].bound);
                order.push_back(j);
                cert.push_back(partial);
            }
            break;
        }
        used[best] = true;
        partial = best_partial;
        order.push_back(best);
        cert.push_back(partial);
    }

    for (std::size_t j : tops) {
        partial = add(partial, units[j].bound);
        count_op();
        if (!within_machine(partial, m))
            return {RepairOutcome::Kind::Unrepairable, {}, {}};
        order.push_back(j);
        cert.push_back(partial);
    }

    return {RepairOutcome::Kind::Repaired, std::move(order), std::move(cert)};
}

RepairOutcome repair_sum(const LinearExpr& e, const AbstractEnv& env, const MachineType& m,
                         RepairStats* stats) {
    auto units = preprocess(e, env, kDefaultCoefficientCap);
    auto res = repair_units(units, m, stats);
    switch (res.kind) {
    case RepairOutcome::Kind::AlreadySafe:
        return RepairOutcome::already_safe();
    case RepairOutcome::Kind::Unrepairable:
        return RepairOutcome::unrepairable("no permutation keeps every partial sum in " +
                                           m.name());
    case RepairOutcome::Kind::Repaired: {
        LinearExpr out;
        for (std::size_t idx : res.order)
            out.terms.push_back({Int(units[idx].sign), units[idx].origin});
        RepairOutcome o;
        o.kind = RepairOutcome::Kind::Repaired;
        o.expr = std::move(out);
        o.certificate = std::move(res.certificate);
        return o;
    }
    }
    return RepairOutcome::unrepairable("unreachable");
}

} // namespace ovf
