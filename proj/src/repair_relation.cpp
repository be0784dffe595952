// SPDX-License-Identifier: Apache-2.0
//
// Comparison refactoring: while a side is unrepairable, move the unmoved
// term farthest from zero (whose interval excludes the machine minimum, so
// its negation stays representable) to the other side and negate it. Each
// occurrence moves at most once.

#include "ovf/repair.hpp"

#include <algorithm>

namespace ovf {

namespace {

struct Occurrence {
    std::size_t id;
    VarId origin;
    int sign;
    Interval bound;
};

std::vector<UnitTerm> as_units(const std::vector<Occurrence>& side) {
    std::vector<UnitTerm> units;
    units.reserve(side.size());
    for (const auto& o : side)
        units.push_back({o.origin, o.sign, o.bound});
    return units;
}

Interval side_interval(const std::vector<Occurrence>& side) {
    Interval total = Interval::zero();
    for (const auto& o : side)
        total = add(total, o.bound);
    return total;
}

// select: maximal distance from zero among intervals excluding the machine
// minimum; ties by lowest occurrence id.
const Occurrence* select_occurrence(const std::vector<Occurrence>& side,
                                    const std::vector<bool>& moved, const MachineType& m) {
    const Occurrence* best = nullptr;
    Int min = m.min();
    for (const auto& o : side) {
        if (moved[o.id] || o.bound.contains(min))
            continue;
        if (!best || distance_from_zero(o.bound) > distance_from_zero(best->bound) ||
            (distance_from_zero(o.bound) == distance_from_zero(best->bound) && o.id < best->id))
            best = &o;
    }
    return best;
}

LinearExpr side_expr(const std::vector<Occurrence>& side, const SumRepairResult& rep) {
    auto units = as_units(side);
    LinearExpr out;
    for (std::size_t idx : rep.order)
        out.terms.push_back({Int(units[idx].sign), units[idx].origin});
    return out;
}

} // namespace

RepairOutcome repair_relation(const BoolExpr& b, const AbstractEnv& env, const MachineType& m,
                              RepairStats* stats) {
    std::vector<Occurrence> lhs, rhs;
    std::size_t next_id = 0;
    for (const auto& u : preprocess(b.lhs, env))
        lhs.push_back({next_id++, u.origin, u.sign, u.bound});
    for (const auto& u : preprocess(b.rhs, env))
        rhs.push_back({next_id++, u.origin, u.sign, u.bound});

    std::vector<bool> moved(next_id, false);
    std::size_t moves = 0;

    while (true) {
        auto lu = as_units(lhs);
        auto ru = as_units(rhs);
        SumRepairResult lrep = repair_units(lu, m, stats);
        SumRepairResult rrep = repair_units(ru, m, stats);
        bool lok = lrep.kind != RepairOutcome::Kind::Unrepairable;
        bool rok = rrep.kind != RepairOutcome::Kind::Unrepairable;
        if (lok && rok) {
            if (moves == 0 && lrep.kind == RepairOutcome::Kind::AlreadySafe &&
                rrep.kind == RepairOutcome::Kind::AlreadySafe)
                return RepairOutcome::already_safe();
            RepairOutcome o;
            o.kind = RepairOutcome::Kind::Repaired;
            o.expr = BoolExpr{side_expr(lhs, lrep), b.op, side_expr(rhs, rrep)};
            o.certificate = lrep.certificate;
            o.certificate.insert(o.certificate.end(), rrep.certificate.begin(),
                                 rrep.certificate.end());
            return o;
        }

        // move from the side farther from zero; ties favor the left
        bool from_left = distance_from_zero(side_interval(lhs)) >=
                         distance_from_zero(side_interval(rhs));
        auto& src = from_left ? lhs : rhs;
        auto& dst = from_left ? rhs : lhs;
        const Occurrence* pick = select_occurrence(src, moved, m);
        if (!pick)
            return RepairOutcome::unrepairable(
                "no movable term left on the " + std::string(from_left ? "left" : "right") +
                " side");
        Occurrence negated{pick->id, pick->origin, -pick->sign, negate(pick->bound)};
        moved[pick->id] = true;
        src.erase(std::find_if(src.begin(), src.end(),
                               [&](const Occurrence& o) { return o.id == negated.id; }));
        dst.push_back(std::move(negated));
        ++moves;
        if (stats)
            ++stats->iterations;
    }
}

} // namespace ovf
