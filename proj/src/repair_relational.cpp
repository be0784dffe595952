// SPDX-License-Identifier: Apache-2.0
//
// Sum refactoring with relational facts: depth-first search over the
// implicit graph whose nodes are covered occurrence sets. Unary steps add
// one occurrence, pair facts add two as a parenthesized group, template
// facts add their expanded occurrence set. Interchangeable copies are
// canonicalized per (variable, sign) class, and failed (coverage, partial)
// states are memoized; both preserve completeness, since successors depend
// only on the covered multiset and the guard only on the partial weight.

#include "ovf/repair.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ovf {

namespace {

struct UnitClass {
    VarId var;
    int sign;
    Interval bound;
    std::vector<std::size_t> unit_ids; // ascending
};

struct Candidate {
    std::vector<std::pair<std::size_t, int>> takes; // class index -> how many units
    Interval weight = Interval::zero();
    std::vector<std::size_t> unit_ids; // ascending, for tie-breaks and output
};

class Search {
  public:
    Search(std::vector<UnitClass> classes, const AbstractEnv& env, const MachineType& m,
           RepairStats* stats)
        : classes_(std::move(classes)), env_(env), m_(m), stats_(stats) {}

    bool run(std::vector<std::vector<SignedVar>>& groups_out, std::vector<Interval>& cert_out) {
        used_.assign(classes_.size(), 0);
        return dfs(Interval::zero(), groups_out, cert_out);
    }

  private:
    bool exhausted() const {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (used_[i] < static_cast<int>(classes_[i].unit_ids.size()))
                return false;
        return true;
    }

    std::string memo_key(const Interval& partial) const {
        std::ostringstream os;
        for (int u : used_)
            os << u << ',';
        os << partial.lo << ',' << partial.hi;
        return os.str();
    }

    // ids the next `count` picks from a class would take
    std::vector<std::size_t> next_ids(std::size_t ci, int count) const {
        std::vector<std::size_t> ids;
        for (int i = 0; i < count; ++i)
            ids.push_back(classes_[ci].unit_ids[used_[ci] + i]);
        return ids;
    }

    bool internal_prefixes_ok(const std::vector<std::pair<std::size_t, int>>& takes) const {
        // a group is evaluated as a unit; its internal prefixes are bounded
        // by the sign-adjusted unary intervals
        struct Item {
            std::size_t id;
            const Interval* bound;
        };
        std::vector<Item> items;
        for (auto [ci, count] : takes)
            for (std::size_t id : next_ids(ci, count))
                items.push_back({id, &classes_[ci].bound});
        std::sort(items.begin(), items.end(),
                  [](const Item& a, const Item& b) { return a.id < b.id; });
        Interval inner = Interval::zero();
        for (std::size_t i = 0; i + 1 < items.size(); ++i) {
            inner = add(inner, *items[i].bound);
            if (!within_machine(inner, m_))
                return false;
        }
        return true;
    }

    std::vector<Candidate> successors() const {
        std::vector<Candidate> out;
        auto remaining = [this](std::size_t ci) {
            return static_cast<int>(classes_[ci].unit_ids.size()) - used_[ci];
        };
        for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
            if (remaining(ci) <= 0)
                continue;
            Candidate c;
            c.takes = {{ci, 1}};
            c.weight = classes_[ci].bound;
            c.unit_ids = next_ids(ci, 1);
            out.push_back(std::move(c));
        }
        for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
            if (remaining(ci) <= 0)
                continue;
            for (std::size_t cj = ci + 1; cj < classes_.size(); ++cj) {
                if (remaining(cj) <= 0 || classes_[ci].var == classes_[cj].var)
                    continue;
                auto fact = env_.pair_fact(classes_[ci].var, classes_[ci].sign, classes_[cj].var,
                                           classes_[cj].sign);
                if (!fact || !within_machine(*fact, m_))
                    continue;
                Candidate c;
                c.takes = {{ci, 1}, {cj, 1}};
                if (!internal_prefixes_ok(c.takes))
                    continue;
                c.weight = *fact;
                c.unit_ids = next_ids(ci, 1);
                auto more = next_ids(cj, 1);
                c.unit_ids.insert(c.unit_ids.end(), more.begin(), more.end());
                std::sort(c.unit_ids.begin(), c.unit_ids.end());
                out.push_back(std::move(c));
            }
        }
        const auto& templates = env_.templates();
        for (std::size_t ti = 0; ti < templates.size(); ++ti) {
            for (int dir : {+1, -1}) {
                const auto& t = templates[ti];
                Candidate c;
                bool ok = true;
                for (const auto& [v, coeff] : t.coeffs) {
                    int want_sign = (coeff > 0 ? 1 : -1) * dir;
                    Int count = abs(coeff);
                    auto it = std::find_if(classes_.begin(), classes_.end(),
                                           [&](const UnitClass& cl) {
                                               return cl.var == v && cl.sign == want_sign;
                                           });
                    std::size_t ci = static_cast<std::size_t>(it - classes_.begin());
                    if (it == classes_.end() || remaining(ci) < count) {
                        ok = false;
                        break;
                    }
                    c.takes.emplace_back(ci, static_cast<int>(count));
                }
                if (!ok)
                    continue;
                Interval w = dir > 0 ? t.bound : negate(t.bound);
                if (!within_machine(w, m_) || !internal_prefixes_ok(c.takes))
                    continue;
                c.weight = w;
                for (auto [ci, count] : c.takes)
                    for (std::size_t id : next_ids(ci, count))
                        c.unit_ids.push_back(id);
                std::sort(c.unit_ids.begin(), c.unit_ids.end());
                out.push_back(std::move(c));
            }
        }
        return out;
    }

    bool dfs(const Interval& partial, std::vector<std::vector<SignedVar>>& groups_out,
             std::vector<Interval>& cert_out) {
        if (exhausted())
            return true;
        std::string key = memo_key(partial);
        if (failed_.count(key))
            return false;

        auto cands = successors();
        // pickOne order: smallest resulting distance from zero, then fewest
        // occurrences, then lowest occurrence ids
        std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
            Int da = distance_from_zero(add(partial, a.weight));
            Int db = distance_from_zero(add(partial, b.weight));
            if (da != db)
                return da < db;
            if (a.unit_ids.size() != b.unit_ids.size())
                return a.unit_ids.size() < b.unit_ids.size();
            return a.unit_ids < b.unit_ids;
        });

        for (const auto& c : cands) {
            Interval next = add(partial, c.weight);
            if (stats_)
                ++stats_->operations;
            if (!within_machine(next, m_))
                continue;
            std::vector<SignedVar> group;
            for (auto [ci, count] : c.takes)
                for (std::size_t id : next_ids(ci, count)) {
                    (void)id;
                    group.push_back({classes_[ci].sign, classes_[ci].var});
                }
            for (auto [ci, count] : c.takes)
                used_[ci] += count;
            groups_out.push_back(std::move(group));
            cert_out.push_back(next);
            if (dfs(next, groups_out, cert_out))
                return true;
            groups_out.pop_back();
            cert_out.pop_back();
            for (auto [ci, count] : c.takes)
                used_[ci] -= count;
        }
        failed_.insert(std::move(key));
        return false;
    }

    std::vector<UnitClass> classes_;
    const AbstractEnv& env_;
    const MachineType& m_;
    RepairStats* stats_;
    std::vector<int> used_;
    std::set<std::string> failed_;
};

} // namespace

RepairOutcome repair_with_relations(const LinearExpr& e, const AbstractEnv& env,
                                    const MachineType& m, RepairStats* stats) {
    auto units = preprocess(e, env, kDefaultCoefficientCap);
    if (units_not_overflow(units, m))
        return RepairOutcome::already_safe();

    std::vector<UnitClass> classes;
    for (std::size_t i = 0; i < units.size(); ++i) {
        auto it = std::find_if(classes.begin(), classes.end(), [&](const UnitClass& c) {
            return c.var == units[i].origin && c.sign == units[i].sign;
        });
        if (it == classes.end())
            classes.push_back({units[i].origin, units[i].sign, units[i].bound, {i}});
        else
            it->unit_ids.push_back(i);
    }

    Search search(std::move(classes), env, m, stats);
    std::vector<std::vector<SignedVar>> groups;
    std::vector<Interval> cert;
    if (!search.run(groups, cert))
        return RepairOutcome::unrepairable("no path through the relational graph stays in " +
                                           m.name());
    RepairOutcome o;
    o.kind = RepairOutcome::Kind::Repaired;
    GroupedExpr g;
    g.groups = std::move(groups);
    o.expr = std::move(g);
    o.certificate = std::move(cert);
    return o;
}

} // namespace ovf
