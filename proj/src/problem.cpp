// SPDX-License-Identifier: Apache-2.0

#include "ovf/problem.hpp"

#include <fstream>
#include <sstream>

namespace ovf {

namespace {

std::string strip(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

Int parse_int(const std::string& text, std::size_t line) {
    try {
        return Int(text);
    } catch (const std::exception&) {
        throw problem_parse_error("not an integer: '" + text + "'", line);
    }
}

// "<expr> in [lo, hi]" -> (expr text, interval)
std::pair<std::string, Interval> split_bound(const std::string& rest, std::size_t line) {
    std::size_t in_pos = rest.rfind(" in ");
    if (in_pos == std::string::npos)
        throw problem_parse_error("expected '<expr> in [lo, hi]'", line);
    std::string expr = strip(rest.substr(0, in_pos));
    std::string bound = strip(rest.substr(in_pos + 4));
    if (bound.size() < 2 || bound.front() != '[' || bound.back() != ']')
        throw problem_parse_error("expected '[lo, hi]', got '" + bound + "'", line);
    std::string inner = bound.substr(1, bound.size() - 2);
    std::size_t comma = inner.find(',');
    if (comma == std::string::npos)
        throw problem_parse_error("expected '[lo, hi]', got '" + bound + "'", line);
    Int lo = parse_int(strip(inner.substr(0, comma)), line);
    Int hi = parse_int(strip(inner.substr(comma + 1)), line);
    if (lo > hi)
        throw problem_parse_error("empty interval [" + lo.str() + ", " + hi.str() + "]", line);
    return {expr, Interval(lo, hi)};
}

void add_pair_line(AbstractEnv& env, const std::string& expr_text, const Interval& iv,
                   std::size_t line) {
    LinearExpr e = parse_linear(expr_text);
    if (e.terms.size() != 2 || abs(e.terms[0].coeff) != 1 || abs(e.terms[1].coeff) != 1 ||
        e.terms[0].var == e.terms[1].var)
        throw problem_parse_error("a rel fact bounds a sum or difference of two distinct "
                                  "variables",
                                  line);
    const VarId& a = e.terms[0].var;
    const VarId& b = e.terms[1].var;
    bool na = e.terms[0].coeff < 0, nb = e.terms[1].coeff < 0;
    if (!na && !nb)
        env.add_pair(a, b, +1, iv); // a + b
    else if (!na && nb)
        env.add_pair(a, b, -1, iv); // a - b
    else if (na && !nb)
        env.add_pair(b, a, -1, iv); // -a + b == b - a
    else
        env.add_pair(a, b, +1, negate(iv)); // -a - b == -(a + b)
}

} // namespace

const char* query_kind_text(Query::Kind k) {
    return k == Query::Kind::Sum ? "sum" : "rel";
}

Problem parse_problem(std::istream& in) {
    Problem p;
    std::string raw;
    std::size_t lineno = 0;
    bool saw_machine = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (std::size_t hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::string line = strip(raw);
        if (line.empty())
            continue;
        std::istringstream words(line);
        std::string keyword;
        words >> keyword;
        std::string rest = strip(line.substr(keyword.size()));
        try {
            if (keyword == "machine") {
                auto m = MachineType::parse(rest);
                if (!m)
                    throw problem_parse_error("unknown machine type '" + rest + "'", lineno);
                p.machine = *m;
                saw_machine = true;
            } else if (keyword == "var") {
                auto [name, iv] = split_bound(rest, lineno);
                LinearExpr e = parse_linear(name);
                if (e.terms.size() != 1 || e.terms[0].coeff != 1)
                    throw problem_parse_error("expected a variable name, got '" + name + "'",
                                              lineno);
                p.env.set_unary(e.terms[0].var, iv);
            } else if (keyword == "rel") {
                auto [expr, iv] = split_bound(rest, lineno);
                add_pair_line(p.env, expr, iv, lineno);
            } else if (keyword == "template") {
                auto [expr, iv] = split_bound(rest, lineno);
                LinearExpr e = parse_linear(expr);
                TemplateConstraint t{{}, iv};
                for (const auto& term : e.terms)
                    t.coeffs.emplace_back(term.var, term.coeff);
                p.env.add_template(std::move(t));
            } else if (keyword == "query" || keyword == "repair") {
                std::size_t colon = rest.find(':');
                if (colon == std::string::npos)
                    throw problem_parse_error("expected '<id> <kind>: <expr>'", lineno);
                std::istringstream head(rest.substr(0, colon));
                std::string id, kind;
                head >> id >> kind;
                std::string body = strip(rest.substr(colon + 1));
                if (id.empty() || kind.empty() || body.empty())
                    throw problem_parse_error("expected '<id> <kind>: <expr>'", lineno);
                if (keyword == "query") {
                    Query q;
                    q.id = id;
                    if (kind == "sum") {
                        q.kind = Query::Kind::Sum;
                        q.sum = parse_linear(body);
                    } else if (kind == "rel") {
                        q.kind = Query::Kind::Rel;
                        q.rel = parse_bool(body);
                    } else {
                        throw problem_parse_error("unknown query kind '" + kind + "'", lineno);
                    }
                    p.queries.push_back(std::move(q));
                } else {
                    if (kind == "sum")
                        p.repairs.insert_or_assign(id, parse_linear(body));
                    else if (kind == "rel")
                        p.repairs.insert_or_assign(id, parse_bool(body));
                    else if (kind == "group")
                        p.repairs.insert_or_assign(id, parse_grouped(body));
                    else
                        throw problem_parse_error("unknown repair kind '" + kind + "'", lineno);
                }
            } else {
                throw problem_parse_error("unknown keyword '" + keyword + "'", lineno);
            }
        } catch (const problem_parse_error&) {
            throw;
        } catch (const error& e) {
            throw problem_parse_error(e.what(), lineno);
        }
    }
    if (!saw_machine)
        throw problem_parse_error("missing 'machine' line", lineno);
    return p;
}

Problem parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open problem file: " + path);
    return parse_problem(in);
}

std::optional<Domain> parse_domain(std::string_view text) {
    if (text == "box")
        return Domain::Box;
    if (text == "oct")
        return Domain::Oct;
    if (text == "template")
        return Domain::Template;
    return std::nullopt;
}

RepairOutcome repair_query(const Query& q, const AbstractEnv& env, const MachineType& m,
                           Domain domain, RepairStats* stats) {
    if (q.kind == Query::Kind::Rel)
        return repair_relation(q.rel, env, m, stats);
    if (domain == Domain::Box)
        return repair_sum(q.sum, env, m, stats);
    return repair_with_relations(q.sum, env, m, stats);
}

namespace {

// Reports never contain unverified repairs: every repaired expression must
// re-verify as overflow-free and Z-equivalent before it is emitted.
void reverify(const Query& q, const RepairOutcome& out, const AbstractEnv& env,
              const MachineType& m) {
    if (out.kind != RepairOutcome::Kind::Repaired)
        return;
    bool ok = std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, LinearExpr>)
                return z_equivalent(e, q.sum) && check_not_overflow(e, env, m);
            else if constexpr (std::is_same_v<T, GroupedExpr>)
                return z_equivalent(flatten(e), q.sum) && check_not_overflow(e, env, m);
            else if constexpr (std::is_same_v<T, BoolExpr>)
                return z_equivalent(e, q.rel) && check_not_overflow(e.lhs, env, m) &&
                       check_not_overflow(e.rhs, env, m);
            else
                return false;
        },
        out.expr);
    if (!ok)
        throw error("internal: emitted repair for query '" + q.id + "' failed re-verification");
}

} // namespace

ReportRecord run_query(const Query& q, const AbstractEnv& env, const MachineType& m,
                       Domain domain, RepairStats* stats) {
    RepairOutcome out = repair_query(q, env, m, domain, stats);
    reverify(q, out, env, m);
    ReportRecord rec;
    rec.id = q.id;
    rec.kind = query_kind_text(q.kind);
    rec.outcome = outcome_text(out.kind);
    if (out.kind == RepairOutcome::Kind::Repaired) {
        rec.expr = std::visit(
            [](const auto& e) -> std::string {
                if constexpr (std::is_same_v<std::decay_t<decltype(e)>, std::monostate>)
                    return "-";
                else
                    return to_string(e);
            },
            out.expr);
    } else {
        rec.expr = "-";
    }
    return rec;
}

void write_report(std::ostream& os, const std::vector<ReportRecord>& records) {
    os << "id\tkind\toutcome\texpr\tmicros\n";
    for (const auto& r : records)
        os << r.id << '\t' << r.kind << '\t' << r.outcome << '\t' << r.expr << '\t' << r.micros
           << '\n';
}

std::vector<ReportRecord> parse_report(std::istream& in) {
    std::vector<ReportRecord> records;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (first) {
            first = false;
            if (line.rfind("id\t", 0) == 0)
                continue;
        }
        std::istringstream cells(line);
        ReportRecord r;
        std::string micros;
        if (!std::getline(cells, r.id, '\t') || !std::getline(cells, r.kind, '\t') ||
            !std::getline(cells, r.outcome, '\t') || !std::getline(cells, r.expr, '\t') ||
            !std::getline(cells, micros))
            throw error("malformed report line: " + line);
        r.micros = std::stoll(micros);
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace ovf
