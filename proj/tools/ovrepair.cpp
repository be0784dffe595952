// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: classify, repair and verify overflow queries from
// problem files, and reproduce the census benchmarks.

#include "ovf/bench.hpp"
#include "ovf/oracle.hpp"
#include "ovf/problem.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace ovf;

constexpr int kExitResolved = 0;
constexpr int kExitUnrepairable = 1;
constexpr int kExitUsage = 2;

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty())
        return std::cout;
    file.open(path);
    if (!file)
        throw error("cannot open output file: " + path);
    return file;
}

MachineType effective_machine(const Problem& p, const std::string& override_name) {
    if (override_name.empty())
        return p.machine;
    auto m = MachineType::parse(override_name);
    if (!m)
        throw error("unknown machine type '" + override_name + "'");
    return *m;
}

int run_check(const std::string& path, const std::string& machine_name) {
    Problem p = parse_problem_file(path);
    MachineType m = effective_machine(p, machine_name);
    bool all_safe = true;
    for (const auto& q : p.queries) {
        bool safe = q.kind == Query::Kind::Sum
                        ? check_not_overflow(q.sum, p.env, m)
                        : check_not_overflow(q.rel.lhs, p.env, m) &&
                              check_not_overflow(q.rel.rhs, p.env, m);
        std::cout << q.id << '\t' << query_kind_text(q.kind) << '\t'
                  << (safe ? "safe" : "may-overflow") << '\n';
        all_safe = all_safe && safe;
    }
    return all_safe ? kExitResolved : kExitUnrepairable;
}

int run_repair(const std::string& path, const std::string& machine_name, Domain domain,
               const std::string& out_path) {
    Problem p = parse_problem_file(path);
    MachineType m = effective_machine(p, machine_name);
    std::vector<ReportRecord> records;
    bool any_unrepairable = false;
    for (const auto& q : p.queries) {
        auto begin = std::chrono::steady_clock::now();
        RepairStats stats;
        RepairOutcome out = repair_query(q, p.env, m, domain, &stats);
        ReportRecord rec = run_query(q, p.env, m, domain);
        rec.micros = std::chrono::duration_cast<std::chrono::microseconds>(
                         std::chrono::steady_clock::now() - begin)
                         .count();
        std::cout << rec.id << ": " << rec.outcome;
        if (out.kind == RepairOutcome::Kind::Repaired) {
            std::cout << "  " << rec.expr << "\n  certificate:";
            for (const auto& iv : out.certificate)
                std::cout << ' ' << to_string(iv);
        } else if (out.kind == RepairOutcome::Kind::Unrepairable) {
            std::cout << "  (" << out.reason << ')';
            any_unrepairable = true;
        }
        std::cout << '\n';
        records.push_back(std::move(rec));
    }
    if (!out_path.empty()) {
        std::ofstream file;
        write_report(open_out(out_path, file), records);
    }
    return any_unrepairable ? kExitUnrepairable : kExitResolved;
}

int run_verify(const std::string& path, const std::string& machine_name) {
    Problem p = parse_problem_file(path);
    MachineType m = effective_machine(p, machine_name);
    if (p.repairs.empty())
        throw error("no 'repair' lines to verify in " + path);
    bool all_ok = true;
    for (const auto& [id, repaired] : p.repairs) {
        auto qit = std::find_if(p.queries.begin(), p.queries.end(),
                                [&](const Query& q) { return q.id == id; });
        if (qit == p.queries.end())
            throw error("repair line for unknown query '" + id + "'");
        const Query& q = *qit;
        std::string failure;
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                LinearExpr flat;
                bool zeq, safe;
                if constexpr (std::is_same_v<T, BoolExpr>) {
                    if (q.kind != Query::Kind::Rel) {
                        failure = "kind mismatch";
                        return;
                    }
                    zeq = z_equivalent(e, q.rel);
                    safe = check_not_overflow(e.lhs, p.env, m) &&
                           check_not_overflow(e.rhs, p.env, m);
                } else {
                    if (q.kind != Query::Kind::Sum) {
                        failure = "kind mismatch";
                        return;
                    }
                    if constexpr (std::is_same_v<T, GroupedExpr>)
                        flat = flatten(e);
                    else
                        flat = e;
                    zeq = z_equivalent(flat, q.sum);
                    safe = check_not_overflow(e, p.env, m);
                }
                if (!zeq) {
                    failure = "not Z-equivalent to the query";
                    return;
                }
                if (!safe) {
                    failure = "overflow not excluded under the declared facts";
                    return;
                }
                // exhaustive concrete confirmation when the state space is small
                if (concrete_state_count(p.env, m, 100000) <= 100000) {
                    OracleVerdict v = [&] {
                        if constexpr (std::is_same_v<T, BoolExpr>)
                            return exhaustive_concrete_check(q.rel, e, p.env, m);
                        else
                            return exhaustive_concrete_check(AnySum(q.sum), AnySum(e), p.env, m);
                    }();
                    if (!v.safe_exists)
                        failure = "concrete counterexample found";
                }
            },
            repaired);
        std::cout << id << '\t' << (failure.empty() ? "verified" : "FAILED: " + failure) << '\n';
        all_ok = all_ok && failure.empty();
    }
    return all_ok ? kExitResolved : kExitUnrepairable;
}

int run_bench(const std::string& suite, int jobs, bool strict, const std::string& out_path,
              std::size_t sample, unsigned seed) {
    std::vector<Query> queries;
    AbstractEnv env;
    Domain domain = Domain::Box;
    BenchCounts strict_counts;
    if (suite == "sums") {
        queries = generate_sum_corpus();
        env = census_env_sums();
        strict_counts = kStrictSumCensus;
    } else if (suite == "relations") {
        queries = generate_relation_corpus();
        env = census_env_relations();
        strict_counts = kStrictRelationCensus;
    } else if (suite == "oct") {
        queries = generate_sum_corpus();
        env = census_env_oct();
        domain = Domain::Oct;
    } else {
        throw error("unknown bench suite '" + suite + "'");
    }
    if (sample > 0 && sample < queries.size()) {
        std::mt19937 rng(seed);
        std::shuffle(queries.begin(), queries.end(), rng);
        queries.resize(sample);
        std::sort(queries.begin(), queries.end(),
                  [](const Query& a, const Query& b) { return a.id < b.id; });
    }
    BenchResult result = ovf::run_bench(queries, env, kCensusMachine, domain, jobs);
    std::cout << suite << ": " << result.counts.total << " generated, " << result.counts.safe
              << " safe / " << result.counts.repaired << " repaired / "
              << result.counts.unrepairable << " unrepairable in " << result.wall_seconds
              << " s\n";
    if (!out_path.empty()) {
        std::ofstream file;
        write_report(open_out(out_path, file), result.records);
    }
    if (strict) {
        if (suite == "oct")
            throw error("--strict-census has no reference counts for the oct suite");
        if (result.counts != strict_counts) {
            std::cerr << "strict census mismatch: expected " << strict_counts.safe << " / "
                      << strict_counts.repaired << " / " << strict_counts.unrepairable << '\n';
            return kExitUnrepairable;
        }
    }
    return kExitResolved;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overflow repair for linear machine-integer expressions"};
    app.require_subcommand(1);

    std::string file, machine_name, out_path, domain_name = "box", suite;
    int jobs = 1;
    bool strict = false;
    std::size_t sample = 0;
    unsigned seed = 0;

    auto* check = app.add_subcommand("check", "classify queries as safe or possibly overflowing");
    check->add_option("file", file, "problem file")->required();
    check->add_option("--machine", machine_name, "override the file's machine type");

    auto* repair = app.add_subcommand("repair", "rewrite queries into non-overflowing form");
    repair->add_option("file", file, "problem file")->required();
    repair->add_option("--machine", machine_name, "override the file's machine type");
    repair->add_option("--domain", domain_name, "facts to use: box, oct or template")
        ->check(CLI::IsMember({"box", "oct", "template"}));
    repair->add_option("--out", out_path, "write the structured report here");

    auto* verify = app.add_subcommand("verify", "oracle-check repairs embedded in the file");
    verify->add_option("file", file, "problem file with 'repair' lines")->required();
    verify->add_option("--machine", machine_name, "override the file's machine type");

    auto* bench = app.add_subcommand("bench", "regenerate a census corpus and count outcomes");
    bench->add_option("suite", suite, "sums, relations or oct")->required();
    bench->add_option("--jobs", jobs, "worker threads; 1 = serial reference loop");
    bench->add_flag("--strict-census", strict, "fail unless counts match the reference report");
    bench->add_option("--out", out_path, "write the structured report here");
    bench->add_option("--sample", sample, "run a random subset of this size");
    bench->add_option("--seed", seed, "seed for --sample");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed())
            return run_check(file, machine_name);
        if (repair->parsed())
            return run_repair(file, machine_name, *parse_domain(domain_name), out_path);
        if (verify->parsed())
            return run_verify(file, machine_name);
        return run_bench(suite, jobs, strict, out_path, sample, seed);
    } catch (const ovf::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
