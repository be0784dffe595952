// SPDX-License-Identifier: Apache-2.0

#include "ovf/bench.hpp"

#include <chrono>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ovf {

namespace {

const Int kQuarter = Int(1) << 29; // 2^29

VarId var(int i) { return VarId{"x" + std::to_string(i)}; }

AbstractEnv base_env(int count) {
    const Interval bounds[6] = {
        {0, kQuarter}, {-kQuarter, 0}, {-kQuarter, kQuarter}, {1, 1}, {-1, -1}, {-1, 1},
    };
    AbstractEnv env;
    for (int i = 0; i < count; ++i)
        env.set_unary(var(i + 1), bounds[i]);
    return env;
}

std::string query_id(const char* prefix, std::size_t n) {
    std::ostringstream os;
    os << prefix << n;
    return os.str();
}

} // namespace

AbstractEnv census_env_sums() { return base_env(6); }

AbstractEnv census_env_relations() { return base_env(5); }

AbstractEnv census_env_oct() {
    AbstractEnv env = base_env(6);
    env.add_pair(var(1), var(2), +1, Interval(-kQuarter, kQuarter));
    env.add_pair(var(1), var(3), +1, Interval(-kQuarter, kQuarter));
    return env;
}

std::vector<Query> generate_sum_corpus() {
    const Int choices[4] = {0, 1, 2, 4};
    std::vector<Query> queries;
    int digit[6] = {0, 0, 0, 0, 0, 0};
    while (true) {
        int nonzero = 0;
        for (int d : digit)
            if (d != 0)
                ++nonzero;
        if (nonzero >= 4) {
            Query q;
            q.id = query_id("s", queries.size());
            q.kind = Query::Kind::Sum;
            for (int i = 0; i < 6; ++i)
                if (digit[i] != 0)
                    q.sum.terms.push_back({choices[digit[i]], var(i + 1)});
            queries.push_back(std::move(q));
        }
        // odometer, leftmost digit most significant
        int k = 5;
        while (k >= 0 && digit[k] == 3)
            digit[k--] = 0;
        if (k < 0)
            break;
        ++digit[k];
    }
    return queries;
}

std::vector<Query> generate_relation_corpus() {
    // per variable: (coeff, side) over {1,2,4} x {left,right}, in that order
    const Int coeffs[3] = {1, 2, 4};
    std::vector<Query> queries;
    int digit[5] = {0, 0, 0, 0, 0}; // 0..5
    while (true) {
        bool any_left = false, any_right = false;
        for (int d : digit)
            (d % 2 == 0 ? any_left : any_right) = true;
        if (any_left && any_right) {
            Query q;
            q.id = query_id("r", queries.size());
            q.kind = Query::Kind::Rel;
            q.rel.op = RelOp::Lt;
            for (int i = 0; i < 5; ++i) {
                Term t{coeffs[digit[i] / 2], var(i + 1)};
                (digit[i] % 2 == 0 ? q.rel.lhs : q.rel.rhs).terms.push_back(std::move(t));
            }
            queries.push_back(std::move(q));
        }
        int k = 4;
        while (k >= 0 && digit[k] == 5)
            digit[k--] = 0;
        if (k < 0)
            break;
        ++digit[k];
    }
    return queries;
}

BenchCounts count_outcomes(const std::vector<ReportRecord>& records) {
    BenchCounts c;
    c.total = records.size();
    for (const auto& r : records) {
        if (r.outcome == "safe")
            ++c.safe;
        else if (r.outcome == "repaired")
            ++c.repaired;
        else
            ++c.unrepairable;
    }
    return c;
}

BenchResult run_bench(const std::vector<Query>& queries, const AbstractEnv& env,
                      const MachineType& m, Domain domain, int jobs) {
    using clock = std::chrono::steady_clock;
    BenchResult result;
    result.records.resize(queries.size());
    auto one = [&](std::size_t i) {
        auto begin = clock::now();
        ReportRecord rec = run_query(queries[i], env, m, domain);
        rec.micros =
            std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - begin).count();
        result.records[i] = std::move(rec);
    };

    auto wall_begin = clock::now();
    if (jobs == 1) {
        for (std::size_t i = 0; i < queries.size(); ++i)
            one(i);
    } else {
#ifdef _OPENMP
        if (jobs > 1)
            omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(queries.size()); ++i)
            one(static_cast<std::size_t>(i));
#else
        for (std::size_t i = 0; i < queries.size(); ++i)
            one(i);
#endif
    }
    result.wall_seconds = std::chrono::duration<double>(clock::now() - wall_begin).count();
    result.counts = count_outcomes(result.records);
    return result;
}

} // namespace ovf
