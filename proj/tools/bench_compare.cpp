// SPDX-License-Identifier: Apache-2.0
//
// Benchmark: serial reference loop vs the parallel census runner on the same
// corpora, asserting identical reports before printing the timings.

#include "ovf/bench.hpp"

#include <cstdlib>
#include <iostream>
#include <thread>

int main() {
    using namespace ovf;
    unsigned hw = std::max(2u, std::thread::hardware_concurrency());
    struct Suite {
        const char* name;
        std::vector<Query> queries;
        AbstractEnv env;
        Domain domain;
    };
    Suite suites[] = {
        {"sums", generate_sum_corpus(), census_env_sums(), Domain::Box},
        {"relations", generate_relation_corpus(), census_env_relations(), Domain::Box},
        {"oct", generate_sum_corpus(), census_env_oct(), Domain::Oct},
    };
    bool ok = true;
    for (auto& s : suites) {
        BenchResult serial = run_bench(s.queries, s.env, kCensusMachine, s.domain, 1);
        BenchResult parallel =
            run_bench(s.queries, s.env, kCensusMachine, s.domain, static_cast<int>(hw));
        bool same = serial.records == parallel.records;
        ok = ok && same;
        std::cout << s.name << ": serial " << serial.wall_seconds << " s, parallel(" << hw
                  << ") " << parallel.wall_seconds << " s, speedup "
                  << serial.wall_seconds / parallel.wall_seconds << "x, reports "
                  << (same ? "identical" : "DIFFER") << '\n';
    }
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
