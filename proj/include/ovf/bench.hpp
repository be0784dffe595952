// SPDX-License-Identifier: Apache-2.0
//
// Census benchmarks: exhaustive corpora of sums and comparisons over a fixed
// analyzer state, counted by repair outcome. Queries are independent, so the
// runner may execute them in parallel; the report keeps input order either
// way.

#pragma once

#include "ovf/problem.hpp"

#include <cstddef>
#include <vector>

namespace ovf {

// Fixed int32 analyzer state over x1..x6:
//   x1 in [0, 2^29]   x2 in [-2^29, 0]   x3 in [-2^29, 2^29]
//   x4 in [1, 1]      x5 in [-1, -1]     x6 in [-1, 1]
AbstractEnv census_env_sums();
// The first five variables of census_env_sums.
AbstractEnv census_env_relations();
// census_env_sums plus pair facts x1+x2, x1+x3 in [-2^29, 2^29].
AbstractEnv census_env_oct();

inline const MachineType kCensusMachine = MachineType::make_signed(32);

// All sums over x1..x6 with coefficients in {0,1,2,4} and at least four
// nonzero coefficients; 3402 queries.
std::vector<Query> generate_sum_corpus();

// All comparisons lhs < rhs where every one of x1..x5 appears on exactly
// one side with coefficient in {1,2,4} and neither side is empty; 7290
// queries.
std::vector<Query> generate_relation_corpus();

struct BenchCounts {
    std::size_t total = 0;
    std::size_t safe = 0;
    std::size_t repaired = 0;
    std::size_t unrepairable = 0;

    friend bool operator==(const BenchCounts&, const BenchCounts&) = default;
};

// Reproduced counts for the two corpora under this implementation.
inline constexpr BenchCounts kSumCensus{3402, 1093, 42, 2267};
inline constexpr BenchCounts kRelationCensus{7290, 2178, 3138, 1974};

// Counts asserted by --strict-census, taken from the reference experiment
// report. The sum split is internally inconsistent with its own census size
// (1093 + 2268 + 43 = 3404 != 3402) and the relation failure count has no
// reproduction here; see the repaired/unrepairable assertions fail under
// strict mode while total and safe hold.
inline constexpr BenchCounts kStrictSumCensus{3402, 1093, 43, 2268};
inline constexpr BenchCounts kStrictRelationCensus{7290, 2178, 5103, 213};

struct BenchResult {
    std::vector<ReportRecord> records; // input order
    BenchCounts counts;
    double wall_seconds = 0.0;
};

// jobs == 1 runs the serial reference loop; jobs > 1 runs the parallel
// kernel (OpenMP when available). jobs == 0 means one thread per core.
BenchResult run_bench(const std::vector<Query>& queries, const AbstractEnv& env,
                      const MachineType& m, Domain domain, int jobs = 1);

BenchCounts count_outcomes(const std::vector<ReportRecord>& records);

} // namespace ovf
