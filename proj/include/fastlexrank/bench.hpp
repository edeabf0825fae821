#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fastlexrank/baseline.hpp"
#include "fastlexrank/embeddings.hpp"
#include "fastlexrank/scores.hpp"
#include "fastlexrank/types.hpp"

namespace fastlexrank {

enum class SynthDistribution { Nonnegative, Signed };

/// Seeded, reproducible unit-row matrix. Nonnegative mode draws entries from
/// [0, 1), which guarantees positive similarity row sums; signed mode draws
/// from [-1, 1). The generator maps mt19937_64 output to doubles directly,
/// so results are identical across platforms for a given seed.
EmbeddingMatrix synth_embeddings(std::size_t n, std::size_t d, std::uint64_t seed,
                                 SynthDistribution distribution = SynthDistribution::Nonnegative);

/// Wall-clock timing of one method at one corpus size. Timing starts from the
/// embedding matrix: embedding construction is a prerequisite for both
/// methods and is excluded.
struct BenchResult {
    std::size_t n = 0;
    std::size_t d = 0;
    ScoreMethod method = ScoreMethod::Fast;
    double elapsed = 0.0;  // seconds, median of per_rep
    int reps = 0;
    std::vector<double> per_rep;
    bool skipped = false;
    std::string skip_reason;               // "memory-guard" or "budget-exceeded"
    std::optional<double> tau_vs_fast;     // set on power results when both ran
};

struct BenchOptions {
    std::vector<std::size_t> sizes;
    std::size_t dim = 384;
    std::uint64_t seed = 42;
    int reps = 5;  // plus one discarded warm-up run
    double budget_seconds = 120.0;
    std::size_t memory_budget_bytes = kDefaultMatrixBudgetBytes;
    SynthDistribution distribution = SynthDistribution::Nonnegative;
    double epsilon = kDefaultEpsilon;
    int max_iter = kDefaultMaxIterations;
    // Evict the CPU cache before each timed rep (the eviction itself is not
    // timed). Small working sets otherwise run cache-resident and large ones
    // do not, which bends the measured scaling exponent away from the
    // algorithmic one. Warm timing is available for cache-friendly use cases.
    bool cold_cache = true;
};

/// Times the fast path and the full power-method pipeline (similarity matrix,
/// transition matrix, iteration) at each size, in size order. The power
/// method is skipped with a marker instead of failing when its matrix would
/// exceed the memory guard or its projected runtime exceeds the budget.
/// Progress lines go to `diagnostics` when given.
std::vector<BenchResult> bench_suite(const BenchOptions& options,
                                     std::ostream* diagnostics = nullptr);

/// csv columns: n,d,method,elapsed,reps,status. elapsed is empty on skipped
/// rows; status carries the skip marker.
void write_bench_csv(const std::vector<BenchResult>& results, std::ostream& out);

std::string bench_to_json(const std::vector<BenchResult>& results);

/// Least-squares slope of ln(elapsed) against ln(n) over the completed
/// results of one method. Empty when fewer than two points completed.
std::optional<double> log_log_slope(const std::vector<BenchResult>& results,
                                    ScoreMethod method);

}  // namespace fastlexrank
