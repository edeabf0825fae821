#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "fastlexrank/embeddings.hpp"
#include "fastlexrank/types.hpp"

namespace fastlexrank {

/// Pair counts behind Kendall's tau-b. Pairs tied in both vectors are
/// excluded from ties_x and ties_y.
struct KendallCounts {
    std::uint64_t concordant = 0;   // P
    std::uint64_t discordant = 0;   // Q
    std::uint64_t ties_x = 0;       // T, tied in x only
    std::uint64_t ties_y = 0;       // U, tied in y only
};

struct KendallResult {
    double tau = 0.0;
    KendallCounts counts;
};

/// Reference O(n^2) pair enumeration.
KendallCounts kendall_pair_counts(std::span<const double> x, std::span<const double> y);

/// Merge-sort variant, O(n log n); returns counts identical to the reference.
KendallCounts kendall_pair_counts_fast(std::span<const double> x, std::span<const double> y);

/// tau-b = (P - Q) / sqrt((P + Q + T)(P + Q + U)). Errors when either
/// denominator factor is zero (an all-constant vector makes tau undefined).
KendallResult kendall_tau(std::span<const double> x, std::span<const double> y);
KendallResult kendall_tau_fast(std::span<const double> x, std::span<const double> y);

/// Sample Pearson correlation; errors on zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Agreement between the fast scores and the power-method scores on one
/// matrix. tau / pearson are empty when degenerate (all-tied scores) instead
/// of propagating NaN, so reports stay serializable.
struct ComparisonReport {
    std::size_t n = 0;
    std::optional<double> pearson_r;
    std::optional<double> kendall_tau;
    KendallCounts counts;
    int power_iterations = 0;
    bool power_converged = false;
};

struct ComparisonResult {
    ComparisonReport report;
    Vector fast_scores;
    Vector power_scores;
};

ComparisonResult compare_methods(const EmbeddingMatrix& embeddings,
                                 double epsilon, int max_iter,
                                 std::size_t budget_bytes = kDefaultMatrixBudgetBytes);

/// JSON object with all report fields; undefined statistics serialize as null.
std::string report_to_json(const ComparisonReport& report);

/// Two-column csv with header "fast,power", one row per document.
void write_scatter_csv(const Vector& fast_scores, const Vector& power_scores,
                       std::ostream& out);

}  // namespace fastlexrank
