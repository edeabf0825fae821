#include "fastlexrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "fastlexrank/baseline.hpp"
#include "fastlexrank/fast.hpp"

namespace fastlexrank {

namespace {

void check_lengths(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DataError("score vectors differ in length: " + std::to_string(x.size()) +
                        " vs " + std::to_string(y.size()));
    }
    if (x.size() < 2) throw DataError("need at least 2 scores, got " + std::to_string(x.size()));
}

std::uint64_t tied_pairs(std::uint64_t group) { return group * (group - 1) / 2; }

// Strict inversions of `values` counted by merge sort; equal elements are
// not inversions.
std::uint64_t count_inversions(std::vector<double>& values, std::vector<double>& scratch) {
    const std::size_t n = values.size();
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t left = lo, right = mid, out = lo;
            while (left < mid && right < hi) {
                if (values[left] <= values[right]) {
                    scratch[out++] = values[left++];
                } else {
                    inversions += mid - left;
                    scratch[out++] = values[right++];
                }
            }
            while (left < mid) scratch[out++] = values[left++];
            while (right < hi) scratch[out++] = values[right++];
            std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
                      scratch.begin() + static_cast<std::ptrdiff_t>(hi),
                      values.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return inversions;
}

KendallResult tau_from_counts(const KendallCounts& counts) {
    const std::uint64_t dx = counts.concordant + counts.discordant + counts.ties_x;
    const std::uint64_t dy = counts.concordant + counts.discordant + counts.ties_y;
    if (dx == 0 || dy == 0) {
        throw DataError("Kendall's tau is undefined: one input is constant across all pairs");
    }
    KendallResult result;
    result.counts = counts;
    const double p = static_cast<double>(counts.concordant);
    const double q = static_cast<double>(counts.discordant);
    result.tau = (p - q) / std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
    return result;
}

}  // namespace

KendallCounts kendall_pair_counts(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y);
    KendallCounts counts;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool tie_x = x[i] == x[j];
            const bool tie_y = y[i] == y[j];
            if (tie_x && tie_y) continue;  // tied in both, excluded
            if (tie_x) {
                ++counts.ties_x;
            } else if (tie_y) {
                ++counts.ties_y;
            } else if ((x[i] < x[j]) == (y[i] < y[j])) {
                ++counts.concordant;
            } else {
                ++counts.discordant;
            }
        }
    }
    return counts;
}

KendallCounts kendall_pair_counts_fast(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y);
    const std::size_t n = x.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    // Pairs tied in x, and tied in both, from runs in the (x, y) order.
    std::uint64_t tied_x_all = 0, tied_both = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && x[order[j]] == x[order[i]]) {
            std::size_t k = j;
            while (k < n && x[order[k]] == x[order[i]] && y[order[k]] == y[order[j]]) ++k;
            tied_both += tied_pairs(k - j);
            j = k;
        }
        tied_x_all += tied_pairs(j - i);
        i = j;
    }

    // Discordant pairs are exactly the strict y-inversions once rows are
    // sorted by (x, y): equal-x runs are already y-sorted and contribute none.
    std::vector<double> y_sorted_by_x(n), scratch(n);
    for (std::size_t i = 0; i < n; ++i) y_sorted_by_x[i] = y[order[i]];
    const std::uint64_t discordant = count_inversions(y_sorted_by_x, scratch);

    std::uint64_t tied_y_all = 0;
    std::vector<double> y_sorted(y.begin(), y.end());
    std::sort(y_sorted.begin(), y_sorted.end());
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && y_sorted[j] == y_sorted[i]) ++j;
        tied_y_all += tied_pairs(j - i);
        i = j;
    }

    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    KendallCounts counts;
    counts.discordant = discordant;
    counts.ties_x = tied_x_all - tied_both;
    counts.ties_y = tied_y_all - tied_both;
    counts.concordant = total - tied_x_all - tied_y_all + tied_both - discordant;
    return counts;
}

KendallResult kendall_tau(std::span<const double> x, std::span<const double> y) {
    return tau_from_counts(kendall_pair_counts(x, y));
}

KendallResult kendall_tau_fast(std::span<const double> x, std::span<const double> y) {
    return tau_from_counts(kendall_pair_counts_fast(x, y));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y);
    const auto n = static_cast<double>(x.size());
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DataError("Pearson correlation is undefined: zero variance input");
    }
    return sxy / std::sqrt(sxx * syy);
}

ComparisonResult compare_methods(const EmbeddingMatrix& embeddings, double epsilon, int max_iter,
                                 std::size_t budget_bytes) {
    if (embeddings.rows() < 2) {
        throw DataError("comparison requires at least 2 documents, got " +
                        std::to_string(embeddings.rows()));
    }

    ComparisonResult result;
    result.fast_scores = fast_centrality(embeddings).values;

    TransitionMatrix transition;
    {
        SimilarityMatrix similarity = similarity_matrix(embeddings, budget_bytes);
        transition = transition_matrix(similarity);
    }
    CentralityScores power = power_method(transition, epsilon, max_iter);
    result.power_scores = std::move(power.values);

    ComparisonReport& report = result.report;
    report.n = static_cast<std::size_t>(embeddings.rows());
    report.power_iterations = power.iterations.value_or(0);
    report.power_converged = power.converged.value_or(false);

    std::span<const double> fast_span(result.fast_scores.data(),
                                      static_cast<std::size_t>(result.fast_scores.size()));
    std::span<const double> power_span(result.power_scores.data(),
                                       static_cast<std::size_t>(result.power_scores.size()));
    report.counts = kendall_pair_counts_fast(fast_span, power_span);
    const std::uint64_t dx = report.counts.concordant + report.counts.discordant + report.counts.ties_x;
    const std::uint64_t dy = report.counts.concordant + report.counts.discordant + report.counts.ties_y;
    if (dx != 0 && dy != 0) {
        report.kendall_tau = (static_cast<double>(report.counts.concordant) -
                              static_cast<double>(report.counts.discordant)) /
                             std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
    }
    try {
        report.pearson_r = pearson(fast_span, power_span);
    } catch (const DataError&) {
        // all-tied scores: leave undefined rather than propagate NaN
    }
    return result;
}

std::string report_to_json(const ComparisonReport& report) {
    nlohmann::json j{
        {"n", report.n},
        {"pearson_r", report.pearson_r ? nlohmann::json(*report.pearson_r) : nlohmann::json()},
        {"kendall_tau",
         report.kendall_tau ? nlohmann::json(*report.kendall_tau) : nlohmann::json()},
        {"concordant", report.counts.concordant},
        {"discordant", report.counts.discordant},
        {"ties_x", report.counts.ties_x},
        {"ties_y", report.counts.ties_y},
        {"power_iterations", report.power_iterations},
        {"power_converged", report.power_converged},
    };
    return j.dump(2);
}

void write_scatter_csv(const Vector& fast_scores, const Vector& power_scores, std::ostream& out) {
    if (fast_scores.size() != power_scores.size()) {
        throw DataError("scatter vectors differ in length");
    }
    char buf[64];
    out << "fast,power\n";
    for (Index i = 0; i < fast_scores.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", fast_scores(i), power_scores(i));
        out << buf << '\n';
    }
}

}  // namespace fastlexrank
