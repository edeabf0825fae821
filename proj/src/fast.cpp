#include "fastlexrank/fast.hpp"

#include <algorithm>
#include <numeric>

namespace fastlexrank {

Vector column_sum(const EmbeddingMatrix& embeddings) {
    // One sequential pass with an O(d) accumulator. Eigen's colwise() redux
    // on row-major storage is several times slower and its cost swings with
    // cache residency, which distorts scaling benchmarks.
    const Matrix& data = embeddings.data;
    Vector sums = Vector::Zero(data.cols());
    for (Index i = 0; i < data.rows(); ++i) {
        sums += data.row(i).transpose();
    }
    return sums;
}

CentralityScores fast_centrality(const EmbeddingMatrix& embeddings,
                                 const FastScoreOptions& options) {
    if (!embeddings.normalized) {
        throw DataError("fast_centrality requires unit-normalized rows; call normalize_rows first");
    }

    Vector z = column_sum(embeddings);
    const double z_norm = z.norm();
    if (z_norm == 0.0) {
        throw DataError("column-sum vector is zero (perfectly antipodal corpus); "
                        "centrality ranking is undefined");
    }
    z /= z_norm;

    CentralityScores scores;
    scores.method = ScoreMethod::Fast;
    // Raw and cosine-to-mean are the same numbers: z/|z| = E_bar/|E_bar|.
    scores.values.noalias() = embeddings.data * z;

    if (options.output_scale == OutputScale::L1) {
        if ((scores.values.array() <= 0.0).any()) {
            throw DataError("l1 output scale requires all-positive scores; "
                            "use raw or cosine_mean for signed embeddings");
        }
        scores.values /= scores.values.lpNorm<1>();
    }
    return scores;
}

Ranking make_ranking(const CentralityScores& scores) {
    const std::size_t n = static_cast<std::size_t>(scores.values.size());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = scores.values(static_cast<Index>(a));
        const double sb = scores.values(static_cast<Index>(b));
        if (sa != sb) return sa > sb;
        return a < b;  // deterministic tie-break
    });

    Ranking ranking;
    ranking.entries.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        ranking.entries.push_back({order[r], scores.values(static_cast<Index>(order[r])), r + 1});
    }
    return ranking;
}

Ranking top_k(const CentralityScores& scores, std::size_t k) {
    if (k == 0) throw DataError("k must be at least 1");
    Ranking ranking = make_ranking(scores);
    if (k < ranking.entries.size()) ranking.entries.resize(k);
    return ranking;
}

}  // namespace fastlexrank
