#pragma once

#include "fastlexrank/corpus.hpp"
#include "fastlexrank/embeddings.hpp"
#include "fastlexrank/scores.hpp"
#include "fastlexrank/types.hpp"

namespace fastlexrank {

/// Raw: c = E (z / |z|) where z is the column-sum vector -- the linear-time
/// equivalent of the power-method stationary scores. L1: raw divided by its
/// L1 norm so the values match the power method numerically; only valid when
/// every raw score is positive. CosineMean: the same scores read as cosine
/// similarity to the corpus mean embedding (E_bar / |E_bar| equals z / |z|).
enum class OutputScale { Raw, L1, CosineMean };

struct FastScoreOptions {
    OutputScale output_scale = OutputScale::Raw;
};

/// Column sums z = E^T 1.
Vector column_sum(const EmbeddingMatrix& embeddings);

/// O(n + d) working memory beyond E: no n-by-n intermediate is ever formed.
/// Requires normalized rows; errors when z = 0 (perfectly antipodal corpus,
/// ranking undefined).
CentralityScores fast_centrality(const EmbeddingMatrix& embeddings,
                                 const FastScoreOptions& options = {});

/// Full ranking: descending score, ties broken by ascending index.
Ranking make_ranking(const CentralityScores& scores);

/// First min(k, n) entries of the full ranking.
Ranking top_k(const CentralityScores& scores, std::size_t k);

}  // namespace fastlexrank
