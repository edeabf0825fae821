#pragma once

#include <cstdint>
#include <optional>

#include "fastlexrank/embeddings.hpp"
#include "fastlexrank/scores.hpp"
#include "fastlexrank/types.hpp"

namespace fastlexrank {

/// Dense cosine similarity matrix S = E E^T of a unit-row embedding matrix.
/// Symmetric with unit diagonal.
struct SimilarityMatrix {
    Matrix values;
};

/// Row-stochastic transition matrix M[i] = S[i] / sigma[i] together with the
/// row sums sigma it was normalized by. Construction requires sigma[i] > 0.
struct TransitionMatrix {
    Matrix values;
    Vector row_sums;
};

inline constexpr double kDefaultEpsilon = 1e-8;
inline constexpr int kDefaultMaxIterations = 1000;

/// Requires normalized rows. Refuses to allocate when n*n doubles would
/// exceed budget_bytes: the dense matrix is the quadratic memory wall this
/// guard makes visible.
SimilarityMatrix similarity_matrix(const EmbeddingMatrix& embeddings,
                                   std::size_t budget_bytes = kDefaultMatrixBudgetBytes);

/// Errors on any non-positive row sum (possible with signed embeddings).
TransitionMatrix transition_matrix(const SimilarityMatrix& similarity);

/// Row sums sigma = S 1.
Vector sigma_row_sums(const SimilarityMatrix& similarity);

/// Iterates c <- M^T c with L1 renormalization until the L1 change drops
/// below epsilon or max_iter is reached. Starts from the uniform vector by
/// default (the stationary distribution is unique, so the limit does not
/// depend on the start); pass a seed for a random start instead.
/// Non-convergence is reported through the converged flag, not an error.
CentralityScores power_method(const TransitionMatrix& transition,
                              double epsilon = kDefaultEpsilon,
                              int max_iter = kDefaultMaxIterations,
                              std::optional<std::uint64_t> random_start_seed = std::nullopt);

}  // namespace fastlexrank
