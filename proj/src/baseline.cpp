#include "fastlexrank/baseline.hpp"

#include <cmath>
#include <random>
#include <string>

namespace fastlexrank {

SimilarityMatrix similarity_matrix(const EmbeddingMatrix& embeddings, std::size_t budget_bytes) {
    if (!embeddings.normalized) {
        throw DataError("similarity_matrix requires unit-normalized rows; call normalize_rows first");
    }
    const std::size_t n = static_cast<std::size_t>(embeddings.rows());
    const std::size_t bytes = n * n * sizeof(double);
    if (n != 0 && (bytes / n / sizeof(double) != n || bytes > budget_bytes)) {
        throw ResourceLimitError(
            "dense similarity matrix for n=" + std::to_string(n) + " needs " +
            std::to_string(bytes) + " bytes, over the " + std::to_string(budget_bytes) +
            "-byte budget; use the fast method, which never materializes it");
    }

    SimilarityMatrix similarity;
    // Unit rows make the cosine quotient a plain dot product.
    similarity.values.noalias() = embeddings.data * embeddings.data.transpose();
    return similarity;
}

Vector sigma_row_sums(const SimilarityMatrix& similarity) {
    return similarity.values.rowwise().sum();
}

TransitionMatrix transition_matrix(const SimilarityMatrix& similarity) {
    TransitionMatrix transition;
    transition.row_sums = sigma_row_sums(similarity);
    for (Index i = 0; i < transition.row_sums.size(); ++i) {
        if (!(transition.row_sums(i) > 0.0)) {
            throw DataError("similarity row " + std::to_string(i) +
                            " has non-positive sum " + std::to_string(transition.row_sums(i)) +
                            "; the transition matrix is undefined");
        }
    }
    transition.values = similarity.values.array().colwise() /
                        transition.row_sums.array();
    return transition;
}

CentralityScores power_method(const TransitionMatrix& transition, double epsilon, int max_iter,
                              std::optional<std::uint64_t> random_start_seed) {
    if (!(epsilon > 0.0)) throw DataError("epsilon must be positive");
    if (max_iter < 1) throw DataError("max_iter must be at least 1");

    const Index n = transition.values.rows();
    Vector c(n);
    if (random_start_seed) {
        std::mt19937_64 rng(*random_start_seed);
        for (Index i = 0; i < n; ++i) {
            c(i) = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
        c /= c.lpNorm<1>();
    } else {
        c.setConstant(1.0 / static_cast<double>(n));
    }

    CentralityScores scores;
    scores.method = ScoreMethod::Power;
    scores.converged = false;
    Vector c_old(n);
    int iterations = 0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        c_old = c;
        c = transition.values.transpose() * c;
        c /= c.lpNorm<1>();
        iterations = iter;
        if ((c - c_old).lpNorm<1>() < epsilon) {
            scores.converged = true;
            break;
        }
    }
    scores.iterations = iterations;
    scores.values = std::move(c);
    return scores;
}

}  // namespace fastlexrank
