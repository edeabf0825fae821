// Python bindings for the centrality toolkit. Matrices cross the boundary as
// numpy float64 arrays; score vectors come back as 1-d arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fastlexrank/baseline.hpp"
#include "fastlexrank/bench.hpp"
#include "fastlexrank/corpus.hpp"
#include "fastlexrank/embeddings.hpp"
#include "fastlexrank/evaluation.hpp"
#include "fastlexrank/fast.hpp"
#include "fastlexrank/tfidf.hpp"
#include "fastlexrank/types.hpp"

namespace py = pybind11;
using namespace fastlexrank;

namespace {

EmbeddingMatrix as_embeddings(const Matrix& data, bool assume_normalized) {
    if (data.rows() == 0 || data.cols() == 0) {
        throw DataError("embedding matrix must be non-empty");
    }
    EmbeddingMatrix embeddings;
    embeddings.data = data;
    if (assume_normalized) {
        for (Index i = 0; i < embeddings.data.rows(); ++i) {
            const double norm = embeddings.data.row(i).norm();
            if (std::abs(norm - 1.0) > 1e-6) {
                throw DataError("row " + std::to_string(i) + " has norm " + std::to_string(norm) +
                                "; pass unit rows or use normalize_rows first");
            }
        }
        embeddings.normalized = true;
    } else {
        embeddings = normalize_rows(std::move(embeddings));
    }
    return embeddings;
}

OutputScale parse_scale(const std::string& scale) {
    if (scale == "raw") return OutputScale::Raw;
    if (scale == "l1") return OutputScale::L1;
    if (scale == "cosine_mean") return OutputScale::CosineMean;
    throw DataError("unknown scale: " + scale + " (expected raw, l1, or cosine_mean)");
}

std::vector<double> to_vector(const Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

py::dict counts_dict(const KendallCounts& counts) {
    py::dict d;
    d["concordant"] = counts.concordant;
    d["discordant"] = counts.discordant;
    d["ties_x"] = counts.ties_x;
    d["ties_y"] = counts.ties_y;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Linear-time LexRank centrality scoring with a power-method reference";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

    m.def(
        "normalize_rows",
        [](const Matrix& data) {
            EmbeddingMatrix matrix;
            matrix.data = data;
            return normalize_rows(std::move(matrix)).data;
        },
        py::arg("embeddings"), "Divide each row by its L2 norm; a zero row is an error.");

    m.def(
        "fast_scores",
        [](const Matrix& data, const std::string& scale, bool normalize) {
            EmbeddingMatrix embeddings = as_embeddings(data, !normalize);
            FastScoreOptions options;
            options.output_scale = parse_scale(scale);
            return fast_centrality(embeddings, options).values;
        },
        py::arg("embeddings"), py::arg("scale") = "raw", py::arg("normalize") = false,
        "Centrality scores in O(n*d): project rows onto the normalized column-sum vector.\n"
        "With normalize=False rows must already have unit L2 norm.");

    m.def(
        "power_scores",
        [](const Matrix& data, double epsilon, int max_iter,
           std::optional<std::uint64_t> seed, bool normalize, std::size_t budget_bytes) {
            EmbeddingMatrix embeddings = as_embeddings(data, !normalize);
            TransitionMatrix transition;
            {
                SimilarityMatrix similarity = similarity_matrix(embeddings, budget_bytes);
                transition = transition_matrix(similarity);
            }
            CentralityScores scores = power_method(transition, epsilon, max_iter, seed);
            return py::make_tuple(scores.values, scores.iterations.value_or(0),
                                  scores.converged.value_or(false));
        },
        py::arg("embeddings"), py::arg("epsilon") = kDefaultEpsilon,
        py::arg("max_iter") = kDefaultMaxIterations, py::arg("seed") = py::none(),
        py::arg("normalize") = false, py::arg("memory_budget_bytes") = kDefaultMatrixBudgetBytes,
        "Stationary scores of the degree-normalized similarity matrix via power iteration.\n"
        "Returns (scores, iterations, converged).");

    m.def(
        "sigma_scores",
        [](const Matrix& data, bool normalize, std::size_t budget_bytes) {
            EmbeddingMatrix embeddings = as_embeddings(data, !normalize);
            SimilarityMatrix similarity = similarity_matrix(embeddings, budget_bytes);
            return sigma_row_sums(similarity);
        },
        py::arg("embeddings"), py::arg("normalize") = false,
        py::arg("memory_budget_bytes") = kDefaultMatrixBudgetBytes,
        "Similarity-matrix row sums (the unnormalized stationary scores), using the dense "
        "n-by-n matrix. Reference surface for tests.");

    m.def(
        "kendall_tau",
        [](const std::vector<double>& x, const std::vector<double>& y, const std::string& algo) {
            KendallResult result;
            if (algo == "merge") {
                result = kendall_tau_fast(x, y);
            } else if (algo == "brute") {
                result = kendall_tau(x, y);
            } else {
                throw DataError("unknown algorithm: " + algo + " (expected merge or brute)");
            }
            py::dict d = counts_dict(result.counts);
            d["tau"] = result.tau;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("algorithm") = "merge",
        "Kendall tau-b with pair counts: dict with tau, concordant, discordant, ties_x, ties_y.");

    m.def(
        "pearson",
        [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); },
        py::arg("x"), py::arg("y"), "Sample Pearson correlation; zero variance is an error.");

    m.def(
        "compare",
        [](const Matrix& data, double epsilon, int max_iter, bool normalize,
           std::size_t budget_bytes) {
            EmbeddingMatrix embeddings = as_embeddings(data, !normalize);
            ComparisonResult result = compare_methods(embeddings, epsilon, max_iter, budget_bytes);
            py::dict d = counts_dict(result.report.counts);
            d["n"] = result.report.n;
            d["kendall_tau"] = result.report.kendall_tau ? py::cast(*result.report.kendall_tau)
                                                         : py::none();
            d["pearson_r"] =
                result.report.pearson_r ? py::cast(*result.report.pearson_r) : py::none();
            d["power_iterations"] = result.report.power_iterations;
            d["power_converged"] = result.report.power_converged;
            d["fast_scores"] = result.fast_scores;
            d["power_scores"] = result.power_scores;
            return d;
        },
        py::arg("embeddings"), py::arg("epsilon") = kDefaultEpsilon,
        py::arg("max_iter") = kDefaultMaxIterations, py::arg("normalize") = false,
        py::arg("memory_budget_bytes") = kDefaultMatrixBudgetBytes,
        "Run both methods and report ranking agreement plus both score vectors.");

    m.def("tokenize", &tokenize, py::arg("text"),
          "Lowercased word tokens of at least two characters, in order.");

    m.def(
        "builtin_stopwords",
        []() {
            const auto& words = builtin_english_stopwords();
            return std::vector<std::string>(words.begin(), words.end());
        },
        "The built-in English stop list (unordered).");

    m.def(
        "tfidf_matrix",
        [](const std::vector<std::string>& texts,
           const std::optional<std::vector<std::string>>& stopwords) {
            Corpus corpus;
            corpus.documents.reserve(texts.size());
            for (std::size_t i = 0; i < texts.size(); ++i) {
                corpus.documents.push_back({i, texts[i]});
            }
            std::unordered_set<std::string> stop_set;
            if (stopwords) {
                stop_set.insert(stopwords->begin(), stopwords->end());
            } else {
                stop_set = builtin_english_stopwords();
            }
            TfidfMatrix tfidf = tfidf_matrix(corpus, build_vocabulary(corpus, stop_set));
            return py::make_tuple(tfidf.matrix, tfidf.vocabulary.terms,
                                  tfidf.vocabulary.doc_freq);
        },
        py::arg("texts"), py::arg("stopwords") = py::none(),
        "Dense tf-idf matrix with L2-normalized nonzero rows.\n"
        "Returns (matrix, terms, doc_freq); columns follow sorted term order.");

    m.def(
        "synth_embeddings",
        [](std::size_t n, std::size_t d, std::uint64_t seed, const std::string& distribution) {
            SynthDistribution dist;
            if (distribution == "nonnegative") {
                dist = SynthDistribution::Nonnegative;
            } else if (distribution == "signed") {
                dist = SynthDistribution::Signed;
            } else {
                throw DataError("unknown distribution: " + distribution);
            }
            return synth_embeddings(n, d, seed, dist).data;
        },
        py::arg("n"), py::arg("d"), py::arg("seed") = 42,
        py::arg("distribution") = "nonnegative",
        "Seeded reproducible unit-row matrix, identical across platforms.");

    m.def(
        "top_k_indices",
        [](const std::vector<double>& scores, std::size_t k) {
            CentralityScores wrapped;
            wrapped.values = Eigen::Map<const Vector>(scores.data(),
                                                      static_cast<Index>(scores.size()));
            Ranking ranking = top_k(wrapped, k);
            std::vector<std::size_t> indices;
            indices.reserve(ranking.entries.size());
            for (const RankEntry& entry : ranking.entries) indices.push_back(entry.index);
            return indices;
        },
        py::arg("scores"), py::arg("k"),
        "Indices of the k highest scores, descending, ties broken by ascending index.");
}
