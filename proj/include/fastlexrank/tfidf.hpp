#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fastlexrank/corpus.hpp"
#include "fastlexrank/embeddings.hpp"
#include "fastlexrank/types.hpp"

namespace fastlexrank {

/// Terms sorted lexicographically; columns assigned in that order, so the
/// matrix layout is deterministic for a given corpus and stop list.
struct Vocabulary {
    std::vector<std::string> terms;
    std::vector<std::size_t> doc_freq;  // aligned with terms
    std::unordered_map<std::string, std::size_t> term_to_col;

    std::size_t size() const { return terms.size(); }
};

/// Dense n x |V| matrix. Every nonzero row has unit L2 norm; rows of
/// documents with no in-vocabulary terms stay all-zero.
struct TfidfMatrix {
    Matrix matrix;
    Vocabulary vocabulary;
};

/// Lowercased maximal runs of word characters, keeping only tokens of at
/// least two characters. Order preserved.
std::vector<std::string> tokenize(const std::string& text);

/// The stock English stop list shipped with the artifact (318 terms).
const std::unordered_set<std::string>& builtin_english_stopwords();

/// One term per line, '#' starts a comment. Entries are lowercased.
std::unordered_set<std::string> load_stopwords(const std::string& path);

/// Every token seen in at least one document and not stop-listed becomes a
/// term; there is no minimum-frequency cut. Errors when no document yields
/// any term.
Vocabulary build_vocabulary(const Corpus& corpus,
                            const std::unordered_set<std::string>& stopwords);

/// entry(i,t) = tf(i,t) * (ln((1+n)/(1+df(t))) + 1), rows then L2-normalized.
TfidfMatrix tfidf_matrix(const Corpus& corpus, const Vocabulary& vocabulary,
                         std::size_t budget_bytes = kDefaultMatrixBudgetBytes);

/// Zero-row documents cannot be unit-normalized, so they are split off here:
/// `kept[r]` is the corpus index behind embedding row r.
struct TfidfEmbeddings {
    EmbeddingMatrix embeddings;  // normalized, zero rows removed
    std::vector<std::size_t> kept;
    std::vector<std::size_t> dropped;
};

TfidfEmbeddings to_embeddings(const TfidfMatrix& tfidf);

}  // namespace fastlexrank
