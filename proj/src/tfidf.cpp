#include "fastlexrank/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace fastlexrank {

namespace {

// Word characters: ASCII alphanumerics, underscore, and any non-ASCII byte
// (multi-byte UTF-8 sequences stay inside one token). ASCII letters are
// lowercased; other bytes pass through unchanged.
bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c >= 0x80;
}

bool is_continuation_byte(unsigned char c) { return (c & 0xC0) == 0x80; }

std::size_t codepoint_count(const std::string& token) {
    std::size_t count = 0;
    for (unsigned char c : token) {
        if (!is_continuation_byte(c)) ++count;
    }
    return count;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (codepoint_count(current) >= 2) tokens.push_back(current);
        current.clear();
    };
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                                   : static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open stopword file: " + path);

    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        std::string word = line.substr(begin, end - begin + 1);
        std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) {
            return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
        });
        words.insert(std::move(word));
    }
    return words;
}

Vocabulary build_vocabulary(const Corpus& corpus,
                            const std::unordered_set<std::string>& stopwords) {
    // std::map keeps terms sorted, which fixes the column order.
    std::map<std::string, std::size_t> doc_freq;
    std::unordered_set<std::string> seen_in_doc;
    for (const Document& doc : corpus.documents) {
        seen_in_doc.clear();
        for (std::string& token : tokenize(doc.text)) {
            if (stopwords.contains(token)) continue;
            if (seen_in_doc.insert(token).second) ++doc_freq[token];
        }
    }
    if (doc_freq.empty()) {
        throw DataError("empty vocabulary: no document yields any non-stopword term");
    }

    Vocabulary vocab;
    vocab.terms.reserve(doc_freq.size());
    vocab.doc_freq.reserve(doc_freq.size());
    for (auto& [term, df] : doc_freq) {
        vocab.term_to_col.emplace(term, vocab.terms.size());
        vocab.terms.push_back(term);
        vocab.doc_freq.push_back(df);
    }
    return vocab;
}

TfidfMatrix tfidf_matrix(const Corpus& corpus, const Vocabulary& vocabulary,
                         std::size_t budget_bytes) {
    const std::size_t n = corpus.size();
    const std::size_t v = vocabulary.size();
    if (n * v * sizeof(double) > budget_bytes) {
        throw ResourceLimitError("tf-idf matrix of " + std::to_string(n) + " x " +
                                 std::to_string(v) + " doubles exceeds the memory budget of " +
                                 std::to_string(budget_bytes) + " bytes");
    }

    const double smooth_n = 1.0 + static_cast<double>(n);
    Vector idf(static_cast<Index>(v));
    for (std::size_t t = 0; t < v; ++t) {
        idf(static_cast<Index>(t)) =
            std::log(smooth_n / (1.0 + static_cast<double>(vocabulary.doc_freq[t]))) + 1.0;
    }

    TfidfMatrix result;
    result.vocabulary = vocabulary;
    result.matrix = Matrix::Zero(static_cast<Index>(n), static_cast<Index>(v));
    for (std::size_t i = 0; i < n; ++i) {
        auto row = result.matrix.row(static_cast<Index>(i));
        for (const std::string& token : tokenize(corpus.text(i))) {
            auto it = vocabulary.term_to_col.find(token);
            if (it == vocabulary.term_to_col.end()) continue;
            row(static_cast<Index>(it->second)) += idf(static_cast<Index>(it->second));
        }
        const double norm = row.norm();
        if (norm > 0.0) row /= norm;
    }
    return result;
}

TfidfEmbeddings to_embeddings(const TfidfMatrix& tfidf) {
    TfidfEmbeddings result;
    for (Index i = 0; i < tfidf.matrix.rows(); ++i) {
        if (tfidf.matrix.row(i).any()) {
            result.kept.push_back(static_cast<std::size_t>(i));
        } else {
            result.dropped.push_back(static_cast<std::size_t>(i));
        }
    }
    if (result.kept.empty()) {
        throw DataError("all documents have zero tf-idf rows; nothing to rank");
    }
    result.embeddings.data.resize(static_cast<Index>(result.kept.size()), tfidf.matrix.cols());
    for (std::size_t r = 0; r < result.kept.size(); ++r) {
        result.embeddings.data.row(static_cast<Index>(r)) =
            tfidf.matrix.row(static_cast<Index>(result.kept[r]));
    }
    // Nonzero rows are unit-normalized by construction.
    result.embeddings.normalized = true;
    return result;
}

}  // namespace fastlexrank
