#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fastlexrank/types.hpp"

namespace fastlexrank {

struct Document {
    std::size_t index = 0;  // 0-based position in the corpus
    std::string text;
};

/// Ordered document collection. Iteration order equals file order and all
/// ranking output refers to these indices.
struct Corpus {
    std::vector<Document> documents;

    std::size_t size() const { return documents.size(); }
    const std::string& text(std::size_t i) const { return documents[i].text; }
};

struct RankEntry {
    std::size_t index = 0;
    double score = 0.0;
    std::size_t rank = 0;  // 1-based, dense
};

/// Entries sorted by descending score, ties broken by ascending index.
struct Ranking {
    std::vector<RankEntry> entries;
};

enum class CorpusFormat { Plain, Jsonl };
enum class RankingFormat { Tsv, Jsonl };

/// Plain: one document per line (LF or CRLF). Jsonl: one object per line with
/// a required "text" string field; unknown fields are ignored. Empty lines in
/// plain format become empty documents, which are kept so output indices stay
/// aligned with input line numbers.
Corpus load_corpus(const std::string& path, CorpusFormat format);

/// Inverse of load_corpus. Plain output flattens embedded tabs/newlines to
/// single spaces (the format cannot carry them); jsonl is lossless.
void save_corpus(const Corpus& corpus, std::ostream& out, CorpusFormat format);
void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format);

/// Writes min(top_k, n) entries in rank order. Tsv has a header row and a
/// fixed 6-decimal score column; jsonl keeps full precision. When corpus is
/// null the text field is left empty.
void write_ranking(const Ranking& ranking, const Corpus* corpus, std::ostream& out,
                   RankingFormat format, std::optional<std::size_t> top_k = std::nullopt);
void write_ranking(const Ranking& ranking, const Corpus* corpus, const std::string& path,
                   RankingFormat format, std::optional<std::size_t> top_k = std::nullopt);

}  // namespace fastlexrank
