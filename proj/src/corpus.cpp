#include "fastlexrank/corpus.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace fastlexrank {

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

Corpus load_plain(std::istream& in) {
    Corpus corpus;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        corpus.documents.push_back({corpus.documents.size(), line});
    }
    return corpus;
}

Corpus load_jsonl(std::istream& in, const std::string& path) {
    Corpus corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path + ": line " + std::to_string(lineno) +
                            ": malformed JSON: " + e.what());
        }
        if (!record.is_object() || !record.contains("text")) {
            throw DataError(path + ": line " + std::to_string(lineno) +
                            ": missing required \"text\" field");
        }
        if (!record["text"].is_string()) {
            throw DataError(path + ": line " + std::to_string(lineno) +
                            ": \"text\" field is not a string");
        }
        corpus.documents.push_back({corpus.documents.size(), record["text"].get<std::string>()});
    }
    return corpus;
}

// Tabs and newlines would break the column/line structure of tsv and plain
// output; each becomes a single space.
std::string flatten_whitespace(const std::string& text) {
    std::string out = text;
    for (char& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

std::string format_score_fixed(double score) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    return buf;
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path);

    Corpus corpus = format == CorpusFormat::Plain ? load_plain(in) : load_jsonl(in, path);
    if (corpus.documents.empty()) {
        throw DataError("corpus file has no documents: " + path);
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, std::ostream& out, CorpusFormat format) {
    for (const Document& doc : corpus.documents) {
        if (format == CorpusFormat::Plain) {
            out << flatten_whitespace(doc.text) << '\n';
        } else {
            out << nlohmann::json{{"text", doc.text}}.dump() << '\n';
        }
    }
}

void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    save_corpus(corpus, out, format);
}

void write_ranking(const Ranking& ranking, const Corpus* corpus, std::ostream& out,
                   RankingFormat format, std::optional<std::size_t> top_k) {
    if (top_k && *top_k == 0) throw DataError("top_k must be at least 1");
    std::size_t limit = ranking.entries.size();
    if (top_k && *top_k < limit) limit = *top_k;

    if (format == RankingFormat::Tsv) out << "rank\tindex\tscore\ttext\n";
    for (std::size_t i = 0; i < limit; ++i) {
        const RankEntry& entry = ranking.entries[i];
        if (corpus && entry.index >= corpus->size()) {
            throw DataError("ranking index " + std::to_string(entry.index) +
                            " out of range for corpus of size " + std::to_string(corpus->size()));
        }
        const std::string text = corpus ? corpus->text(entry.index) : std::string{};
        if (format == RankingFormat::Tsv) {
            out << entry.rank << '\t' << entry.index << '\t'
                << format_score_fixed(entry.score) << '\t' << flatten_whitespace(text) << '\n';
        } else {
            nlohmann::json record{{"rank", entry.rank},
                                  {"index", entry.index},
                                  {"score", entry.score},
                                  {"text", text}};
            out << record.dump() << '\n';
        }
    }
}

void write_ranking(const Ranking& ranking, const Corpus* corpus, const std::string& path,
                   RankingFormat format, std::optional<std::size_t> top_k) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    write_ranking(ranking, corpus, out, format, top_k);
}

}  // namespace fastlexrank
