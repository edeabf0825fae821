#include <doctest.h>

#include <cmath>

#include "fastlexrank/tfidf.hpp"
#include "helpers.hpp"

using namespace fastlexrank;
using doctest::Approx;
using test_helpers::TempFile;

namespace {

Corpus make_corpus(std::initializer_list<const char*> texts) {
    Corpus corpus;
    std::size_t i = 0;
    for (const char* text : texts) corpus.documents.push_back({i++, text});
    return corpus;
}

}  // namespace

TEST_CASE("tokenizer lowercases and keeps only multi-character word runs") {
    CHECK(tokenize("Hello, World!") == std::vector<std::string>{"hello", "world"});
    CHECK(tokenize("a I x") == std::vector<std::string>{});  // single characters dropped
    CHECK(tokenize("x99 _under_ mixed-CASE") ==
          std::vector<std::string>{"x99", "_under_", "mixed", "case"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("...!!...") == std::vector<std::string>{});
}

TEST_CASE("tokenizer counts codepoints, not bytes, for multibyte text") {
    // "é" alone is one codepoint (two bytes) and is dropped like any other
    // single-character token; "né" and "café" are kept.
    CHECK(tokenize("\xc3\xa9") == std::vector<std::string>{});
    CHECK(tokenize("n\xc3\xa9 caf\xc3\xa9") ==
          std::vector<std::string>{"n\xc3\xa9", "caf\xc3\xa9"});
}

TEST_CASE("builtin stop list") {
    const auto& stopwords = builtin_english_stopwords();
    CHECK(stopwords.size() == 318);
    CHECK(stopwords.count("the") == 1);
    CHECK(stopwords.count("whereupon") == 1);
    CHECK(stopwords.count("cat") == 0);
}

TEST_CASE("stop list file: comments, blank lines, case folding") {
    TempFile f("stop.txt");
    f.write("# comment line\nThe\n\n  and  \n");
    auto stopwords = load_stopwords(f.str());
    CHECK(stopwords.size() == 2);
    CHECK(stopwords.count("the") == 1);
    CHECK(stopwords.count("and") == 1);
}

TEST_CASE("vocabulary is sorted with per-document frequencies") {
    Corpus corpus = make_corpus({"zebra apple apple", "apple banana"});
    Vocabulary vocab = build_vocabulary(corpus, {});
    REQUIRE(vocab.terms == std::vector<std::string>{"apple", "banana", "zebra"});
    // df counts documents, not occurrences: "apple" twice in doc 0 is one
    CHECK(vocab.doc_freq == std::vector<std::size_t>{2, 1, 1});
    CHECK(vocab.term_to_col.at("zebra") == 2);
}

TEST_CASE("vocabulary excludes stop words and errors when nothing is left") {
    Corpus corpus = make_corpus({"the of and", "the the"});
    CHECK_THROWS_AS(build_vocabulary(corpus, builtin_english_stopwords()), DataError);
}

TEST_CASE("tf-idf matrix matches the smoothed-idf, L2-normalized formulation") {
    // Independently computed reference (sklearn TfidfVectorizer with its
    // english stop list, which this library ships): vocabulary
    // [cat, dog, log, mat, sat], both documents share only "sat".
    Corpus corpus = make_corpus({"the cat sat on the mat", "the dog sat on the log"});
    Vocabulary vocab = build_vocabulary(corpus, builtin_english_stopwords());
    REQUIRE(vocab.terms == std::vector<std::string>{"cat", "dog", "log", "mat", "sat"});

    TfidfMatrix tfidf = tfidf_matrix(corpus, vocab);
    REQUIRE(tfidf.matrix.rows() == 2);
    REQUIRE(tfidf.matrix.cols() == 5);
    CHECK(tfidf.matrix(0, 0) == Approx(0.6316672017376245).epsilon(1e-12));
    CHECK(tfidf.matrix(0, 1) == 0.0);
    CHECK(tfidf.matrix(0, 3) == Approx(0.6316672017376245).epsilon(1e-12));
    CHECK(tfidf.matrix(0, 4) == Approx(0.4494364165239821).epsilon(1e-12));
    CHECK(tfidf.matrix(1, 1) == Approx(0.6316672017376245).epsilon(1e-12));
    CHECK(tfidf.matrix(1, 4) == Approx(0.4494364165239821).epsilon(1e-12));

    for (Index i = 0; i < tfidf.matrix.rows(); ++i) {
        CHECK(tfidf.matrix.row(i).norm() == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("term frequency raises the weight of repeated terms") {
    Corpus corpus = make_corpus({"echo echo echo delta", "delta foxtrot"});
    Vocabulary vocab = build_vocabulary(corpus, {});
    TfidfMatrix tfidf = tfidf_matrix(corpus, vocab);
    const std::size_t echo = vocab.term_to_col.at("echo");
    const std::size_t delta = vocab.term_to_col.at("delta");
    CHECK(tfidf.matrix(0, static_cast<Index>(echo)) >
          tfidf.matrix(0, static_cast<Index>(delta)));
}

TEST_CASE("stopword-only documents keep an all-zero row") {
    Corpus corpus = make_corpus({"the and of", "rocket engine", "rocket fuel"});
    Vocabulary vocab = build_vocabulary(corpus, builtin_english_stopwords());
    TfidfMatrix tfidf = tfidf_matrix(corpus, vocab);
    REQUIRE(tfidf.matrix.rows() == 3);
    CHECK(!tfidf.matrix.row(0).any());
    CHECK(tfidf.matrix.row(1).any());
}

TEST_CASE("to_embeddings splits zero rows and preserves corpus indices") {
    Corpus corpus = make_corpus({"the and of", "rocket engine", "of the", "rocket fuel"});
    Vocabulary vocab = build_vocabulary(corpus, builtin_english_stopwords());
    TfidfEmbeddings converted = to_embeddings(tfidf_matrix(corpus, vocab));
    CHECK(converted.kept == std::vector<std::size_t>{1, 3});
    CHECK(converted.dropped == std::vector<std::size_t>{0, 2});
    REQUIRE(converted.embeddings.rows() == 2);
    CHECK(converted.embeddings.normalized);
    CHECK(converted.embeddings.data.row(0).norm() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("to_embeddings errors when every row is zero") {
    Corpus corpus = make_corpus({"the", "and and"});
    Vocabulary vocab;  // deliberately non-empty vocab, but no doc matches it
    vocab.terms = {"rocket"};
    vocab.doc_freq = {0};
    vocab.term_to_col["rocket"] = 0;
    CHECK_THROWS_AS(to_embeddings(tfidf_matrix(corpus, vocab)), DataError);
}

TEST_CASE("tf-idf matrix respects the memory budget") {
    Corpus corpus = make_corpus({"alpha beta gamma", "delta epsilon zeta"});
    Vocabulary vocab = build_vocabulary(corpus, {});
    CHECK_THROWS_AS(tfidf_matrix(corpus, vocab, 8), ResourceLimitError);
}
