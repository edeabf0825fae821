// fastlexrank command-line tool: rank documents by centrality, compare the
// linear-time scores against the power-method reference, benchmark both, and
// dump tf-idf matrices. Diagnostics go to stderr; data goes to stdout or the
// requested files.
//
// Exit codes: 0 success, 1 usage error, 2 bad or degenerate input data,
// 3 a memory budget would be exceeded.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fastlexrank/baseline.hpp"
#include "fastlexrank/bench.hpp"
#include "fastlexrank/corpus.hpp"
#include "fastlexrank/embeddings.hpp"
#include "fastlexrank/evaluation.hpp"
#include "fastlexrank/fast.hpp"
#include "fastlexrank/scores.hpp"
#include "fastlexrank/tfidf.hpp"
#include "fastlexrank/types.hpp"

namespace flx = fastlexrank;

namespace {

/// Option combinations the parser cannot catch. Exit code 1, like parse errors.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

flx::CorpusFormat corpus_format(const std::string& flag, const std::string& path) {
    if (flag == "plain") return flx::CorpusFormat::Plain;
    if (flag == "jsonl") return flx::CorpusFormat::Jsonl;
    return has_suffix(path, ".jsonl") ? flx::CorpusFormat::Jsonl : flx::CorpusFormat::Plain;
}

flx::EmbeddingFormat embedding_format(const std::string& flag, const std::string& path) {
    if (flag == "csv") return flx::EmbeddingFormat::Csv;
    if (flag == "fbin") return flx::EmbeddingFormat::Fbin;
    return has_suffix(path, ".fbin") ? flx::EmbeddingFormat::Fbin : flx::EmbeddingFormat::Csv;
}

flx::RankingFormat ranking_format(const std::string& flag, const std::string& path) {
    if (flag == "tsv") return flx::RankingFormat::Tsv;
    if (flag == "jsonl") return flx::RankingFormat::Jsonl;
    return has_suffix(path, ".jsonl") ? flx::RankingFormat::Jsonl : flx::RankingFormat::Tsv;
}

/// Runs `fn(out)` against stdout when path is "-", else against the file.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw flx::DataError("cannot open output file: " + path);
    fn(out);
    out.flush();
    if (!out) throw flx::DataError("write failed: " + path);
}

struct InputOptions {
    std::string input_path;
    std::string input_format = "auto";  // plain|jsonl
    std::string representation = "auto";  // tfidf|embeddings
    std::string embeddings_path;
    std::string embeddings_format = "auto";  // csv|fbin
    std::string stopwords_path;
    std::size_t memory_budget_mb = 2048;

    std::size_t budget_bytes() const { return memory_budget_mb * (std::size_t{1} << 20); }
};

void add_input_options(CLI::App* cmd, InputOptions& opt, bool corpus_only) {
    cmd->add_option("--input", opt.input_path, "Corpus file, one document per line");
    cmd->add_option("--input-format", opt.input_format,
                    "Corpus format; auto infers jsonl from the .jsonl extension")
        ->check(CLI::IsMember({"auto", "plain", "jsonl"}))
        ->capture_default_str();
    if (!corpus_only) {
        cmd->add_option("--representation", opt.representation,
                        "Document representation; auto picks embeddings when --embeddings is "
                        "given, tfidf otherwise")
            ->check(CLI::IsMember({"auto", "tfidf", "embeddings"}))
            ->capture_default_str();
        cmd->add_option("--embeddings", opt.embeddings_path,
                        "Precomputed embedding matrix, one row per document");
        cmd->add_option("--embeddings-format", opt.embeddings_format,
                        "Embedding file format; auto infers fbin from the .fbin extension")
            ->check(CLI::IsMember({"auto", "csv", "fbin"}))
            ->capture_default_str();
    }
    cmd->add_option("--stopwords", opt.stopwords_path,
                    "Stop list file for tf-idf, one term per line (default: built-in English "
                    "list)");
    cmd->add_option("--memory-budget-mb", opt.memory_budget_mb,
                    "Refuse any single matrix allocation above this many MiB")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

struct LoadedInput {
    std::optional<flx::Corpus> corpus;
    flx::EmbeddingMatrix embeddings;           // unit rows
    std::vector<std::size_t> row_to_doc;       // embedding row -> corpus index
    std::size_t corpus_size = 0;               // documents before zero-row drops
};

LoadedInput load_input(const InputOptions& opt) {
    LoadedInput loaded;
    std::string repr = opt.representation;
    if (repr == "auto") repr = opt.embeddings_path.empty() ? "tfidf" : "embeddings";

    if (!opt.input_path.empty()) {
        loaded.corpus = flx::load_corpus(opt.input_path,
                                         corpus_format(opt.input_format, opt.input_path));
    }

    if (repr == "embeddings") {
        if (opt.embeddings_path.empty()) {
            throw UsageError("--representation embeddings requires --embeddings");
        }
        flx::EmbeddingMatrix raw = flx::load_embeddings(
            opt.embeddings_path, embedding_format(opt.embeddings_format, opt.embeddings_path));
        loaded.embeddings = flx::normalize_rows(std::move(raw));
        const auto rows = static_cast<std::size_t>(loaded.embeddings.rows());
        if (loaded.corpus && loaded.corpus->size() != rows) {
            throw flx::DataError("corpus has " + std::to_string(loaded.corpus->size()) +
                                 " documents but embeddings have " + std::to_string(rows) +
                                 " rows");
        }
        loaded.corpus_size = rows;
        loaded.row_to_doc.resize(rows);
        for (std::size_t i = 0; i < rows; ++i) loaded.row_to_doc[i] = i;
        return loaded;
    }

    if (!loaded.corpus) throw UsageError("--representation tfidf requires --input");
    const std::unordered_set<std::string> stopwords =
        opt.stopwords_path.empty() ? flx::builtin_english_stopwords()
                                   : flx::load_stopwords(opt.stopwords_path);
    flx::Vocabulary vocabulary = flx::build_vocabulary(*loaded.corpus, stopwords);
    flx::TfidfMatrix tfidf = flx::tfidf_matrix(*loaded.corpus, vocabulary, opt.budget_bytes());
    flx::TfidfEmbeddings converted = flx::to_embeddings(tfidf);
    if (!converted.dropped.empty()) {
        std::ostringstream msg;
        msg << "warning: " << converted.dropped.size() << " of " << loaded.corpus->size()
            << " documents have no in-vocabulary terms and are excluded from ranking:";
        const std::size_t shown = std::min<std::size_t>(converted.dropped.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) msg << ' ' << converted.dropped[i];
        if (shown < converted.dropped.size()) msg << " ...";
        std::cerr << msg.str() << "\n";
    }
    loaded.corpus_size = loaded.corpus->size();
    loaded.embeddings = std::move(converted.embeddings);
    loaded.row_to_doc = std::move(converted.kept);
    return loaded;
}

struct RankOptions {
    InputOptions input;
    std::string method = "fast";
    std::string scale = "raw";
    std::optional<std::size_t> top_k;
    std::string output_path = "-";
    std::string output_format = "auto";  // tsv|jsonl
    double epsilon = flx::kDefaultEpsilon;
    int max_iter = flx::kDefaultMaxIterations;
    std::optional<std::uint64_t> seed;
};

int run_rank(const RankOptions& opt) {
    LoadedInput loaded = load_input(opt.input);
    if (opt.method == "power" && opt.scale != "raw") {
        throw UsageError("--scale applies to the fast method only");
    }

    flx::CentralityScores scores;
    const double start = now_seconds();
    if (opt.method == "fast") {
        flx::FastScoreOptions fast_options;
        if (opt.scale == "l1") fast_options.output_scale = flx::OutputScale::L1;
        if (opt.scale == "cosine_mean") fast_options.output_scale = flx::OutputScale::CosineMean;
        scores = flx::fast_centrality(loaded.embeddings, fast_options);
    } else {
        flx::TransitionMatrix transition;
        {
            flx::SimilarityMatrix similarity =
                flx::similarity_matrix(loaded.embeddings, opt.input.budget_bytes());
            transition = flx::transition_matrix(similarity);
        }
        scores = flx::power_method(transition, opt.epsilon, opt.max_iter, opt.seed);
    }
    const double elapsed = now_seconds() - start;

    flx::Ranking ranking =
        opt.top_k ? flx::top_k(scores, *opt.top_k) : flx::make_ranking(scores);
    for (flx::RankEntry& entry : ranking.entries) entry.index = loaded.row_to_doc[entry.index];

    const flx::Corpus* corpus = loaded.corpus ? &*loaded.corpus : nullptr;
    const flx::RankingFormat format = ranking_format(opt.output_format, opt.output_path);
    if (opt.output_path == "-") {
        flx::write_ranking(ranking, corpus, std::cout, format);
        std::cout.flush();
    } else {
        flx::write_ranking(ranking, corpus, opt.output_path, format);
    }

    std::cerr << "rank: n=" << loaded.corpus_size << " rows=" << loaded.embeddings.rows()
              << " method=" << opt.method << " elapsed=" << elapsed << "s";
    if (scores.iterations) {
        std::cerr << " iterations=" << *scores.iterations << " converged="
                  << (scores.converged.value_or(false) ? "yes" : "no");
    }
    std::cerr << "\n";
    return 0;
}

struct CompareOptions {
    InputOptions input;
    std::string report_path = "-";
    std::string scatter_path;
    double epsilon = flx::kDefaultEpsilon;
    int max_iter = flx::kDefaultMaxIterations;
};

int run_compare(const CompareOptions& opt) {
    LoadedInput loaded = load_input(opt.input);
    const double start = now_seconds();
    flx::ComparisonResult result = flx::compare_methods(loaded.embeddings, opt.epsilon,
                                                        opt.max_iter, opt.input.budget_bytes());
    const double elapsed = now_seconds() - start;

    with_output(opt.report_path,
                [&](std::ostream& out) { out << flx::report_to_json(result.report) << "\n"; });
    if (!opt.scatter_path.empty()) {
        with_output(opt.scatter_path, [&](std::ostream& out) {
            flx::write_scatter_csv(result.fast_scores, result.power_scores, out);
        });
    }

    std::cerr << "compare: n=" << result.report.n
              << " power_iterations=" << result.report.power_iterations
              << " converged=" << (result.report.power_converged ? "yes" : "no")
              << " elapsed=" << elapsed << "s\n";
    return 0;
}

struct BenchCliOptions {
    std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};
    std::size_t dim = 384;
    std::uint64_t seed = 42;
    int reps = 5;
    double budget_seconds = 120.0;
    std::string distribution = "nonnegative";
    std::string cache_mode = "cold";
    std::size_t memory_budget_mb = 2048;
    double epsilon = flx::kDefaultEpsilon;
    int max_iter = flx::kDefaultMaxIterations;
    std::string csv_path = "-";
    std::string json_path;
};

int run_bench(const BenchCliOptions& opt) {
    flx::BenchOptions options;
    options.sizes = opt.sizes;
    options.dim = opt.dim;
    options.seed = opt.seed;
    options.reps = opt.reps;
    options.budget_seconds = opt.budget_seconds;
    options.memory_budget_bytes = opt.memory_budget_mb * (std::size_t{1} << 20);
    options.distribution = opt.distribution == "signed" ? flx::SynthDistribution::Signed
                                                        : flx::SynthDistribution::Nonnegative;
    options.cold_cache = opt.cache_mode == "cold";
    options.epsilon = opt.epsilon;
    options.max_iter = opt.max_iter;

    std::vector<flx::BenchResult> results = flx::bench_suite(options, &std::cerr);

    with_output(opt.csv_path, [&](std::ostream& out) { flx::write_bench_csv(results, out); });
    if (!opt.json_path.empty()) {
        with_output(opt.json_path,
                    [&](std::ostream& out) { out << flx::bench_to_json(results) << "\n"; });
    }

    const std::optional<double> fast_slope = flx::log_log_slope(results, flx::ScoreMethod::Fast);
    const std::optional<double> power_slope = flx::log_log_slope(results, flx::ScoreMethod::Power);
    std::cerr << "bench: log-log slope fast=";
    if (fast_slope) std::cerr << *fast_slope; else std::cerr << "n/a";
    std::cerr << " power=";
    if (power_slope) std::cerr << *power_slope; else std::cerr << "n/a";
    std::cerr << "\n";
    return 0;
}

struct TfidfCliOptions {
    InputOptions input;
    std::string matrix_path;
    std::string matrix_format = "auto";  // csv|fbin
    std::string vocab_path;
};

int run_tfidf(const TfidfCliOptions& opt) {
    if (opt.input.input_path.empty()) throw UsageError("tfidf requires --input");
    flx::Corpus corpus = flx::load_corpus(
        opt.input.input_path, corpus_format(opt.input.input_format, opt.input.input_path));
    const std::unordered_set<std::string> stopwords =
        opt.input.stopwords_path.empty() ? flx::builtin_english_stopwords()
                                         : flx::load_stopwords(opt.input.stopwords_path);
    flx::Vocabulary vocabulary = flx::build_vocabulary(corpus, stopwords);
    flx::TfidfMatrix tfidf =
        flx::tfidf_matrix(corpus, vocabulary, opt.input.budget_bytes());

    std::size_t zero_rows = 0;
    for (flx::Index i = 0; i < tfidf.matrix.rows(); ++i) {
        if (!tfidf.matrix.row(i).any()) ++zero_rows;
    }

    if (!opt.matrix_path.empty()) {
        flx::save_embeddings(tfidf.matrix, opt.matrix_path,
                             embedding_format(opt.matrix_format, opt.matrix_path));
    }
    if (!opt.vocab_path.empty()) {
        with_output(opt.vocab_path, [&](std::ostream& out) {
            for (std::size_t t = 0; t < vocabulary.size(); ++t) {
                out << vocabulary.terms[t] << '\t' << vocabulary.doc_freq[t] << '\n';
            }
        });
    }

    std::cerr << "tfidf: n=" << corpus.size() << " terms=" << vocabulary.size()
              << " zero_rows=" << zero_rows << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Text centrality ranking: linear-time LexRank scores with a power-method "
                 "reference, comparison metrics, and benchmarks"};
    app.require_subcommand(1);

    RankOptions rank_opt;
    CLI::App* rank_cmd = app.add_subcommand("rank", "Score and rank documents by centrality");
    add_input_options(rank_cmd, rank_opt.input, false);
    rank_cmd->add_option("--method", rank_opt.method, "Scoring method")
        ->check(CLI::IsMember({"fast", "power"}))
        ->capture_default_str();
    rank_cmd->add_option("--scale", rank_opt.scale,
                         "Output scale for the fast method: raw scores, L1-normalized (matches "
                         "the power method), or cosine similarity to the corpus mean")
        ->check(CLI::IsMember({"raw", "l1", "cosine_mean"}))
        ->capture_default_str();
    rank_cmd->add_option("--top-k", rank_opt.top_k, "Keep only the k highest-scoring documents")
        ->check(CLI::PositiveNumber);
    rank_cmd->add_option("--output", rank_opt.output_path, "Ranking destination; - is stdout")
        ->capture_default_str();
    rank_cmd->add_option("--output-format", rank_opt.output_format,
                         "Ranking format; auto infers jsonl from the .jsonl extension, tsv "
                         "otherwise")
        ->check(CLI::IsMember({"auto", "tsv", "jsonl"}))
        ->capture_default_str();
    rank_cmd->add_option("--epsilon", rank_opt.epsilon, "Power-method convergence threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    rank_cmd->add_option("--max-iter", rank_opt.max_iter, "Power-method iteration cap")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    rank_cmd->add_option("--seed", rank_opt.seed,
                         "Seed a random power-method start (default: uniform start)");

    CompareOptions compare_opt;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Run both methods and report ranking agreement (Kendall tau, Pearson)");
    add_input_options(compare_cmd, compare_opt.input, false);
    compare_cmd->add_option("--report", compare_opt.report_path,
                            "Agreement report (json); - is stdout")
        ->capture_default_str();
    compare_cmd->add_option("--scatter", compare_opt.scatter_path,
                            "Optional per-document score pairs (csv: fast,power)");
    compare_cmd->add_option("--epsilon", compare_opt.epsilon, "Power-method convergence threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare_cmd->add_option("--max-iter", compare_opt.max_iter, "Power-method iteration cap")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();

    BenchCliOptions bench_opt;
    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "Time both methods on synthetic corpora of increasing size");
    bench_cmd->add_option("--sizes", bench_opt.sizes, "Corpus sizes, ascending")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--dim", bench_opt.dim, "Embedding dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_opt.seed, "Synthetic data seed")->capture_default_str();
    bench_cmd->add_option("--reps", bench_opt.reps, "Timed repetitions (median reported)")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    bench_cmd
        ->add_option("--budget-seconds", bench_opt.budget_seconds,
                     "Skip power-method sizes whose projected runtime exceeds this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd
        ->add_option("--distribution", bench_opt.distribution,
                     "Synthetic entry distribution; nonnegative guarantees positive similarity "
                     "row sums")
        ->check(CLI::IsMember({"nonnegative", "signed"}))
        ->capture_default_str();
    bench_cmd
        ->add_option("--cache-mode", bench_opt.cache_mode,
                     "cold evicts the CPU cache before each timed rep so per-element cost is "
                     "comparable across sizes; warm leaves caches as they are")
        ->check(CLI::IsMember({"cold", "warm"}))
        ->capture_default_str();
    bench_cmd
        ->add_option("--memory-budget-mb", bench_opt.memory_budget_mb,
                     "Skip power-method sizes whose dense matrix exceeds this many MiB")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--epsilon", bench_opt.epsilon, "Power-method convergence threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--max-iter", bench_opt.max_iter, "Power-method iteration cap")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    bench_cmd->add_option("--output-csv", bench_opt.csv_path, "Timing table; - is stdout")
        ->capture_default_str();
    bench_cmd->add_option("--output-json", bench_opt.json_path,
                          "Optional full results including per-rep timings");

    TfidfCliOptions tfidf_opt;
    CLI::App* tfidf_cmd =
        app.add_subcommand("tfidf", "Build and export the tf-idf matrix of a corpus");
    add_input_options(tfidf_cmd, tfidf_opt.input, true);
    tfidf_cmd->add_option("--output", tfidf_opt.matrix_path,
                          "Matrix destination (csv or fbin); zero rows are kept so row i is "
                          "document i");
    tfidf_cmd->add_option("--output-format", tfidf_opt.matrix_format,
                          "Matrix format; auto infers fbin from the .fbin extension")
        ->check(CLI::IsMember({"auto", "csv", "fbin"}))
        ->capture_default_str();
    tfidf_cmd->add_option("--vocab", tfidf_opt.vocab_path,
                          "Optional vocabulary listing (term <tab> document frequency, column "
                          "order)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*rank_cmd) return run_rank(rank_opt);
        if (*compare_cmd) return run_compare(compare_opt);
        if (*bench_cmd) return run_bench(bench_opt);
        if (*tfidf_cmd) return run_tfidf(tfidf_opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const flx::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
