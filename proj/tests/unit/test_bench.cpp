#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "fastlexrank/bench.hpp"

using namespace fastlexrank;
using doctest::Approx;

TEST_CASE("synthetic embeddings are reproducible and unit-row") {
    EmbeddingMatrix a = synth_embeddings(40, 12, 5);
    EmbeddingMatrix b = synth_embeddings(40, 12, 5);
    CHECK(a.data == b.data);  // bit-identical for equal seeds
    CHECK(a.normalized);
    for (Index i = 0; i < a.data.rows(); ++i) {
        CHECK(a.data.row(i).norm() == Approx(1.0).epsilon(1e-12));
    }

    EmbeddingMatrix c = synth_embeddings(40, 12, 6);
    CHECK(a.data != c.data);
}

TEST_CASE("synthetic generator values are frozen across releases") {
    // the standard fixes the mt19937_64 stream, and the 53-bit mapping is
    // exact, so these values must never drift
    EmbeddingMatrix e = synth_embeddings(2, 2, 123);
    CHECK(e.data(0, 0) == Approx(0.490811028385646).epsilon(1e-15));
    CHECK(e.data(0, 1) == Approx(0.8712660526010552).epsilon(1e-15));
    CHECK(e.data(1, 0) == Approx(0.7866855552905716).epsilon(1e-15));
    CHECK(e.data(1, 1) == Approx(0.6173538993941522).epsilon(1e-15));

    EmbeddingMatrix s = synth_embeddings(3, 4, 42, SynthDistribution::Signed);
    CHECK(s.data(0, 0) == Approx(0.4819329222167953).epsilon(1e-15));
    CHECK(s.data(0, 3) == Approx(-0.6870012436623281).epsilon(1e-15));
}

TEST_CASE("distributions differ in sign support") {
    EmbeddingMatrix nonneg = synth_embeddings(30, 10, 3, SynthDistribution::Nonnegative);
    CHECK(nonneg.data.minCoeff() >= 0.0);
    EmbeddingMatrix with_sign = synth_embeddings(30, 10, 3, SynthDistribution::Signed);
    CHECK(with_sign.data.minCoeff() < 0.0);
}

TEST_CASE("synthetic generator validates shape") {
    CHECK_THROWS_AS(synth_embeddings(0, 4, 1), DataError);
    CHECK_THROWS_AS(synth_embeddings(4, 0, 1), DataError);
}

TEST_CASE("bench defaults to cold-cache timing") {
    BenchOptions options;
    CHECK(options.cold_cache);
}

TEST_CASE("bench suite times both methods and checks their agreement") {
    BenchOptions options;
    options.sizes = {50, 100};
    options.cold_cache = false;  // behavior under test, not timings
    options.dim = 8;
    options.reps = 3;
    std::vector<BenchResult> results = bench_suite(options);
    REQUIRE(results.size() == 4);

    CHECK(results[0].method == ScoreMethod::Fast);
    CHECK(results[1].method == ScoreMethod::Power);
    CHECK(results[0].n == 50);
    CHECK(results[3].n == 100);
    for (const BenchResult& r : results) {
        CHECK_FALSE(r.skipped);
        CHECK(r.reps == 3);
        CHECK(r.per_rep.size() == 3);
        CHECK(r.elapsed >= 0.0);
    }
    REQUIRE(results[1].tau_vs_fast.has_value());
    CHECK(*results[1].tau_vs_fast == 1.0);
    CHECK_FALSE(results[0].tau_vs_fast.has_value());
}

TEST_CASE("bench suite skips the power method over the memory guard") {
    BenchOptions options;
    options.sizes = {64};
    options.dim = 4;
    options.reps = 1;
    options.memory_budget_bytes = 1024;  // 64*64*8 = 32768 > 1024
    options.cold_cache = false;
    std::vector<BenchResult> results = bench_suite(options);
    REQUIRE(results.size() == 2);
    CHECK_FALSE(results[0].skipped);  // fast path never builds the dense matrix
    CHECK(results[1].skipped);
    CHECK(results[1].skip_reason == "memory-guard");
    CHECK(results[1].per_rep.empty());
}

TEST_CASE("bench suite skips sizes projected past the time budget") {
    BenchOptions options;
    options.sizes = {64, 128, 256};
    options.dim = 4;
    options.reps = 1;
    options.budget_seconds = 1e-9;  // first size always runs; projections kill the rest
    options.cold_cache = false;
    std::vector<BenchResult> results = bench_suite(options);
    REQUIRE(results.size() == 6);
    CHECK_FALSE(results[1].skipped);
    CHECK(results[3].skipped);
    CHECK(results[3].skip_reason == "budget-exceeded");
    CHECK(results[5].skipped);
}

TEST_CASE("bench options are validated") {
    BenchOptions empty;
    empty.sizes = {};
    CHECK_THROWS_AS(bench_suite(empty), DataError);

    BenchOptions unsorted;
    unsorted.sizes = {100, 50};
    CHECK_THROWS_AS(bench_suite(unsorted), DataError);

    BenchOptions no_reps;
    no_reps.sizes = {10};
    no_reps.reps = 0;
    CHECK_THROWS_AS(bench_suite(no_reps), DataError);
}

TEST_CASE("bench csv lists every row with a status") {
    BenchOptions options;
    options.sizes = {32};
    options.dim = 4;
    options.reps = 1;
    options.cold_cache = false;
    options.memory_budget_bytes = 1024;
    std::vector<BenchResult> results = bench_suite(options);

    std::ostringstream out;
    write_bench_csv(results, out);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "n,d,method,elapsed,reps,status");
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("32,4,fast,", 0) == 0);
    CHECK(line.find(",ok") != std::string::npos);
    REQUIRE(std::getline(in, line));
    CHECK(line == "32,4,power,,0,memory-guard");  // empty elapsed on skip
}

TEST_CASE("bench json round-trips through a parser") {
    BenchOptions options;
    options.sizes = {20};
    options.dim = 4;
    options.reps = 2;
    options.cold_cache = false;
    std::vector<BenchResult> results = bench_suite(options);
    auto parsed = nlohmann::json::parse(bench_to_json(results));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["method"] == "fast");
    CHECK(parsed[0]["n"] == 20);
    CHECK(parsed[0]["per_rep"].size() == 2);
    CHECK(parsed[0]["status"] == "ok");
    CHECK(parsed[1]["tau_vs_fast"].is_number());
}

TEST_CASE("log-log slope recovers a known exponent") {
    // synthetic timings t = c * n^2 must give slope 2 exactly
    std::vector<BenchResult> results;
    for (std::size_t n : {100, 200, 400, 800}) {
        BenchResult r;
        r.n = n;
        r.method = ScoreMethod::Power;
        r.elapsed = 3e-9 * static_cast<double>(n) * static_cast<double>(n);
        results.push_back(r);
    }
    auto slope = log_log_slope(results, ScoreMethod::Power);
    REQUIRE(slope.has_value());
    CHECK(*slope == Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(log_log_slope(results, ScoreMethod::Fast).has_value());

    // skipped rows are excluded; fewer than two points means no slope
    results[1].skipped = true;
    results[2].skipped = true;
    results[3].skipped = true;
    CHECK_FALSE(log_log_slope(results, ScoreMethod::Power).has_value());
}
