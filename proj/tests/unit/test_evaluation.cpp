#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "fastlexrank/bench.hpp"
#include "fastlexrank/evaluation.hpp"

using namespace fastlexrank;
using doctest::Approx;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, bool quantize) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = dist(rng);
        if (quantize) x = std::round(x * 8.0) / 8.0;  // forces ties
    }
    return v;
}

}  // namespace

TEST_CASE("kendall tau on hand-enumerated cases") {
    SUBCASE("identical is exactly 1") {
        std::vector<double> x{0.1, 0.7, 0.3, 0.9};
        KendallResult r = kendall_tau(x, x);
        CHECK(r.tau == 1.0);
        CHECK(r.counts.concordant == 6);
        CHECK(r.counts.discordant == 0);
    }
    SUBCASE("reversed is exactly -1") {
        std::vector<double> x{1, 2, 3, 4};
        std::vector<double> y{4, 3, 2, 1};
        CHECK(kendall_tau(x, y).tau == -1.0);
    }
    SUBCASE("one swap in three gives 1/3") {
        std::vector<double> x{1, 2, 3};
        std::vector<double> y{1, 3, 2};
        KendallResult r = kendall_tau(x, y);
        CHECK(r.counts.concordant == 2);
        CHECK(r.counts.discordant == 1);
        CHECK(r.tau == Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("tie in x only lands in ties_x") {
        std::vector<double> x{1, 1, 2};
        std::vector<double> y{1, 2, 3};
        KendallResult r = kendall_tau(x, y);
        CHECK(r.counts.concordant == 2);
        CHECK(r.counts.discordant == 0);
        CHECK(r.counts.ties_x == 1);
        CHECK(r.counts.ties_y == 0);
        // independently: scipy.stats.kendalltau gives 0.816496580927726
        CHECK(r.tau == Approx(0.816496580927726).epsilon(1e-15));
        CHECK(r.tau == Approx(2.0 / std::sqrt(6.0)).epsilon(1e-15));
    }
    SUBCASE("pairs tied in both are excluded entirely") {
        std::vector<double> x{1, 1, 2};
        std::vector<double> y{5, 5, 9};
        KendallResult r = kendall_tau(x, y);
        CHECK(r.counts.concordant == 2);
        CHECK(r.counts.ties_x == 0);
        CHECK(r.counts.ties_y == 0);
        CHECK(r.tau == 1.0);
    }
}

TEST_CASE("kendall tau is undefined for constant input") {
    std::vector<double> flat{2, 2, 2};
    std::vector<double> rising{1, 2, 3};
    CHECK_THROWS_AS(kendall_tau(flat, rising), DataError);
    CHECK_THROWS_AS(kendall_tau_fast(rising, flat), DataError);
    CHECK_THROWS_AS(kendall_tau(flat, flat), DataError);
}

TEST_CASE("kendall length validation") {
    std::vector<double> a{1, 2};
    std::vector<double> b{1, 2, 3};
    CHECK_THROWS_AS(kendall_pair_counts(a, b), DataError);
    std::vector<double> single{1};
    CHECK_THROWS_AS(kendall_pair_counts(single, single), DataError);
}

TEST_CASE("merge-sort counts equal brute force on random vectors") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 20; ++round) {
        const bool quantize = round % 2 == 0;
        std::vector<double> x = random_vector(rng, 1000, quantize);
        std::vector<double> y = random_vector(rng, 1000, quantize);
        KendallCounts brute = kendall_pair_counts(x, y);
        KendallCounts merge = kendall_pair_counts_fast(x, y);
        REQUIRE(brute.concordant == merge.concordant);
        REQUIRE(brute.discordant == merge.discordant);
        REQUIRE(brute.ties_x == merge.ties_x);
        REQUIRE(brute.ties_y == merge.ties_y);
        const std::uint64_t total =
            brute.concordant + brute.discordant + brute.ties_x + brute.ties_y;
        CHECK(total <= 1000ull * 999 / 2);  // both-tied pairs may be excluded
    }
}

TEST_CASE("tau is symmetric and flips sign with one reversed input") {
    std::mt19937_64 rng(99);
    std::vector<double> x = random_vector(rng, 300, true);
    std::vector<double> y = random_vector(rng, 300, true);
    KendallResult xy = kendall_tau_fast(x, y);
    KendallResult yx = kendall_tau_fast(y, x);
    CHECK(xy.tau == Approx(yx.tau).epsilon(1e-15));

    std::vector<double> neg(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];
    CHECK(kendall_tau_fast(x, neg).tau == Approx(-xy.tau).epsilon(1e-15));
}

TEST_CASE("tau is invariant under strictly increasing transforms") {
    std::mt19937_64 rng(7);
    std::vector<double> x = random_vector(rng, 200, false);
    std::vector<double> y = random_vector(rng, 200, false);
    std::vector<double> ey(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ey[i] = std::exp(3.0 * y[i] + 1.0);
    KendallCounts a = kendall_pair_counts_fast(x, y);
    KendallCounts b = kendall_pair_counts_fast(x, ey);
    CHECK(a.concordant == b.concordant);
    CHECK(a.discordant == b.discordant);
}

TEST_CASE("merge-sort variant handles large inputs with 64-bit counts") {
    const std::size_t n = 200000;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
    KendallResult r = kendall_tau_fast(x, x);
    CHECK(r.tau == 1.0);
    // n*(n-1)/2 = 19,999,900,000 does not fit in 32 bits
    CHECK(r.counts.concordant == 19999900000ull);
}

TEST_CASE("pearson correlation basics") {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> linear{3, 5, 7, 9, 11};
    CHECK(pearson(x, linear) == Approx(1.0).epsilon(1e-12));

    std::vector<double> inverse{11, 9, 7, 5, 3};
    CHECK(pearson(x, inverse) == Approx(-1.0).epsilon(1e-12));

    std::vector<double> flat{4, 4, 4, 4, 4};
    CHECK_THROWS_AS(pearson(x, flat), DataError);

    // hand value: x=(1,2,3), y=(1,1,2) -> r = sqrt(3)/2
    std::vector<double> x3{1, 2, 3};
    std::vector<double> y3{1, 1, 2};
    CHECK(pearson(x3, y3) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("compare_methods agrees on a well-conditioned corpus") {
    EmbeddingMatrix e = synth_embeddings(40, 8, 31);
    ComparisonResult result = compare_methods(e, 1e-10, 1000);
    CHECK(result.report.n == 40);
    REQUIRE(result.report.kendall_tau.has_value());
    CHECK(*result.report.kendall_tau == 1.0);
    REQUIRE(result.report.pearson_r.has_value());
    CHECK(*result.report.pearson_r > 0.99999);
    CHECK(result.report.power_converged);
    CHECK(result.report.power_iterations > 0);
    CHECK(result.fast_scores.size() == 40);
    CHECK(result.power_scores.size() == 40);
}

TEST_CASE("compare_methods reports degenerate agreement as null, not NaN") {
    // five identical documents: every score ties, tau and r are undefined
    EmbeddingMatrix e;
    e.data.resize(5, 2);
    for (Index i = 0; i < 5; ++i) e.data.row(i) << 1.0, 0.0;
    e.normalized = true;
    ComparisonResult result = compare_methods(e, 1e-8, 100);
    CHECK_FALSE(result.report.kendall_tau.has_value());
    CHECK_FALSE(result.report.pearson_r.has_value());

    auto parsed = nlohmann::json::parse(report_to_json(result.report));
    CHECK(parsed["kendall_tau"].is_null());
    CHECK(parsed["pearson_r"].is_null());
    CHECK(parsed["n"] == 5);
}

TEST_CASE("report json carries every field") {
    EmbeddingMatrix e = synth_embeddings(25, 4, 8);
    ComparisonResult result = compare_methods(e, 1e-8, 1000);
    auto parsed = nlohmann::json::parse(report_to_json(result.report));
    CHECK(parsed["n"] == 25);
    CHECK(parsed["kendall_tau"] == 1.0);
    CHECK(parsed["pearson_r"].get<double>() > 0.999);
    CHECK(parsed["power_converged"] == true);
    CHECK(parsed["power_iterations"].get<int>() > 0);
    const std::uint64_t total = parsed["concordant"].get<std::uint64_t>() +
                                parsed["discordant"].get<std::uint64_t>() +
                                parsed["ties_x"].get<std::uint64_t>() +
                                parsed["ties_y"].get<std::uint64_t>();
    CHECK(total <= 25ull * 24 / 2);
}

TEST_CASE("scatter csv pairs fast and power scores") {
    Vector fast(2), power(2);
    fast << 0.5, 0.25;
    power << 0.03, 0.015;
    std::ostringstream out;
    write_scatter_csv(fast, power, out);
    CHECK(out.str() == "fast,power\n0.5,0.029999999999999999\n0.25,0.014999999999999999\n");

    Vector mismatched(3);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_scatter_csv(fast, mismatched, sink), DataError);
}
