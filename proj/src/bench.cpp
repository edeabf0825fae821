#include "fastlexrank/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "fastlexrank/evaluation.hpp"
#include "fastlexrank/fast.hpp"

namespace fastlexrank {

namespace {

// Streams a buffer larger than the last-level cache so every timed rep starts
// from DRAM regardless of the working-set size. The buffer is written once and
// then only read: read-evicting leaves clean lines behind, so the timed rep
// does not compete with a backlog of dirty writebacks.
void evict_cache() {
    static std::vector<unsigned char> thrash;
    if (thrash.empty()) {
#ifdef _SC_LEVEL3_CACHE_SIZE
        const long level3 = sysconf(_SC_LEVEL3_CACHE_SIZE);
#else
        const long level3 = -1;
#endif
        const std::size_t cache_bytes =
            level3 > 0 ? static_cast<std::size_t>(level3) : (64ull << 20);
        thrash.resize(std::min(2 * cache_bytes, std::size_t{1} << 30));
        std::memset(thrash.data(), 0xA5, thrash.size());
    }
    std::size_t sum = 0;
    for (std::size_t i = 0; i < thrash.size(); i += 64) {
        sum += thrash[i];
    }
    asm volatile("" : : "r"(sum) : "memory");
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

CentralityScores run_power(const EmbeddingMatrix& embeddings, const BenchOptions& options) {
    TransitionMatrix transition;
    {
        SimilarityMatrix similarity =
            similarity_matrix(embeddings, options.memory_budget_bytes);
        transition = transition_matrix(similarity);
    }
    return power_method(transition, options.epsilon, options.max_iter);
}

}  // namespace

EmbeddingMatrix synth_embeddings(std::size_t n, std::size_t d, std::uint64_t seed,
                                 SynthDistribution distribution) {
    if (n == 0 || d == 0) throw DataError("synthetic embeddings need n > 0 and d > 0");
    std::mt19937_64 rng(seed);
    EmbeddingMatrix embeddings;
    embeddings.data.resize(static_cast<Index>(n), static_cast<Index>(d));
    for (Index i = 0; i < embeddings.data.rows(); ++i) {
        for (Index j = 0; j < embeddings.data.cols(); ++j) {
            // Top 53 bits -> uniform double in [0, 1); identical on every platform.
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            embeddings.data(i, j) = distribution == SynthDistribution::Signed ? 2.0 * u - 1.0 : u;
        }
        const double norm = embeddings.data.row(i).norm();
        if (norm == 0.0) throw DataError("synthetic row " + std::to_string(i) + " is zero");
        embeddings.data.row(i) /= norm;
    }
    embeddings.normalized = true;
    return embeddings;
}

std::vector<BenchResult> bench_suite(const BenchOptions& options, std::ostream* diagnostics) {
    if (options.sizes.empty()) throw DataError("benchmark needs at least one corpus size");
    if (!std::is_sorted(options.sizes.begin(), options.sizes.end())) {
        throw DataError("benchmark sizes must be ascending");
    }
    if (options.reps < 1) throw DataError("benchmark reps must be >= 1");

    std::vector<BenchResult> results;
    double last_power_time = -1.0;
    std::size_t last_power_n = 0;

    for (std::size_t n : options.sizes) {
        EmbeddingMatrix embeddings =
            synth_embeddings(n, options.dim, options.seed, options.distribution);

        BenchResult fast_result;
        fast_result.n = n;
        fast_result.d = options.dim;
        fast_result.method = ScoreMethod::Fast;
        CentralityScores fast_scores = fast_centrality(embeddings);  // warm-up, discarded
        for (int rep = 0; rep < options.reps; ++rep) {
            if (options.cold_cache) evict_cache();
            const double start = now_seconds();
            fast_scores = fast_centrality(embeddings);
            fast_result.per_rep.push_back(now_seconds() - start);
        }
        fast_result.reps = options.reps;
        fast_result.elapsed = median(fast_result.per_rep);
        if (diagnostics) {
            *diagnostics << "bench: n=" << n << " fast " << fast_result.elapsed << "s\n";
        }
        results.push_back(fast_result);

        BenchResult power_result;
        power_result.n = n;
        power_result.d = options.dim;
        power_result.method = ScoreMethod::Power;

        const std::size_t dense_bytes = n * n * sizeof(double);
        const bool dense_overflow = n != 0 && dense_bytes / n / sizeof(double) != n;
        double projected = 0.0;
        if (last_power_time >= 0.0) {
            const double growth = static_cast<double>(n) / static_cast<double>(last_power_n);
            projected = last_power_time * growth * growth;  // dense pipeline grows ~n^2
        }
        if (dense_overflow || dense_bytes > options.memory_budget_bytes) {
            power_result.skipped = true;
            power_result.skip_reason = "memory-guard";
        } else if (projected > options.budget_seconds) {
            power_result.skipped = true;
            power_result.skip_reason = "budget-exceeded";
        } else {
            CentralityScores power_scores = run_power(embeddings, options);  // warm-up
            for (int rep = 0; rep < options.reps; ++rep) {
                if (options.cold_cache) evict_cache();
                const double start = now_seconds();
                power_scores = run_power(embeddings, options);
                power_result.per_rep.push_back(now_seconds() - start);
            }
            power_result.reps = options.reps;
            power_result.elapsed = median(power_result.per_rep);
            last_power_time = power_result.elapsed;
            last_power_n = n;

            std::span<const double> fast_span(fast_scores.values.data(),
                                              static_cast<std::size_t>(fast_scores.values.size()));
            std::span<const double> power_span(
                power_scores.values.data(), static_cast<std::size_t>(power_scores.values.size()));
            try {
                power_result.tau_vs_fast = kendall_tau_fast(fast_span, power_span).tau;
            } catch (const DataError&) {
                // constant scores leave tau undefined; keep the timing anyway
            }
            if (diagnostics) {
                *diagnostics << "bench: n=" << n << " power " << power_result.elapsed << "s";
                if (power_result.tau_vs_fast) *diagnostics << " tau=" << *power_result.tau_vs_fast;
                *diagnostics << "\n";
            }
        }
        if (diagnostics && power_result.skipped) {
            *diagnostics << "bench: n=" << n << " power skipped (" << power_result.skip_reason
                         << ")\n";
        }
        results.push_back(power_result);
    }
    return results;
}

void write_bench_csv(const std::vector<BenchResult>& results, std::ostream& out) {
    out << "n,d,method,elapsed,reps,status\n";
    char buf[64];
    for (const BenchResult& r : results) {
        out << r.n << ',' << r.d << ',' << (r.method == ScoreMethod::Fast ? "fast" : "power")
            << ',';
        if (!r.skipped) {
            std::snprintf(buf, sizeof(buf), "%.9g", r.elapsed);
            out << buf;
        }
        out << ',' << r.reps << ',' << (r.skipped ? r.skip_reason : "ok") << '\n';
    }
}

std::string bench_to_json(const std::vector<BenchResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BenchResult& r : results) {
        nlohmann::json item{
            {"n", r.n},
            {"d", r.d},
            {"method", r.method == ScoreMethod::Fast ? "fast" : "power"},
            {"elapsed", r.skipped ? nlohmann::json() : nlohmann::json(r.elapsed)},
            {"reps", r.reps},
            {"per_rep", r.per_rep},
            {"status", r.skipped ? r.skip_reason : "ok"},
            {"tau_vs_fast", r.tau_vs_fast ? nlohmann::json(*r.tau_vs_fast) : nlohmann::json()},
        };
        arr.push_back(std::move(item));
    }
    return arr.dump(2);
}

std::optional<double> log_log_slope(const std::vector<BenchResult>& results, ScoreMethod method) {
    std::vector<double> xs, ys;
    for (const BenchResult& r : results) {
        if (r.method != method || r.skipped) continue;
        xs.push_back(std::log(static_cast<double>(r.n)));
        ys.push_back(std::log(std::max(r.elapsed, 1e-12)));
    }
    if (xs.size() < 2) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

}  // namespace fastlexrank
