#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <vector>

#include "ulamkac/numeric.hpp"
#include "ulamkac/rng.hpp"

namespace ulamkac {

/// Exact distribution of X_n over the n! equiprobable histories.
struct PathDistribution {
    int n;
    std::map<std::uint64_t, Rat> pmf;
};

inline constexpr int kDefaultEnumerationCap = 9;

/// Depth-first sweep of all n! histories.  Values along one history are
/// strictly increasing, so they stay below 2^n and fit machine words for
/// any enumerable n.
inline PathDistribution enumerate_distribution(int n, int cap = kDefaultEnumerationCap) {
    if (n < 0) throw std::invalid_argument("enumerate_distribution: n must be >= 0");
    if (n > cap || n > 20) throw BudgetError("enumerate_distribution: n exceeds the enumeration cap");
    std::map<std::uint64_t, long long> counts;
    std::vector<std::uint64_t> hist;
    hist.reserve(n + 1);
    hist.push_back(1);
    auto rec = [&](auto&& self, int k) -> void {
        if (k == n) {
            ++counts[hist.back()];
            return;
        }
        const std::uint64_t last = hist.back();
        for (int u = 0; u <= k; ++u) {
            hist.push_back(last + hist[u]);
            self(self, k + 1);
            hist.pop_back();
        }
    };
    rec(rec, 0);
    const Int total = factorial(n);
    PathDistribution dist{n, {}};
    for (const auto& [value, count] : counts) {
        Rat p(Int(static_cast<long>(count)), total);
        p.canonicalize();
        dist.pmf.emplace(value, p);
    }
    return dist;
}

/// Brute-force E[X_n^m] from the enumerated distribution.  This is the
/// ground truth the recurrence engine is checked against.
inline Rat exact_moment_oracle(int m, int n, int cap = kDefaultEnumerationCap) {
    if (m < 0) throw std::invalid_argument("exact_moment_oracle: m must be >= 0");
    auto dist = enumerate_distribution(n, cap);
    Rat acc(0);
    for (const auto& [value, prob] : dist.pmf) {
        Int power;
        mpz_ui_pow_ui(power.get_mpz_t(), value, m);
        acc += prob * Rat(power);
    }
    return acc;
}

/// Monte Carlo configuration.  Streams partition the sample budget with
/// deterministic per-stream seeds, so the merged estimate is a pure
/// function of (seed, samples, streams) regardless of thread scheduling.
struct SimConfig {
    int n_max = 10;
    long long samples = 10'000;
    std::uint64_t seed = 0;
    std::vector<int> moment_orders = {1};
    int streams = 8;
    int threads = 1;
    bool collect_final_logs = false;  // per-sample ln X_{n_max}, histogram fodder
};

struct SimRow {
    int m;
    int n;
    Rat mean;          // exact sample mean
    double stddev;     // sample standard deviation of X_n^m
    double std_error;  // stddev / sqrt(samples)
};

struct SimResult {
    SimConfig config;
    std::vector<SimRow> rows;
    std::vector<double> final_logs;  // filled when collect_final_logs
};

namespace detail {

struct StreamSums {
    // per (order index, n): sum of X_n^m and of X_n^{2m}
    std::vector<std::vector<Int>> sum, sum_sq;
    std::vector<double> logs;
};

inline StreamSums run_stream(const SimConfig& cfg, std::uint64_t stream, long long count) {
    const std::size_t orders = cfg.moment_orders.size();
    StreamSums sums;
    sums.sum.assign(orders, std::vector<Int>(cfg.n_max + 1, Int(0)));
    sums.sum_sq.assign(orders, std::vector<Int>(cfg.n_max + 1, Int(0)));
    Xoshiro256StarStar rng(cfg.seed, stream);
    std::vector<Int> hist;
    hist.reserve(cfg.n_max + 1);
    Int power;
    for (long long s = 0; s < count; ++s) {
        hist.clear();
        hist.emplace_back(1);
        for (int k = 0; k < cfg.n_max; ++k) {
            const std::uint64_t u = rng.uniform_below(static_cast<std::uint64_t>(k) + 1);
            hist.push_back(hist.back() + hist[u]);
        }
        for (std::size_t mi = 0; mi < orders; ++mi) {
            const unsigned long m = cfg.moment_orders[mi];
            for (int n = 0; n <= cfg.n_max; ++n) {
                mpz_pow_ui(power.get_mpz_t(), hist[n].get_mpz_t(), m);
                sums.sum[mi][n] += power;
                mpz_pow_ui(power.get_mpz_t(), hist[n].get_mpz_t(), 2 * m);
                sums.sum_sq[mi][n] += power;
            }
        }
        if (cfg.collect_final_logs) {
            mpf_class f(0, 64);
            mpf_set_z(f.get_mpf_t(), hist.back().get_mpz_t());
            sums.logs.push_back(log_value(f));
        }
    }
    return sums;
}

}  // namespace detail

/// Plain sample-mean estimator of E[X_n^m] for every requested (m, n),
/// carried in exact integers until the final division.
inline SimResult simulate(const SimConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("simulate: samples must be >= 1");
    if (cfg.n_max < 0) throw std::invalid_argument("simulate: n_max must be >= 0");
    if (cfg.streams < 1) throw std::invalid_argument("simulate: streams must be >= 1");
    if (cfg.moment_orders.empty()) throw std::invalid_argument("simulate: no moment orders");

    const int streams = static_cast<int>(std::min<long long>(cfg.streams, cfg.samples));
    std::vector<long long> counts(streams, cfg.samples / streams);
    for (int s = 0; s < cfg.samples % streams; ++s) ++counts[s];

    std::vector<detail::StreamSums> parts(streams);
    if (cfg.threads > 1) {
        std::vector<std::future<detail::StreamSums>> futures;
        futures.reserve(streams);
        for (int s = 0; s < streams; ++s) {
            futures.push_back(std::async(std::launch::async, detail::run_stream, std::cref(cfg),
                                         static_cast<std::uint64_t>(s), counts[s]));
        }
        for (int s = 0; s < streams; ++s) parts[s] = futures[s].get();
    } else {
        for (int s = 0; s < streams; ++s) {
            parts[s] = detail::run_stream(cfg, static_cast<std::uint64_t>(s), counts[s]);
        }
    }

    SimResult result;
    result.config = cfg;
    const std::size_t orders = cfg.moment_orders.size();
    for (std::size_t mi = 0; mi < orders; ++mi) {
        for (int n = 0; n <= cfg.n_max; ++n) {
            Int sum(0), sum_sq(0);
            for (const auto& part : parts) {
                sum += part.sum[mi][n];
                sum_sq += part.sum_sq[mi][n];
            }
            const Int n_samples(static_cast<long>(cfg.samples));
            Rat mean(sum, n_samples);
            mean.canonicalize();
            SimRow row{cfg.moment_orders[mi], n, mean, 0.0, 0.0};
            if (cfg.samples > 1) {
                // var = (sum_sq - sum^2/N) / (N - 1)
                Rat mean_sq(sum * sum, n_samples);
                mean_sq.canonicalize();
                Rat var = (Rat(sum_sq) - mean_sq) / Rat(n_samples - 1);
                const double v = std::max(0.0, var.get_d());
                row.stddev = std::sqrt(v);
                row.std_error = row.stddev / std::sqrt(static_cast<double>(cfg.samples));
            }
            result.rows.push_back(std::move(row));
        }
    }
    if (cfg.collect_final_logs) {
        for (const auto& part : parts) {
            result.final_logs.insert(result.final_logs.end(), part.logs.begin(), part.logs.end());
        }
    }
    return result;
}

/// Minimal star-chain (Brauer chain) length for a target, with the number
/// of distinct chains per length.
struct ChainStats {
    std::uint64_t target;
    int min_length;
    std::map<int, long long> count_by_length;
};

inline constexpr std::uint64_t kDefaultChainBudget = std::uint64_t{1} << 16;

namespace detail {

// Chains end at the target because values along a star chain strictly
// increase; prune any branch whose doubling horizon cannot reach it.
inline void chain_dfs(std::vector<std::uint64_t>& chain, int depth, int limit, std::uint64_t target,
                      std::map<int, long long>& counts) {
    const std::uint64_t last = chain.back();
    if (last == target) {
        ++counts[depth];
        return;
    }
    if (depth == limit) return;
    const int remaining = limit - depth;
    if (remaining < 64 && (last << remaining) < target) return;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const std::uint64_t value = last + chain[i];
        if (value > target) continue;
        if (remaining - 1 < 64 && (value << (remaining - 1)) < target) continue;
        chain.push_back(value);
        chain_dfs(chain, depth + 1, limit, target, counts);
        chain.pop_back();
    }
}

}  // namespace detail

/// Iterative-deepening search: grow the depth limit from the doubling lower
/// bound until the target is hit, then rerun once at min + extra_lengths
/// for the per-length counts.
inline ChainStats min_star_chain_length(std::uint64_t target, int extra_lengths = 0,
                                        std::uint64_t budget = kDefaultChainBudget) {
    if (target < 1) throw std::invalid_argument("min_star_chain_length: target must be >= 1");
    if (target > budget) throw BudgetError("min_star_chain_length: target exceeds the search budget");
    if (target == 1) return {1, 0, {{0, 1}}};

    int lower = 0;
    for (std::uint64_t v = 1; v < target; v <<= 1) ++lower;

    std::vector<std::uint64_t> chain{1};
    int min_length = lower;
    for (;; ++min_length) {
        std::map<int, long long> counts;
        detail::chain_dfs(chain, 0, min_length, target, counts);
        if (counts.count(min_length) && counts[min_length] > 0) {
            if (extra_lengths == 0) return {target, min_length, std::move(counts)};
            break;
        }
    }
    std::map<int, long long> counts;
    detail::chain_dfs(chain, 0, min_length + extra_lengths, target, counts);
    return {target, min_length, std::move(counts)};
}

}  // namespace ulamkac
