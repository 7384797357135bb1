#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cmclab/distributions.hpp"

namespace cmclab {

struct MCConfig {
    std::int64_t replications = 100'000;  // >= 100
    std::uint64_t seed = 0;
    std::int64_t n_max = 200;             // series truncation for lambda estimates
    std::int64_t batch = 8192;            // replications per stream shard
    std::int64_t budget = 2'000'000'000;  // variate draws allowed per request
    int threads = 1;
};

/// Monte Carlo mean with its standard error (sample sd / sqrt(replications))
/// and seed provenance. Identical MCConfig + inputs reproduce bit-identical
/// estimates for any thread count: replications shard across counter-based
/// streams and shards reduce in fixed order.
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t replications = 0;
    std::uint64_t seed = 0;
};

/// Frequency estimate of P(|S_n| >= x).
MCEstimate estimate_tail_prob(const DistributionSpec& dist, std::int64_t n, double x,
                              const MCConfig& cfg);

/// Sample mean of |S_n|^p 1{|S_n| >= threshold}, p in (0, 2].
MCEstimate estimate_truncated_pth_moment(const DistributionSpec& dist, std::int64_t n,
                                         double threshold, double p, const MCConfig& cfg);

/// A lambda-series Monte Carlo estimate: the truncated-series estimate plus
/// a deterministic bound on the truncated mass, computed from the Gaussian
/// proxy at the same eps (exact for the normal member, heuristic otherwise).
struct SeriesMCEstimate {
    MCEstimate estimate;
    double truncation_bias_bound = 0.0;
    std::int64_t n_max = 0;
};

/// sum_{n <= n_max} n^{-p} E^[|S_n|^p 1{|S_n| >= eps n}] with one fresh
/// replication pool per n and stderr propagated across the independent
/// terms. Requires eps >= 0.05 and p in (0, 2).
SeriesMCEstimate lambda1_mc(const DistributionSpec& dist, double p, double eps,
                            const MCConfig& cfg);

/// sum_{2 <= n <= n_max} (log n)^{delta-1} n^{-2} E^[S_n^2 1{...}] analogue.
SeriesMCEstimate lambda2_mc(const DistributionSpec& dist, double delta, double eps,
                            const MCConfig& cfg);

/// sup over the t grid of |P^(|S_n| >= sqrt(n) t) - P(|N| >= t)|. The grid
/// must ascend, span [0, 5] and step at most 0.01. Lattice laws with n <= 30
/// are enumerated exactly (zero sampling error); everything else uses the
/// empirical tail curve.
double delta_n_estimate(const DistributionSpec& dist, std::int64_t n, const MCConfig& cfg,
                        std::span<const double> t_grid);

/// 0, 0.01, ..., 5.00.
std::vector<double> default_t_grid();

namespace detail {

/// |S_n| samples in deterministic shard order (shared by delta_n_estimate
/// and the direct remainder estimator).
std::vector<double> sample_abs_partial_sums(const DistributionSpec& dist, std::int64_t n,
                                            std::int64_t reps, std::uint64_t seed,
                                            std::uint64_t op_tag, std::int64_t batch,
                                            int threads);

void check_mc_config(const MCConfig& cfg);
void check_budget(std::int64_t draws_needed, const MCConfig& cfg, const char* what);

}  // namespace detail

}  // namespace cmclab
