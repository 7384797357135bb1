#include "cmclab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cmclab/errors.hpp"
#include "cmclab/gaussian_series.hpp"
#include "cmclab/numerics.hpp"
#include "cmclab/special_functions.hpp"

namespace cmclab {

namespace detail {

void check_mc_config(const MCConfig& cfg) {
    if (cfg.replications < 100) throw std::domain_error("replications must be >= 100");
    if (cfg.batch < 1) throw std::domain_error("batch must be >= 1");
    if (cfg.n_max < 1) throw std::domain_error("n_max must be >= 1");
}

void check_budget(std::int64_t draws_needed, const MCConfig& cfg, const char* what) {
    if (draws_needed > cfg.budget) {
        std::ostringstream cert;
        cert << what << ": request needs " << draws_needed << " variate draws, budget is "
             << cfg.budget << ". Lower replications/n_max or raise the budget.";
        throw budget_error(cert.str());
    }
}

namespace {

struct ShardStats {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
};

ShardStats combine(const ShardStats& a, const ShardStats& b) {
    if (a.count == 0) return b;
    if (b.count == 0) return a;
    ShardStats r;
    r.count = a.count + b.count;
    const double d = b.mean - a.mean;
    r.mean = a.mean + d * static_cast<double>(b.count) / static_cast<double>(r.count);
    r.m2 = a.m2 + b.m2 +
           d * d * static_cast<double>(a.count) * static_cast<double>(b.count) /
               static_cast<double>(r.count);
    return r;
}

std::uint64_t stream_base(std::uint64_t op_tag, std::int64_t n) {
    return mix64(mix64(op_tag + kGolden) + static_cast<std::uint64_t>(n));
}

// Runs `reps` replications split into batch-sized shards, one counter stream
// per shard; per-shard Welford stats reduce in ascending shard order, so the
// result does not depend on the thread count.
template <class Fn>
ShardStats run_shards(std::int64_t reps, std::int64_t batch, std::uint64_t seed,
                      std::uint64_t base, int threads, Fn&& replicate) {
    const std::int64_t n_shards = (reps + batch - 1) / batch;
    std::vector<ShardStats> slots(static_cast<std::size_t>(n_shards));
    auto work = [&](std::int64_t first, std::int64_t stride) {
        for (std::int64_t s = first; s < n_shards; s += stride) {
            const std::int64_t r0 = s * batch;
            const std::int64_t r1 = std::min(reps, r0 + batch);
            RngStream rng(seed, base + static_cast<std::uint64_t>(s));
            ShardStats st;
            for (std::int64_t r = r0; r < r1; ++r) {
                const double v = replicate(rng);
                ++st.count;
                const double d = v - st.mean;
                st.mean += d / static_cast<double>(st.count);
                st.m2 += d * (v - st.mean);
            }
            slots[static_cast<std::size_t>(s)] = st;
        }
    };
    const int t = std::clamp<int>(threads, 1, static_cast<int>(std::min<std::int64_t>(n_shards, 64)));
    if (t <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i) pool.emplace_back(work, i, t);
        for (auto& th : pool) th.join();
    }
    ShardStats total;
    for (const auto& s : slots) total = combine(total, s);
    return total;
}

MCEstimate to_estimate(const ShardStats& st, std::uint64_t seed) {
    MCEstimate e;
    e.mean = st.mean;
    e.replications = st.count;
    e.seed = seed;
    e.std_error = st.count > 1 ? std::sqrt(st.m2 / static_cast<double>(st.count - 1) /
                                           static_cast<double>(st.count))
                               : 0.0;
    return e;
}

constexpr std::uint64_t kTagTailProb = 0x7a11;
constexpr std::uint64_t kTagTruncMoment = 0x7913;
constexpr std::uint64_t kTagLambda1 = 0x1a1;
constexpr std::uint64_t kTagLambda2 = 0x1a2;
constexpr std::uint64_t kTagDeltaN = 0xde17a;

}  // namespace

std::vector<double> sample_abs_partial_sums(const DistributionSpec& dist, std::int64_t n,
                                            std::int64_t reps, std::uint64_t seed,
                                            std::uint64_t op_tag, std::int64_t batch,
                                            int threads) {
    const std::uint64_t base = stream_base(op_tag, n);
    const std::int64_t n_shards = (reps + batch - 1) / batch;
    std::vector<double> out(static_cast<std::size_t>(reps));
    auto work = [&](std::int64_t first, std::int64_t stride) {
        for (std::int64_t s = first; s < n_shards; s += stride) {
            const std::int64_t r0 = s * batch;
            const std::int64_t r1 = std::min(reps, r0 + batch);
            RngStream rng(seed, base + static_cast<std::uint64_t>(s));
            for (std::int64_t r = r0; r < r1; ++r) {
                out[static_cast<std::size_t>(r)] = std::abs(sample_partial_sum(dist, n, rng));
            }
        }
    };
    const int t = std::clamp<int>(threads, 1, static_cast<int>(std::min<std::int64_t>(n_shards, 64)));
    if (t <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < t; ++i) pool.emplace_back(work, i, t);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace detail

MCEstimate estimate_tail_prob(const DistributionSpec& dist, std::int64_t n, double x,
                              const MCConfig& cfg) {
    detail::check_mc_config(cfg);
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("x must be >= 0");
    detail::check_budget(cfg.replications * n, cfg, "estimate_tail_prob");
    const auto st = detail::run_shards(
        cfg.replications, cfg.batch, cfg.seed, detail::stream_base(detail::kTagTailProb, n),
        cfg.threads, [&](RngStream& rng) {
            return std::abs(sample_partial_sum(dist, n, rng)) >= x ? 1.0 : 0.0;
        });
    return detail::to_estimate(st, cfg.seed);
}

MCEstimate estimate_truncated_pth_moment(const DistributionSpec& dist, std::int64_t n,
                                         double threshold, double p, const MCConfig& cfg) {
    detail::check_mc_config(cfg);
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
        throw std::domain_error("threshold must be >= 0");
    }
    if (!(p > 0.0 && p <= 2.0)) throw std::domain_error("p must lie in (0, 2]");
    detail::check_budget(cfg.replications * n, cfg, "estimate_truncated_pth_moment");
    const auto st = detail::run_shards(
        cfg.replications, cfg.batch, cfg.seed, detail::stream_base(detail::kTagTruncMoment, n),
        cfg.threads, [&](RngStream& rng) {
            const double s = std::abs(sample_partial_sum(dist, n, rng));
            return s >= threshold ? std::pow(s, p) : 0.0;
        });
    return detail::to_estimate(st, cfg.seed);
}

namespace {

// Independent pool per n; variance adds across terms with the squared
// deterministic weights.
template <class WeightFn, class ThresholdFn, class ValueFn>
SeriesMCEstimate lambda_series_mc(const DistributionSpec& dist, const MCConfig& cfg,
                                  std::int64_t n_first, std::uint64_t op_tag, const char* what,
                                  WeightFn weight, ThresholdFn threshold, ValueFn value,
                                  double bias_bound) {
    std::int64_t draws = 0;
    for (std::int64_t n = n_first; n <= cfg.n_max; ++n) draws += n;
    detail::check_budget(draws * cfg.replications, cfg, what);

    CompensatedSum mean_sum;
    CompensatedSum var_sum;
    for (std::int64_t n = n_first; n <= cfg.n_max; ++n) {
        const double thr = threshold(n);
        const auto st = detail::run_shards(
            cfg.replications, cfg.batch, cfg.seed, detail::stream_base(op_tag, n), cfg.threads,
            [&](RngStream& rng) {
                const double s = std::abs(sample_partial_sum(dist, n, rng));
                return s >= thr ? value(s) : 0.0;
            });
        const auto est = detail::to_estimate(st, cfg.seed);
        const double w = weight(n);
        mean_sum.add(w * est.mean);
        var_sum.add(w * w * est.std_error * est.std_error);
    }
    SeriesMCEstimate out;
    out.estimate.mean = mean_sum.value();
    out.estimate.std_error = std::sqrt(var_sum.value());
    out.estimate.replications = cfg.replications;
    out.estimate.seed = cfg.seed;
    out.truncation_bias_bound = bias_bound;
    out.n_max = cfg.n_max;
    return out;
}

}  // namespace

SeriesMCEstimate lambda1_mc(const DistributionSpec& dist, double p, double eps,
                            const MCConfig& cfg) {
    detail::check_mc_config(cfg);
    if (!(p > 0.0 && p < 2.0)) throw std::domain_error("p must lie in (0, 2)");
    if (!(eps >= 0.05)) {
        throw budget_error("lambda1_mc: eps < 0.05 needs a series longer than the sampling "
                           "budget supports; use the exact Gaussian evaluator instead.");
    }
    const double bias = lambda1_gaussian_tail_bound({eps, p, dist.sigma()}, cfg.n_max + 1);
    return lambda_series_mc(
        dist, cfg, 1, detail::kTagLambda1, "lambda1_mc",
        [p](std::int64_t n) { return std::pow(static_cast<double>(n), -p); },
        [eps](std::int64_t n) { return eps * static_cast<double>(n); },
        [p](double s) { return std::pow(s, p); }, bias);
}

SeriesMCEstimate lambda2_mc(const DistributionSpec& dist, double delta, double eps,
                            const MCConfig& cfg) {
    detail::check_mc_config(cfg);
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("delta must lie in (0, 1]");
    if (!(eps >= 0.05)) {
        throw budget_error("lambda2_mc: eps < 0.05 needs a series longer than the sampling "
                           "budget supports; use the exact Gaussian evaluator instead.");
    }
    if (cfg.n_max < 2) throw std::domain_error("n_max must be >= 2 for lambda2");
    const double bias = lambda2_gaussian_tail_bound({eps, delta, dist.sigma()}, cfg.n_max + 1);
    return lambda_series_mc(
        dist, cfg, 2, detail::kTagLambda2, "lambda2_mc",
        [delta](std::int64_t n) {
            const double nd = static_cast<double>(n);
            return std::pow(std::log(nd), delta - 1.0) / (nd * nd);
        },
        [eps](std::int64_t n) {
            const double nd = static_cast<double>(n);
            return eps * std::sqrt(nd * std::log(nd));
        },
        [](double s) { return s * s; }, bias);
}

std::vector<double> default_t_grid() {
    std::vector<double> g(501);
    for (int i = 0; i <= 500; ++i) g[static_cast<std::size_t>(i)] = 0.01 * i;
    return g;
}

double delta_n_estimate(const DistributionSpec& dist, std::int64_t n, const MCConfig& cfg,
                        std::span<const double> t_grid) {
    detail::check_mc_config(cfg);
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (t_grid.size() < 2 || t_grid.front() > 1e-12 || t_grid.back() < 5.0 - 1e-12) {
        throw std::domain_error("t_grid must span [0, 5]");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double step = t_grid[i] - t_grid[i - 1];
        if (!(step > 0.0) || step > 0.01 + 1e-12) {
            throw std::domain_error("t_grid must ascend with step <= 0.01");
        }
    }

    const double sqn = std::sqrt(static_cast<double>(n));
    double sup = 0.0;
    if (dist.is_lattice() && n <= 30) {
        const auto atoms = detail::lattice_pmf(dist, n);
        for (const double t : t_grid) {
            const double gap =
                std::abs(detail::atoms_two_sided_tail(atoms, sqn * t) - normal_tail(t));
            sup = std::max(sup, gap);
        }
        return sup;
    }

    detail::check_budget(cfg.replications * n, cfg, "delta_n_estimate");
    auto samples = detail::sample_abs_partial_sums(dist, n, cfg.replications, cfg.seed,
                                                   detail::kTagDeltaN, cfg.batch, cfg.threads);
    std::sort(samples.begin(), samples.end());
    const double r = static_cast<double>(samples.size());
    for (const double t : t_grid) {
        const auto it = std::lower_bound(samples.begin(), samples.end(), sqn * t);
        const double freq = static_cast<double>(samples.end() - it) / r;
        sup = std::max(sup, std::abs(freq - normal_tail(t)));
    }
    return sup;
}

}  // namespace cmclab
