#pragma once

#include <cstdint>

#include "cmclab/series_value.hpp"

namespace cmclab {

/// Parameters of lambda_1(eps, p) = sum_n n^{-p} E[|S_n|^p 1{|S_n| >= eps n}]
/// for S_n a Gaussian random walk with per-step scale sigma. p is kept away
/// from 2 (the leading constant 2/(2-p) blows up there); p = 0 is served by
/// klesov_sum_gaussian instead, since the weight n^{-p} degenerates.
struct Lambda1Params {
    double eps;
    double p;
    double sigma = 1.0;
};

/// Parameters of lambda_2(eps, delta) =
/// sum_{n>=2} (log n)^{delta-1} n^{-2} E[S_n^2 1{|S_n| >= eps sqrt(n log n)}].
struct Lambda2Params {
    double eps;
    double delta;
    double sigma = 1.0;
};

struct GaussianSeriesOptions {
    double eps_min_lambda1 = 0.02;   // refuse below: term count grows ~ 1/eps^2
    double eps_min_lambda2 = 0.05;
    std::int64_t term_cap = 50'000'000;
    std::int64_t head_terms = 10'000;  // exact-sum head length before integral closure
};

/// Exact evaluation via the reduction to the scalar normal kernel:
/// lambda_1 = sigma^p sum_n n^{-p/2} m_p(eps sqrt(n)/sigma). Terms decay like
/// exp(-eps^2 n / (2 sigma^2)); truncation is certified by a geometric bound.
SeriesValue lambda1_gaussian(const Lambda1Params& params, double tol,
                             const GaussianSeriesOptions& opt = {});

struct SeriesParts {
    SeriesValue head;
    SeriesValue integral_part;
};

/// Decomposition lambda_1 = eps^p sum_n P(|S_n| >= eps n)
///                        + sum_n n^{-p} int_{eps n}^inf p x^{p-1} P(|S_n| >= x) dx.
/// head.value + integral_part.value recomposes lambda1_gaussian within the
/// combined tail bounds.
SeriesParts lambda1_parts_gaussian(const Lambda1Params& params, double tol,
                                   const GaussianSeriesOptions& opt = {});

/// Exact evaluation of lambda_2 = sigma^2 sum_{n>=2} (log n)^{delta-1} n^{-1}
/// m_2(eps sqrt(log n)/sigma). Terms decay only like n^{-1-eps^2/(2 sigma^2)},
/// so direct truncation is hopeless; the tail beyond the head is replaced by
/// its integral (in the substitution s = eps sqrt(log x)/sigma) plus the
/// first Euler-Maclaurin derivative correction, whose magnitude times 2 is
/// the reported tail bound.
SeriesValue lambda2_gaussian(const Lambda2Params& params, double tol,
                             const GaussianSeriesOptions& opt = {});

/// Decomposition mirroring lambda1_parts_gaussian for the lambda_2 series.
SeriesParts lambda2_parts_gaussian(const Lambda2Params& params, double tol,
                                   const GaussianSeriesOptions& opt = {});

/// sum_{n>=1} P(|S_n| >= eps n) for the standard Gaussian walk
/// (= sum Phi(eps sqrt(n))); approaches 1/eps^2 - 1/2 as eps decreases.
SeriesValue klesov_sum_gaussian(double eps, double tol, const GaussianSeriesOptions& opt = {});

/// sum_{n>=2} (log n)^delta n^{-1} P(|S_n| >= eps sqrt(n log n)) for the
/// standard Gaussian walk; integral closure as in lambda2_gaussian.
SeriesValue kong_sum_gaussian(double eps, double delta, double tol,
                              const GaussianSeriesOptions& opt = {});

/// Upper bound on the lambda_1 series tail beyond n_from (inclusive).
/// Used as the deterministic truncation-bias bound for Monte Carlo runs.
double lambda1_gaussian_tail_bound(const Lambda1Params& params, std::int64_t n_from);

/// Upper bound on the lambda_2 series tail beyond n_from (inclusive).
double lambda2_gaussian_tail_bound(const Lambda2Params& params, std::int64_t n_from);

}  // namespace cmclab
