#pragma once

#include <cstdint>

#include "cmclab/montecarlo.hpp"

namespace cmclab {

/// The rate exponent gamma = (q-p)/(2q-2-p) for p in (0,2), q in (2,3];
/// always in (0,1), and gamma*(2q-2-p) = q-p exactly.
struct RateExponents {
    double p;
    double q;
    double gamma;
};

RateExponents gamma_exponent(double p, double q);

/// Threshold H1(eps) = M eps^{-2 gamma}, eps in (0,1), M >= 1.
double h1(double eps, double M, const RateExponents& exps);

/// Threshold H2(eps) = M eps^{-2} (log(1/eps))^{2 delta/(2-q)}; requires
/// eps in (0, 1/e) so the log factor is non-degenerate. The exponent
/// 2 delta/(2-q) is negative since q > 2.
double h2(double eps, double M, double delta, double q);

/// Non-uniform normal-approximation bound
///   |P(S_n > sqrt(n) x) - P(N > x)| <= C |E|X|^q| / (n^{q/2-1} (1 + x^q)).
/// The absolute constant is not pinned by theory here; c_abs is the caller's
/// choice (default 1 everywhere in this project) and all assertions about
/// this bound concern scaling, never absolute levels.
double bikjalis_bound(std::int64_t n, double x, double q, double Lq, double c_abs);

/// Closure of a scaled remainder tail sum. raw_bound/raw_lower bracket the
/// integral closure of the tail sum (upper uses sum <= g(m) + integral,
/// lower the bare integral); scaled_bound applies the rate prefactor, which
/// cancels every eps power so the value is eps-independent up to the integer
/// boundary; predicted_cap is the M-asymptote the scaled bound must stay
/// under.
struct BoundReport {
    double eps = 0.0;
    double M = 1.0;
    double raw_bound = 0.0;
    double raw_lower = 0.0;
    double scaled_bound = 0.0;
    double predicted_cap = 0.0;
};

/// Tail sum C Lq eps^{p-q} sum_{n >= H1} n^{1-q} / (q-p), scaled by
/// eps^{gamma(2-p)}; cap C Lq M^{2-q} / ((q-p)(q-2)).
BoundReport remainder_tail_bound_lambda1(double eps, const RateExponents& exps, double M,
                                         double Lq, double c_abs);

/// Tail sum (2 C Lq/(q-2)) eps^{2-q} sum_{n >= H2} (log n)^{delta-q/2} n^{-q/2},
/// scaled by (log 1/eps)^{-delta}; cap (2 C Lq/(q-2)) M^{1-q/2} / (q/2-1).
BoundReport remainder_tail_bound_lambda2(double eps, double delta, double q, double M,
                                         double Lq, double c_abs);

/// Truncated direct estimate of
///   sum_{n <= n_max} n^{-p} int_{eps n}^inf p x^{p-1}
///       |P(|S_n| >= x) - P(|N| >= x/sqrt(n))| dx.
/// Lattice laws are enumerated (exact; std_error = 0, replications = 0);
/// other laws integrate the empirical tail curve, with a batch-means
/// standard error over 8 replication blocks. n_max <= 200.
MCEstimate remainder_direct_mc(const DistributionSpec& dist, double p, double eps,
                               std::int64_t n_max, const MCConfig& cfg);

}  // namespace cmclab
