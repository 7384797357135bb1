#pragma once

#include <cstdint>

namespace cmclab {

/// Extrapolated limit of a slowly converging sequence, with the empirical
/// error bound attached (observed inter-ladder disagreement times a safety
/// factor of 4).
struct SequenceLimitEstimate {
    enum class Method { direct, rate_extrapolated };

    double value = 0.0;
    double error_bound = 0.0;
    std::int64_t n_used = 0;
    Method method = Method::rate_extrapolated;
};

/// B_{n,theta} = sum_{j=1}^n j^theta - n^{theta+1}/(theta+1), -1 < theta < 0.
double b_seq(std::int64_t n, double theta);

/// C_{n,delta} = sum_{j=2}^n (log j)^{delta-1}/j - (log n)^delta / delta,
/// 0 < delta <= 1.
double c_seq(std::int64_t n, double delta);

struct LimitOptions {
    std::int64_t n_start = 64;           // first ladder rung
    std::int64_t n_cap = 100'000'000;    // per-request term budget
    bool allow_extrapolation = true;     // false: direct summation only
};

/// Limit of B_{n,theta} as n -> infinity. The sequence converges at rate
/// n^theta; a two-point fit against that rate over a doubling n-ladder gives
/// the limit far faster than direct summation. Throws budget_error (carrying
/// the best estimate) if tol is unreachable within the term cap.
SequenceLimitEstimate b_limit(double theta, double tol, const LimitOptions& opt = {});

/// Limit of C_{n,delta}; convergence rate (log n)^{delta-1}/n.
SequenceLimitEstimate c_limit(double delta, double tol, const LimitOptions& opt = {});

namespace detail {
void check_theta(double theta);
void check_delta(double delta);
}  // namespace detail

}  // namespace cmclab
