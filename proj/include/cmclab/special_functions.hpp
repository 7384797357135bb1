#pragma once

namespace cmclab {

inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kSqrtPi = 1.77245385090551602729816748334114518;
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438187;

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Two-sided tail P(|N| >= x) for x >= 0, evaluated through the
/// complementary error function (no 1 - CDF subtraction, so no cancellation
/// for large x). Relative accuracy ~1e-14 while the result is a normal
/// double; throws std::domain_error for negative or non-finite x.
double normal_tail(double x);

/// One-sided tail P(N > x) for any finite x.
double normal_upper_tail(double x);

/// Absolute moment E|N|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi), p >= 0.
double normal_abs_moment(double p);

/// Truncated absolute moment m_p(a) = E[|N|^p 1{|N| >= a}], p >= 0, a >= 0.
/// Computed as E|N|^p * Q((p+1)/2, a^2/2) with Q the regularized upper
/// incomplete gamma function; falls back to direct quadrature if the gamma
/// iteration fails to converge.
double truncated_abs_moment(double p, double a);

/// Integral i_p(a) = int_a^inf p t^{p-1} P(|N| >= t) dt for p > 0, a >= 0.
/// Equals m_p(a) - a^p P(|N| >= a) (integration by parts); clamped at 0.
double tail_moment_integral(double p, double a);

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x)/Gamma(s),
/// s > 0, x >= 0. Series for x < s + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double s, double x);

/// Quantile z with P(N <= z) = u for u in (0, 1). Rational initial guess
/// polished by Newton steps on the smaller tail; accurate to ~1e-15.
double normal_quantile(double u);

namespace detail {
/// Quadrature evaluation of m_p(a); the convergence fallback for
/// truncated_abs_moment, exposed for direct testing.
double truncated_abs_moment_quad(double p, double a);
}  // namespace detail

}  // namespace cmclab
