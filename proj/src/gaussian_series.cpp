#include "cmclab/gaussian_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cmclab/errors.hpp"
#include "cmclab/limit_constants.hpp"
#include "cmclab/numerics.hpp"
#include "cmclab/special_functions.hpp"

namespace cmclab {

namespace {

void check_lambda1_params(const Lambda1Params& prm) {
    if (!std::isfinite(prm.eps) || !(prm.eps > 0.0)) {
        throw std::domain_error("eps must be positive and finite");
    }
    if (!(prm.p > 0.0 && prm.p <= 1.95)) {
        throw std::domain_error("p must lie in (0, 1.95]; the leading constant 2/(2-p) "
                                "blows up towards p = 2 and p = 0 degenerates the weights");
    }
    if (!(prm.sigma > 0.0) || !std::isfinite(prm.sigma)) {
        throw std::domain_error("sigma must be positive and finite");
    }
}

void check_lambda2_params(const Lambda2Params& prm) {
    if (!std::isfinite(prm.eps) || !(prm.eps > 0.0)) {
        throw std::domain_error("eps must be positive and finite");
    }
    detail::check_delta(prm.delta);
    if (!(prm.sigma > 0.0) || !std::isfinite(prm.sigma)) {
        throw std::domain_error("sigma must be positive and finite");
    }
}

void check_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::domain_error("tol must be positive");
}

[[noreturn]] void refuse_small_eps(const char* family, double eps, double eps_min) {
    std::ostringstream cert;
    cert << family << ": eps = " << eps << " is below the desk-scale floor " << eps_min
         << "; the certified term count grows like 1/eps^2 (~"
         << static_cast<long long>(80.0 / (eps * eps)) << " terms here). "
         << "Refusing rather than silently degrading.";
    throw budget_error(cert.str());
}

// Upper bound on sigma^p sum_{n > N} n^{-p/2} m_p(eps sqrt(n)/sigma), from
// m_p(a) <= 2 phi(a) a^{p-1} (1 + max(0, p-1)/a^2) (valid for all a > 0,
// 0 < p < 2) and a geometric sum over exp(-beta n).
double lambda1_tail_bound_after(double eps, double p, double sigma, std::int64_t n_last) {
    const double beta = eps * eps / (2.0 * sigma * sigma);
    const double n1 = static_cast<double>(n_last + 1);
    const double a1_sq = eps * eps * n1 / (sigma * sigma);
    const double poly = 1.0 + std::max(0.0, p - 1.0) / a1_sq;
    const double geo = std::exp(-beta * n1) / (-std::expm1(-beta));
    return std::pow(sigma, p) * std::pow(eps / sigma, p - 1.0) * 2.0 * kInvSqrt2Pi * poly *
           geo / std::sqrt(n1);
}

// Upper bound on sum_{n > N} Phi(eps sqrt(n)/sigma) via Phi(a) <= exp(-a^2/2).
double tail_prob_sum_bound_after(double eps, double sigma, std::int64_t n_last) {
    const double beta = eps * eps / (2.0 * sigma * sigma);
    return std::exp(-beta * static_cast<double>(n_last + 1)) / (-std::expm1(-beta));
}

[[noreturn]] void term_cap_exceeded(const char* what, double best, double bound,
                                    std::int64_t cap) {
    std::ostringstream cert;
    cert << what << ": term cap " << cap << " exceeded before the tail bound met tol; "
         << "best value " << best << " with tail bound " << bound << ".";
    throw budget_error(cert.str(), best, bound);
}

// ---- integral-closure engine for the log-weighted family ----------------
//
// Evaluates sum_{n>=2} (log n)^w n^{-1} K(eps sqrt(log n)/sigma) where K is
// one of the normal-kernel functions below. The head n <= N0 is summed
// exactly; the tail is int_{N0}^inf of the same expression, evaluated in the
// substitution s = eps sqrt(log x)/sigma as
//     2 (sigma/eps)^{2w+2} int_{s0}^inf s^{2w+1} K(s) ds,
// plus the first Euler-Maclaurin correction -f(N0)/2 - f'(N0)/12.

struct NormalKernel {
    double (*value)(double);
    double (*slope)(double);
};

double m2_value(double s) { return truncated_abs_moment(2.0, s); }
double m2_slope(double s) { return -2.0 * s * s * normal_pdf(s); }
double tail_value(double s) { return normal_tail(s); }
double tail_slope(double s) { return -2.0 * normal_pdf(s); }
double i2_value(double s) { return tail_moment_integral(2.0, s); }
double i2_slope(double s) { return -2.0 * s * normal_tail(s); }

double log_series_f(double x, double w, double eps, double sigma, const NormalKernel& k) {
    const double lx = std::log(x);
    return std::pow(lx, w) / x * k.value(eps * std::sqrt(lx) / sigma);
}

double log_series_fprime(double x, double w, double eps, double sigma, const NormalKernel& k) {
    const double lx = std::log(x);
    const double a = eps * std::sqrt(lx) / sigma;
    return (std::pow(lx, w - 1.0) * (w - lx) * k.value(a) +
            (eps / (2.0 * sigma)) * std::pow(lx, w - 0.5) * k.slope(a)) /
           (x * x);
}

// Tail integral int_{n_from}^inf (log x)^w x^{-1} K(...) dx via the s
// substitution; quadrature absolute tolerance quad_tol applies to the
// returned (outer) value.
double log_series_tail_integral(double w, const NormalKernel& k, double eps, double sigma,
                                double n_from, double quad_tol) {
    const double s0 = eps * std::sqrt(std::log(n_from)) / sigma;
    const double outer = 2.0 * std::pow(sigma / eps, 2.0 * w + 2.0);
    const double smax = std::max(s0 + 1.0, 12.0);
    const double inner = integrate(
        [&](double s) { return std::pow(s, 2.0 * w + 1.0) * k.value(s); }, s0, smax,
        quad_tol / outer);
    return outer * inner;
}

SeriesValue log_weighted_series(double w, const NormalKernel& k, double eps, double sigma,
                                double tol, const GaussianSeriesOptions& opt, const char* what) {
    CompensatedSum head;
    std::int64_t n0 = std::max<std::int64_t>(opt.head_terms, 16);
    std::int64_t summed_through = 1;
    auto extend_head = [&](std::int64_t upto) {
        for (std::int64_t n = summed_through + 1; n <= upto; ++n) {
            head.add(log_series_f(static_cast<double>(n), w, eps, sigma, k));
        }
        summed_through = upto;
    };

    const std::int64_t n0_cap = std::min<std::int64_t>(opt.term_cap, 4'000'000);
    for (;; n0 *= 2) {
        extend_head(n0);
        const double x0 = static_cast<double>(n0);
        const double correction = -log_series_fprime(x0, w, eps, sigma, k) / 12.0;
        if (2.0 * std::abs(correction) <= 0.5 * tol || n0 * 2 > n0_cap) {
            const double quad_tol = 0.25 * tol;
            const double integral = log_series_tail_integral(w, k, eps, sigma, x0, quad_tol);
            const double f0 = log_series_f(x0, w, eps, sigma, k);
            // integrand beyond smax is below (2s^4 + 2s^2) phi(s); the
            // remaining mass is under 4 phi(smax)(smax^3 + 4 smax)
            const double smax = std::max(eps * std::sqrt(std::log(x0)) / sigma + 1.0, 12.0);
            const double cut_rem =
                4.0 * (smax * smax * smax + 4.0 * smax) * normal_pdf(smax);
            const double value = head.value() + integral - 0.5 * f0 + correction;
            const double bound = 2.0 * std::abs(correction) + quad_tol + cut_rem;
            if (bound > tol) {
                term_cap_exceeded(what, value, bound, n0_cap);
            }
            return {value, n0, bound, Closure::integral_closure};
        }
    }
}

}  // namespace

SeriesValue lambda1_gaussian(const Lambda1Params& prm, double tol,
                             const GaussianSeriesOptions& opt) {
    check_lambda1_params(prm);
    check_tol(tol);
    if (prm.eps < opt.eps_min_lambda1) refuse_small_eps("lambda1_gaussian", prm.eps, opt.eps_min_lambda1);

    const double scale = std::pow(prm.sigma, prm.p);
    CompensatedSum sum;
    for (std::int64_t n = 1;; ++n) {
        const double nd = static_cast<double>(n);
        const double a = prm.eps * std::sqrt(nd) / prm.sigma;
        sum.add(scale * std::pow(nd, -0.5 * prm.p) * truncated_abs_moment(prm.p, a));
        if (a >= 1.0) {
            const double tb = lambda1_tail_bound_after(prm.eps, prm.p, prm.sigma, n);
            if (tb <= tol) return {sum.value(), n, tb, Closure::geometric_bound};
        }
        if (n >= opt.term_cap) {
            term_cap_exceeded("lambda1_gaussian", sum.value(),
                              lambda1_tail_bound_after(prm.eps, prm.p, prm.sigma, n),
                              opt.term_cap);
        }
    }
}

SeriesParts lambda1_parts_gaussian(const Lambda1Params& prm, double tol,
                                   const GaussianSeriesOptions& opt) {
    check_lambda1_params(prm);
    check_tol(tol);
    if (prm.eps < opt.eps_min_lambda1) {
        refuse_small_eps("lambda1_parts_gaussian", prm.eps, opt.eps_min_lambda1);
    }

    const double half_tol = 0.5 * tol;
    const double eps_p = std::pow(prm.eps, prm.p);
    const double scale = std::pow(prm.sigma, prm.p);
    CompensatedSum head_sum;
    CompensatedSum int_sum;
    for (std::int64_t n = 1;; ++n) {
        const double nd = static_cast<double>(n);
        const double a = prm.eps * std::sqrt(nd) / prm.sigma;
        head_sum.add(eps_p * normal_tail(a));
        int_sum.add(scale * std::pow(nd, -0.5 * prm.p) * tail_moment_integral(prm.p, a));
        if (a >= 1.0) {
            const double head_tb =
                eps_p * tail_prob_sum_bound_after(prm.eps, prm.sigma, n);
            const double int_tb = lambda1_tail_bound_after(prm.eps, prm.p, prm.sigma, n);
            if (head_tb <= half_tol && int_tb <= half_tol) {
                return {{head_sum.value(), n, head_tb, Closure::geometric_bound},
                        {int_sum.value(), n, int_tb, Closure::geometric_bound}};
            }
        }
        if (n >= opt.term_cap) {
            term_cap_exceeded("lambda1_parts_gaussian", head_sum.value() + int_sum.value(),
                              tol, opt.term_cap);
        }
    }
}

SeriesValue lambda2_gaussian(const Lambda2Params& prm, double tol,
                             const GaussianSeriesOptions& opt) {
    check_lambda2_params(prm);
    check_tol(tol);
    if (prm.eps < opt.eps_min_lambda2) refuse_small_eps("lambda2_gaussian", prm.eps, opt.eps_min_lambda2);

    const double s2 = prm.sigma * prm.sigma;
    SeriesValue v = log_weighted_series(prm.delta - 1.0, {&m2_value, &m2_slope}, prm.eps,
                                        prm.sigma, tol / s2, opt, "lambda2_gaussian");
    v.value *= s2;
    v.tail_bound *= s2;
    return v;
}

SeriesParts lambda2_parts_gaussian(const Lambda2Params& prm, double tol,
                                   const GaussianSeriesOptions& opt) {
    check_lambda2_params(prm);
    check_tol(tol);
    if (prm.eps < opt.eps_min_lambda2) {
        refuse_small_eps("lambda2_parts_gaussian", prm.eps, opt.eps_min_lambda2);
    }

    const double s2 = prm.sigma * prm.sigma;
    const double eps2 = prm.eps * prm.eps;
    SeriesValue head = log_weighted_series(prm.delta, {&tail_value, &tail_slope}, prm.eps,
                                           prm.sigma, 0.5 * tol / eps2, opt,
                                           "lambda2_parts_gaussian(head)");
    head.value *= eps2;
    head.tail_bound *= eps2;
    SeriesValue integral = log_weighted_series(prm.delta - 1.0, {&i2_value, &i2_slope}, prm.eps,
                                               prm.sigma, 0.5 * tol / s2, opt,
                                               "lambda2_parts_gaussian(integral)");
    integral.value *= s2;
    integral.tail_bound *= s2;
    return {head, integral};
}

SeriesValue klesov_sum_gaussian(double eps, double tol, const GaussianSeriesOptions& opt) {
    if (!std::isfinite(eps) || !(eps > 0.0)) throw std::domain_error("eps must be positive");
    check_tol(tol);
    if (eps < opt.eps_min_lambda1) refuse_small_eps("klesov_sum_gaussian", eps, opt.eps_min_lambda1);

    CompensatedSum sum;
    for (std::int64_t n = 1;; ++n) {
        sum.add(normal_tail(eps * std::sqrt(static_cast<double>(n))));
        const double tb = tail_prob_sum_bound_after(eps, 1.0, n);
        if (tb <= tol) return {sum.value(), n, tb, Closure::geometric_bound};
        if (n >= opt.term_cap) term_cap_exceeded("klesov_sum_gaussian", sum.value(), tb, opt.term_cap);
    }
}

SeriesValue kong_sum_gaussian(double eps, double delta, double tol,
                              const GaussianSeriesOptions& opt) {
    if (!std::isfinite(eps) || !(eps > 0.0)) throw std::domain_error("eps must be positive");
    detail::check_delta(delta);
    check_tol(tol);
    if (eps < opt.eps_min_lambda2) refuse_small_eps("kong_sum_gaussian", eps, opt.eps_min_lambda2);
    return log_weighted_series(delta, {&tail_value, &tail_slope}, eps, 1.0, tol, opt,
                               "kong_sum_gaussian");
}

double lambda1_gaussian_tail_bound(const Lambda1Params& prm, std::int64_t n_from) {
    check_lambda1_params(prm);
    if (n_from < 1) throw std::domain_error("n_from must be >= 1");
    return lambda1_tail_bound_after(prm.eps, prm.p, prm.sigma, n_from - 1);
}

double lambda2_gaussian_tail_bound(const Lambda2Params& prm, std::int64_t n_from) {
    check_lambda2_params(prm);
    if (n_from < 3) throw std::domain_error("n_from must be >= 3");
    const double s2 = prm.sigma * prm.sigma;
    const double x0 = static_cast<double>(n_from);
    // sum_{n >= n_from} f(n) <= f(n_from) + int_{n_from}^inf f for decreasing f
    const NormalKernel k{&m2_value, &m2_slope};
    const double f0 = log_series_f(x0, prm.delta - 1.0, prm.eps, prm.sigma, k);
    const double integral =
        log_series_tail_integral(prm.delta - 1.0, k, prm.eps, prm.sigma, x0, 1e-12);
    return s2 * (f0 + integral);
}

}  // namespace cmclab
