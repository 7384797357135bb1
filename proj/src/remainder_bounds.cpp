#include "cmclab/remainder_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cmclab/errors.hpp"
#include "cmclab/numerics.hpp"
#include "cmclab/special_functions.hpp"

namespace cmclab {

namespace {

void check_pq(double p, double q) {
    if (!(p > 0.0 && p < 2.0)) throw std::domain_error("p must lie in (0, 2)");
    if (!(q > 2.0 && q <= 3.0)) throw std::domain_error("q must lie in (2, 3]");
}

void check_eps_m(double eps, double M, double eps_hi) {
    if (!(eps > 0.0 && eps < eps_hi)) throw std::domain_error("eps out of range");
    if (!(M >= 1.0) || !std::isfinite(M)) throw std::domain_error("M must be >= 1");
}

// int_m^inf (log x)^a x^{-b} dx for a <= 0, b > 1, via u = log x:
// int_{log m}^inf u^a exp((1-b) u) du.
double log_power_tail_integral(double m, double a, double b) {
    const double u0 = std::log(m);
    const double rate = b - 1.0;
    const double umax = u0 + 60.0 / rate;
    const double scale = std::pow(u0, a) * std::exp(-rate * u0) / rate;
    const double quad = integrate(
        [a, rate](double u) { return std::pow(u, a) * std::exp(-rate * u); }, u0, umax,
        1e-11 * scale);
    // u^a is decreasing (a <= 0): the cut remainder is below
    // umax^a exp(-rate umax)/rate, itself below 1e-26 * scale.
    return quad + std::pow(umax, a) * std::exp(-rate * umax) / rate;
}

}  // namespace

RateExponents gamma_exponent(double p, double q) {
    check_pq(p, q);
    return {p, q, (q - p) / (2.0 * q - 2.0 - p)};
}

double h1(double eps, double M, const RateExponents& exps) {
    check_eps_m(eps, M, 1.0);
    return M * std::pow(eps, -2.0 * exps.gamma);
}

double h2(double eps, double M, double delta, double q) {
    check_eps_m(eps, M, std::exp(-1.0));
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("delta must lie in (0, 1]");
    if (!(q > 2.0 && q <= 3.0)) throw std::domain_error("q must lie in (2, 3]");
    return M * std::pow(eps, -2.0) * std::pow(std::log(1.0 / eps), 2.0 * delta / (2.0 - q));
}

double bikjalis_bound(std::int64_t n, double x, double q, double Lq, double c_abs) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(x > 0.0)) throw std::domain_error("x must be positive");
    if (!(q > 2.0 && q <= 3.0)) throw std::domain_error("q must lie in (2, 3]");
    if (!(Lq > 0.0)) throw std::domain_error("Lq must be positive");
    if (!(c_abs > 0.0)) throw std::domain_error("c_abs must be positive");
    return c_abs * Lq / (std::pow(static_cast<double>(n), 0.5 * q - 1.0) * (1.0 + std::pow(x, q)));
}

BoundReport remainder_tail_bound_lambda1(double eps, const RateExponents& exps, double M,
                                         double Lq, double c_abs) {
    check_pq(exps.p, exps.q);
    check_eps_m(eps, M, 1.0);
    if (!(Lq > 0.0) || !(c_abs > 0.0)) throw std::domain_error("Lq and c_abs must be positive");

    const double p = exps.p, q = exps.q;
    const double m = std::max(std::ceil(h1(eps, M, exps)), 2.0);
    // m^{2-q}/(q-2) <= sum_{n>=m} n^{1-q} <= (m-1)^{2-q}/(q-2)
    const double sum_upper = std::pow(m - 1.0, 2.0 - q) / (q - 2.0);
    const double sum_lower = std::pow(m, 2.0 - q) / (q - 2.0);
    const double front = c_abs * Lq * std::pow(eps, p - q) / (q - p);

    BoundReport r;
    r.eps = eps;
    r.M = M;
    r.raw_bound = front * sum_upper;
    r.raw_lower = front * sum_lower;
    r.scaled_bound = std::pow(eps, exps.gamma * (2.0 - p)) * r.raw_bound;
    r.predicted_cap = c_abs * Lq * std::pow(M, 2.0 - q) / ((q - p) * (q - 2.0));
    return r;
}

BoundReport remainder_tail_bound_lambda2(double eps, double delta, double q, double M,
                                         double Lq, double c_abs) {
    if (!(Lq > 0.0) || !(c_abs > 0.0)) throw std::domain_error("Lq and c_abs must be positive");
    const double m = std::max(std::ceil(h2(eps, M, delta, q)), 3.0);
    const double a = delta - 0.5 * q;  // < 0
    const double integral = log_power_tail_integral(m, a, 0.5 * q);
    const double g_m = std::pow(std::log(m), a) * std::pow(m, -0.5 * q);
    const double front = 2.0 * c_abs * Lq * std::pow(eps, 2.0 - q) / (q - 2.0);

    BoundReport r;
    r.eps = eps;
    r.M = M;
    r.raw_bound = front * (g_m + integral);
    r.raw_lower = front * integral;
    r.scaled_bound = std::pow(std::log(1.0 / eps), -delta) * r.raw_bound;
    r.predicted_cap =
        2.0 * c_abs * Lq * std::pow(M, 1.0 - 0.5 * q) / ((q - 2.0) * (0.5 * q - 1.0));
    return r;
}

namespace {

// Step-function survival curve: level(x) = suffix[j] on (cuts[j-1], cuts[j]],
// 0 beyond the last cut; exactly integrable against p x^{p-1} Phi(x/sqrt n).
struct SurvivalCurve {
    std::vector<double> cuts;    // ascending
    std::vector<double> suffix;  // suffix[j] = P(|S| >= cuts[j])
};

SurvivalCurve curve_from_sorted_abs(const std::vector<double>& abs_sorted, double weight_each) {
    SurvivalCurve c;
    const std::size_t n = abs_sorted.size();
    c.cuts.reserve(n);
    std::vector<double> counts;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && abs_sorted[j] == abs_sorted[i]) ++j;
        c.cuts.push_back(abs_sorted[i]);
        counts.push_back(static_cast<double>(j - i));
        i = j;
    }
    c.suffix.assign(c.cuts.size(), 0.0);
    double acc = 0.0;
    for (std::size_t j = c.cuts.size(); j-- > 0;) {
        acc += counts[j] * weight_each;
        c.suffix[j] = acc;
    }
    return c;
}

SurvivalCurve curve_from_atoms(const std::vector<Atom>& atoms) {
    std::vector<std::pair<double, double>> folded;
    folded.reserve(atoms.size());
    for (const auto& a : atoms) folded.emplace_back(std::abs(a.value), a.probability);
    std::sort(folded.begin(), folded.end());
    SurvivalCurve c;
    for (std::size_t i = 0; i < folded.size();) {
        std::size_t j = i;
        double mass = 0.0;
        while (j < folded.size() && folded[j].first == folded[i].first) mass += folded[j++].second;
        c.cuts.push_back(folded[i].first);
        c.suffix.push_back(mass);  // temporarily the bin mass
        i = j;
    }
    double acc = 0.0;
    for (std::size_t j = c.cuts.size(); j-- > 0;) {
        acc += c.suffix[j];
        c.suffix[j] = acc;
    }
    return c;
}

// int_lo^hi p x^{p-1} |c - Phi(x/sqrt n)| dx with constant level c; hi may be
// +inf (then c must be 0). Uses i_p for the weighted normal-tail integral.
double segment_abs_integral(double lo, double hi, double level, double p, double sqrt_n) {
    const double ip_lo = tail_moment_integral(p, lo / sqrt_n);
    const double np2 = std::pow(sqrt_n, p);
    if (level <= 0.0) {
        const double ip_hi = std::isinf(hi) ? 0.0 : tail_moment_integral(p, hi / sqrt_n);
        return np2 * (ip_lo - ip_hi);
    }
    const double ip_hi = tail_moment_integral(p, hi / sqrt_n);
    const double phi_lo = normal_tail(lo / sqrt_n);
    const double phi_hi = normal_tail(hi / sqrt_n);
    const double mass = std::pow(hi, p) - std::pow(lo, p);
    const double weighted_tail = np2 * (ip_lo - ip_hi);
    if (level >= phi_lo) return level * mass - weighted_tail;
    if (level <= phi_hi) return weighted_tail - level * mass;
    // one crossing inside: Phi(t*) = level; each side has constant sign
    const double xstar =
        std::clamp(sqrt_n * normal_quantile(1.0 - 0.5 * level), lo, hi);
    const double ip_star = tail_moment_integral(p, xstar / sqrt_n);
    const double left =
        np2 * (ip_lo - ip_star) - level * (std::pow(xstar, p) - std::pow(lo, p));
    const double right =
        level * (std::pow(hi, p) - std::pow(xstar, p)) - np2 * (ip_star - ip_hi);
    return std::max(left, 0.0) + std::max(right, 0.0);
}

double curve_remainder_integral(const SurvivalCurve& c, double lo0, double p, double sqrt_n) {
    double total = 0.0;
    const std::size_t k = c.cuts.size();
    const std::size_t j0 = static_cast<std::size_t>(
        std::lower_bound(c.cuts.begin(), c.cuts.end(), lo0) - c.cuts.begin());
    double lo = lo0;
    for (std::size_t j = j0; j < k; ++j) {
        if (c.cuts[j] > lo) {
            total += segment_abs_integral(lo, c.cuts[j], c.suffix[j], p, sqrt_n);
            lo = c.cuts[j];
        }
    }
    total += segment_abs_integral(lo, std::numeric_limits<double>::infinity(), 0.0, p, sqrt_n);
    return total;
}

}  // namespace

MCEstimate remainder_direct_mc(const DistributionSpec& dist, double p, double eps,
                               std::int64_t n_max, const MCConfig& cfg) {
    if (!(p > 0.0 && p < 2.0)) throw std::domain_error("p must lie in (0, 2)");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::domain_error("eps must be positive");
    if (n_max < 1 || n_max > 200) throw std::domain_error("n_max must lie in [1, 200]");

    MCEstimate out;
    out.seed = cfg.seed;
    if (dist.is_lattice()) {
        CompensatedSum total;
        for (std::int64_t n = 1; n <= n_max; ++n) {
            const auto curve = curve_from_atoms(detail::lattice_pmf(dist, n));
            const double d = curve_remainder_integral(curve, eps * static_cast<double>(n), p,
                                                      std::sqrt(static_cast<double>(n)));
            total.add(std::pow(static_cast<double>(n), -p) * d);
        }
        out.mean = total.value();
        out.std_error = 0.0;
        out.replications = 0;
        return out;
    }

    detail::check_mc_config(cfg);
    std::int64_t draws = 0;
    for (std::int64_t n = 1; n <= n_max; ++n) draws += n;
    detail::check_budget(draws * cfg.replications, cfg, "remainder_direct_mc");

    constexpr int kBlocks = 8;
    const std::int64_t reps = cfg.replications;
    CompensatedSum pooled_total;
    std::vector<CompensatedSum> block_total(kBlocks);
    constexpr std::uint64_t kTagRemainder = 0x0e31;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        auto samples = detail::sample_abs_partial_sums(dist, n, reps, cfg.seed, kTagRemainder,
                                                       cfg.batch, cfg.threads);
        const double w = std::pow(static_cast<double>(n), -p);
        const double lo0 = eps * static_cast<double>(n);
        const double sqn = std::sqrt(static_cast<double>(n));
        for (int b = 0; b < kBlocks; ++b) {
            const std::size_t i0 = static_cast<std::size_t>(b * reps / kBlocks);
            const std::size_t i1 = static_cast<std::size_t>((b + 1) * reps / kBlocks);
            std::vector<double> blk(samples.begin() + static_cast<std::ptrdiff_t>(i0),
                                    samples.begin() + static_cast<std::ptrdiff_t>(i1));
            std::sort(blk.begin(), blk.end());
            const auto curve = curve_from_sorted_abs(blk, 1.0 / static_cast<double>(blk.size()));
            block_total[static_cast<std::size_t>(b)].add(
                w * curve_remainder_integral(curve, lo0, p, sqn));
        }
        std::sort(samples.begin(), samples.end());
        const auto curve = curve_from_sorted_abs(samples, 1.0 / static_cast<double>(reps));
        pooled_total.add(w * curve_remainder_integral(curve, lo0, p, sqn));
    }
    double bm = 0.0;
    for (auto& b : block_total) bm += b.value();
    bm /= kBlocks;
    double bv = 0.0;
    for (auto& b : block_total) bv += (b.value() - bm) * (b.value() - bm);
    bv /= (kBlocks - 1);
    out.mean = pooled_total.value();
    out.std_error = std::sqrt(bv / kBlocks);
    out.replications = reps;
    return out;
}

}  // namespace cmclab
