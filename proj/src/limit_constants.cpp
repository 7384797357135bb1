#include "cmclab/limit_constants.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cmclab/errors.hpp"
#include "cmclab/numerics.hpp"

namespace cmclab {

namespace detail {

void check_theta(double theta) {
    if (!(theta > -1.0 && theta < 0.0)) {
        throw std::domain_error("theta must lie in (-1, 0), got " + std::to_string(theta));
    }
}

void check_delta(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::domain_error("delta must lie in (0, 1], got " + std::to_string(delta));
    }
}

}  // namespace detail

namespace {

double b_term(std::int64_t j, double theta) { return std::pow(static_cast<double>(j), theta); }

double c_term(std::int64_t j, double delta) {
    const double lj = std::log(static_cast<double>(j));
    return std::pow(lj, delta - 1.0) / static_cast<double>(j);
}

double b_correction(std::int64_t n, double theta) {
    return std::pow(static_cast<double>(n), theta + 1.0) / (theta + 1.0);
}

double c_correction(std::int64_t n, double delta) {
    return std::pow(std::log(static_cast<double>(n)), delta) / delta;
}

struct LadderSeq {
    std::int64_t first;                                   // first summation index
    double (*term)(std::int64_t, double);                 // summand
    double (*correction)(std::int64_t, double);           // subtracted integral term
    double (*rate)(std::int64_t, double);                 // convergence rate g(n)
};

double b_rate(std::int64_t n, double theta) { return std::pow(static_cast<double>(n), theta); }

double c_rate(std::int64_t n, double delta) {
    return std::pow(std::log(static_cast<double>(n)), delta - 1.0) / static_cast<double>(n);
}

// Shared ladder engine: partial sums at n, 2n, 4n, ...; at each rung either
// extrapolate against the known rate or bound the distance to the limit by
// the geometric tail of successive differences.
SequenceLimitEstimate ladder_limit(const LadderSeq& seq, double param, double tol,
                                   const LimitOptions& opt, const char* what) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::domain_error("tol must be positive");

    CompensatedSum sum;
    std::int64_t n = seq.first - 1;
    auto advance_to = [&](std::int64_t target) {
        for (std::int64_t j = n + 1; j <= target; ++j) sum.add(seq.term(j, param));
        n = target;
    };

    std::vector<double> rung_value;   // sequence value at each rung
    std::vector<double> rung_rate;    // g(n) at each rung
    std::vector<std::int64_t> rung_n;

    double best = std::numeric_limits<double>::quiet_NaN();
    double best_err = std::numeric_limits<double>::infinity();
    double prev_extrap = std::numeric_limits<double>::quiet_NaN();

    for (std::int64_t rung = std::max(seq.first, opt.n_start);; rung *= 2) {
        if (rung > opt.n_cap) break;
        advance_to(rung);
        rung_value.push_back(sum.value() - seq.correction(rung, param));
        rung_rate.push_back(seq.rate(rung, param));
        rung_n.push_back(rung);
        const std::size_t k = rung_value.size();

        if (opt.allow_extrapolation && k >= 2) {
            // Fit v(n) = L + K g(n) through the last two rungs.
            const double g0 = rung_rate[k - 2], g1 = rung_rate[k - 1];
            const double v0 = rung_value[k - 2], v1 = rung_value[k - 1];
            const double extrap = v1 - g1 * (v1 - v0) / (g1 - g0);
            if (k >= 3) {
                const double err = 4.0 * std::abs(extrap - prev_extrap);
                if (err < best_err) {
                    best = extrap;
                    best_err = err;
                }
                if (err <= tol) {
                    return {extrap, err, rung, SequenceLimitEstimate::Method::rate_extrapolated};
                }
            }
            prev_extrap = extrap;
        } else if (!opt.allow_extrapolation && k >= 2) {
            // Successive rungs differ by ~K g(n)(1 - g(2n)/g(n)); the distance
            // to the limit is the geometric tail of those differences.
            const double d = std::abs(rung_value[k - 1] - rung_value[k - 2]);
            const double r = rung_rate[k - 1] / rung_rate[k - 2];  // in (0, 1)
            const double err = 2.0 * d * r / (1.0 - r);
            if (err < best_err) {
                best = rung_value[k - 1];
                best_err = err;
            }
            if (err <= tol) {
                return {rung_value[k - 1], err, rung, SequenceLimitEstimate::Method::direct};
            }
        }
    }

    std::ostringstream cert;
    cert << what << ": tol " << tol << " not reached within the " << opt.n_cap
         << "-term budget; best error bound " << best_err
         << ". Raise the cap or loosen tol.";
    throw budget_error(cert.str(), best, best_err);
}

}  // namespace

double b_seq(std::int64_t n, double theta) {
    detail::check_theta(theta);
    if (n < 1) throw std::domain_error("n must be >= 1");
    CompensatedSum s;
    for (std::int64_t j = 1; j <= n; ++j) s.add(b_term(j, theta));
    return s.value() - b_correction(n, theta);
}

double c_seq(std::int64_t n, double delta) {
    detail::check_delta(delta);
    if (n < 2) throw std::domain_error("n must be >= 2");
    CompensatedSum s;
    for (std::int64_t j = 2; j <= n; ++j) s.add(c_term(j, delta));
    return s.value() - c_correction(n, delta);
}

SequenceLimitEstimate b_limit(double theta, double tol, const LimitOptions& opt) {
    detail::check_theta(theta);
    return ladder_limit({1, &b_term, &b_correction, &b_rate}, theta, tol, opt, "b_limit");
}

SequenceLimitEstimate c_limit(double delta, double tol, const LimitOptions& opt) {
    detail::check_delta(delta);
    return ladder_limit({2, &c_term, &c_correction, &c_rate}, delta, tol, opt, "c_limit");
}

}  // namespace cmclab
