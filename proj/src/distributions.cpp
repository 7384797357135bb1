#include "cmclab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cmclab/numerics.hpp"
#include "cmclab/special_functions.hpp"

namespace cmclab {

namespace {

constexpr double kSqrt3 = 1.73205080756887729352744634150587237;

void check_q(double q) {
    if (!(q > 2.0 && q <= 3.0)) throw std::domain_error("q must lie in (2, 3]");
}

// E|Y - 1|^q for Y ~ Exp(1):  e^{-1} (Gamma(q+1) + sum_k 1/(k! (q+k+1))).
double exponential_abs_moment(double q) {
    double series = 0.0;
    double kfact = 1.0;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) kfact *= k;
        const double term = 1.0 / (kfact * (q + k + 1.0));
        series += term;
        if (term < 1e-18 * series) break;
    }
    return std::exp(-1.0) * (std::tgamma(q + 1.0) + series);
}

double unit_variance(DistKind kind, double a, double prob) {
    switch (kind) {
        case DistKind::standard_normal:
        case DistKind::rademacher:
        case DistKind::uniform_centered:
        case DistKind::exponential_centered:
            return 1.0;
        case DistKind::two_point:
            return a * a * prob * (1.0 - prob);
    }
    return 1.0;
}

double unit_abs_moment(DistKind kind, double q, double a, double prob) {
    switch (kind) {
        case DistKind::standard_normal:
            return normal_abs_moment(q);
        case DistKind::rademacher:
            return 1.0;
        case DistKind::uniform_centered:
            return std::pow(kSqrt3, q) / (q + 1.0);
        case DistKind::exponential_centered:
            return exponential_abs_moment(q);
        case DistKind::two_point: {
            const double up = a * (1.0 - prob);
            const double down = a * prob;
            return prob * std::pow(up, q) + (1.0 - prob) * std::pow(down, q);
        }
    }
    return 0.0;
}

}  // namespace

DistributionSpec DistributionSpec::standard_normal() {
    DistributionSpec d;
    d.kind_ = DistKind::standard_normal;
    return d;
}

DistributionSpec DistributionSpec::rademacher() {
    DistributionSpec d;
    d.kind_ = DistKind::rademacher;
    return d;
}

DistributionSpec DistributionSpec::uniform_centered() {
    DistributionSpec d;
    d.kind_ = DistKind::uniform_centered;
    return d;
}

DistributionSpec DistributionSpec::exponential_centered() {
    DistributionSpec d;
    d.kind_ = DistKind::exponential_centered;
    return d;
}

DistributionSpec DistributionSpec::two_point(double a, double prob) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("two_point: a must be positive");
    if (!(prob > 0.0 && prob < 1.0)) throw std::domain_error("two_point: prob must lie in (0, 1)");
    DistributionSpec d;
    d.kind_ = DistKind::two_point;
    d.a_ = a;
    d.prob_ = prob;
    return d;
}

DistributionSpec DistributionSpec::from_key(std::string_view key) {
    if (key == "normal" || key == "standard_normal") return standard_normal();
    if (key == "rademacher") return rademacher();
    if (key == "uniform" || key == "uniform_centered") return uniform_centered();
    if (key == "exponential" || key == "exponential_centered") return exponential_centered();
    if (key.rfind("two_point(", 0) == 0 && key.back() == ')') {
        const std::string inner(key.substr(10, key.size() - 11));
        const auto comma = inner.find(',');
        if (comma != std::string::npos) {
            try {
                const double a = std::stod(inner.substr(0, comma));
                const double prob = std::stod(inner.substr(comma + 1));
                return two_point(a, prob);
            } catch (const std::invalid_argument&) {
                // falls through to the domain error below
            }
        }
    }
    throw std::domain_error("unknown distribution key: " + std::string(key));
}

DistributionSpec DistributionSpec::with_scale(double s) const {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("scale must be positive");
    DistributionSpec d = *this;
    d.scale_ = s;
    return d;
}

DistributionSpec DistributionSpec::with_moment_order(double q) const {
    check_q(q);
    DistributionSpec d = *this;
    d.q_ = q;
    return d;
}

double DistributionSpec::variance() const noexcept {
    return scale_ * scale_ * unit_variance(kind_, a_, prob_);
}

double DistributionSpec::sigma() const noexcept { return std::sqrt(variance()); }

double DistributionSpec::abs_moment_q() const {
    return std::pow(scale_, q_) * unit_abs_moment(kind_, q_, a_, prob_);
}

std::string DistributionSpec::key() const {
    switch (kind_) {
        case DistKind::standard_normal: return "normal";
        case DistKind::rademacher: return "rademacher";
        case DistKind::uniform_centered: return "uniform";
        case DistKind::exponential_centered: return "exponential";
        case DistKind::two_point: {
            std::ostringstream os;
            os << "two_point(" << a_ << "," << prob_ << ")";
            return os.str();
        }
    }
    return "?";
}

double DistributionSpec::draw(RngStream& rng) const {
    switch (kind_) {
        case DistKind::standard_normal:
            return scale_ * normal_quantile(rng.next_uniform_mid());
        case DistKind::rademacher:
            return (rng.next_u64() >> 63) ? scale_ : -scale_;
        case DistKind::uniform_centered:
            return scale_ * kSqrt3 * (2.0 * rng.next_uniform_mid() - 1.0);
        case DistKind::exponential_centered:
            return scale_ * (-std::log(rng.next_uniform_open0()) - 1.0);
        case DistKind::two_point:
            return rng.next_uniform01() < prob_ ? scale_ * a_ * (1.0 - prob_)
                                                : -scale_ * a_ * prob_;
    }
    return 0.0;
}

double sample_partial_sum(const DistributionSpec& dist, std::int64_t n, RngStream& rng) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    CompensatedSum s;
    for (std::int64_t i = 0; i < n; ++i) s.add(dist.draw(rng));
    return s.value();
}

namespace detail {

std::vector<Atom> lattice_pmf(const DistributionSpec& dist, std::int64_t n) {
    if (!dist.is_lattice()) throw std::domain_error("lattice_pmf: lattice laws only");
    if (n < 1 || n > 1024) throw std::domain_error("lattice_pmf: n out of range");
    const double a = dist.two_point_a();
    const double prob = dist.two_point_prob();
    const double step = dist.scale() * a;
    // S_n = scale * a * (k - n*prob) with k ~ Binomial(n, prob).
    std::vector<Atom> atoms(static_cast<std::size_t>(n) + 1);
    if (n <= 30) {
        // Binomial coefficients stay integral and below 2^53: exact.
        double coeff = 1.0;
        for (std::int64_t k = 0; k <= n; ++k) {
            atoms[k] = {step * (static_cast<double>(k) - static_cast<double>(n) * prob),
                        coeff * std::pow(prob, static_cast<double>(k)) *
                            std::pow(1.0 - prob, static_cast<double>(n - k))};
            coeff = coeff * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
    } else {
        const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
        const double lp = std::log(prob);
        const double lq = std::log(1.0 - prob);
        for (std::int64_t k = 0; k <= n; ++k) {
            const double kd = static_cast<double>(k);
            const double nd = static_cast<double>(n);
            const double logp = lg_n1 - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
                                kd * lp + (nd - kd) * lq;
            atoms[k] = {step * (kd - nd * prob), std::exp(logp)};
        }
    }
    return atoms;  // ascending in value since step > 0
}

double atoms_two_sided_tail(const std::vector<Atom>& atoms, double y) {
    double p = 0.0;
    for (const auto& at : atoms) {
        if (std::abs(at.value) >= y) p += at.probability;
    }
    return p;
}

double atoms_upper_tail(const std::vector<Atom>& atoms, double y) {
    double p = 0.0;
    for (const auto& at : atoms) {
        if (at.value > y) p += at.probability;
    }
    return p;
}

}  // namespace detail

std::vector<Atom> exact_sn_distribution(const DistributionSpec& dist, int n) {
    if (!dist.is_lattice()) {
        throw std::domain_error("exact_sn_distribution supports rademacher/two_point only");
    }
    if (n < 1 || n > 30) {
        throw std::domain_error("exact_sn_distribution supports n <= 30");
    }
    return detail::lattice_pmf(dist, n);
}

MomentMetadata moment_metadata(const DistributionSpec& dist) {
    return {dist.variance(), dist.moment_order(), dist.abs_moment_q()};
}

}  // namespace cmclab
