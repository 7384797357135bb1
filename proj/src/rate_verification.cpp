#include "cmclab/rate_verification.hpp"

#include <cmath>
#include <stdexcept>

#include "cmclab/errors.hpp"
#include "cmclab/gaussian_series.hpp"
#include "cmclab/limit_constants.hpp"
#include "cmclab/special_functions.hpp"

namespace cmclab {

EpsGrid EpsGrid::geometric(double start, double ratio, int count) {
    if (!(start > 0.0) || !std::isfinite(start)) throw std::domain_error("start must be positive");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::domain_error("ratio must lie in (0, 1)");
    if (count < 5) throw std::domain_error("count must be >= 5");
    EpsGrid g;
    g.points.resize(static_cast<std::size_t>(count));
    double e = start;
    for (int i = 0; i < count; ++i) {
        g.points[static_cast<std::size_t>(i)] = e;
        e *= ratio;
    }
    return g;
}

namespace {

EpsGrid clipped_geometric(double start, double ratio, double eps_min) {
    EpsGrid g;
    for (double e = start; e >= eps_min * (1.0 - 1e-9); e *= ratio) g.points.push_back(e);
    return g;
}

}  // namespace

EpsGrid EpsGrid::default_lambda1() { return clipped_geometric(0.2, 1.0 / kSqrt2, 0.02); }
EpsGrid EpsGrid::default_lambda2() { return clipped_geometric(0.5, 1.0 / kSqrt2, 0.1); }

namespace {

double apply_bias(double residual, double eps, const Evaluator& ev) {
    if (ev.inject_bias_exponent) residual += std::pow(eps, *ev.inject_bias_exponent);
    return residual;
}

}  // namespace

double lambda1_residual(double eps, double p, double sigma, const Evaluator& ev) {
    const double lead = 2.0 * sigma * sigma / (2.0 - p);
    double lam = 0.0;
    if (ev.mode == Evaluator::Mode::gaussian_exact) {
        lam = lambda1_gaussian({eps, p, sigma}, ev.tol).value;
    } else {
        lam = lambda1_mc(ev.dist.with_scale(ev.dist.scale() * sigma / ev.dist.sigma()), p,
                         eps, ev.cfg)
                  .estimate.mean;
    }
    return apply_bias(std::pow(eps, 2.0 - p) * lam - lead, eps, ev);
}

double lambda2_residual(double eps, double delta, double sigma, const Evaluator& ev) {
    const double lead =
        std::pow(sigma, 2.0 * delta + 2.0) * normal_abs_moment(2.0 * delta + 2.0) / delta;
    double lam = 0.0;
    if (ev.mode == Evaluator::Mode::gaussian_exact) {
        lam = lambda2_gaussian({eps, delta, sigma}, ev.tol).value;
    } else {
        lam = lambda2_mc(ev.dist.with_scale(ev.dist.scale() * sigma / ev.dist.sigma()),
                         delta, eps, ev.cfg)
                  .estimate.mean;
    }
    return apply_bias(std::pow(eps, 2.0 * delta) * lam - lead, eps, ev);
}

RateFit fit_rate(const EpsGrid& grid, std::span<const double> residuals, double floor) {
    if (grid.points.size() != residuals.size()) {
        throw std::domain_error("grid/residual size mismatch");
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        const double r = std::abs(residuals[i]);
        if (r < floor) continue;
        xs.push_back(std::log(grid.points[i]));
        ys.push_back(std::log(r));
    }
    const int used = static_cast<int>(xs.size());
    if (used < 3) {
        throw insufficient_data_error("fit_rate: fewer than 3 usable points after flooring");
    }
    double xm = 0.0, ym = 0.0;
    for (int i = 0; i < used; ++i) {
        xm += xs[static_cast<std::size_t>(i)];
        ym += ys[static_cast<std::size_t>(i)];
    }
    xm /= used;
    ym /= used;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < used; ++i) {
        const double dx = xs[static_cast<std::size_t>(i)] - xm;
        const double dy = ys[static_cast<std::size_t>(i)] - ym;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    RateFit f;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    f.points_used = used;
    double ss_res = 0.0;
    for (int i = 0; i < used; ++i) {
        const double e = ys[static_cast<std::size_t>(i)] -
                         (f.intercept + f.slope * xs[static_cast<std::size_t>(i)]);
        ss_res += e * e;
    }
    f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

namespace {

bool tail_decreasing(const std::vector<double>& scaled) {
    const std::size_t k = scaled.size();
    if (k < 3) return false;
    return std::abs(scaled[k - 1]) < std::abs(scaled[k - 2]) &&
           std::abs(scaled[k - 2]) < std::abs(scaled[k - 3]);
}

}  // namespace

TheoremReport verify_theorem_2_2a(double p, double q, const EpsGrid& grid, const Evaluator& ev) {
    const RateExponents exps = gamma_exponent(p, q);
    TheoremReport rep;
    rep.required_slope = (1.0 - exps.gamma) * (2.0 - p);
    for (const double eps : grid.points) {
        const double r = lambda1_residual(eps, p, 1.0, ev);
        rep.residuals.push_back(r);
        rep.scaled_sequence.push_back(std::pow(eps, (exps.gamma - 1.0) * (2.0 - p)) * r);
    }
    rep.fit = fit_rate(grid, rep.residuals);
    rep.fitted_slope = rep.fit.slope;
    rep.pass = rep.fitted_slope >= rep.required_slope - 0.1 && tail_decreasing(rep.scaled_sequence);
    return rep;
}

TheoremReport verify_theorem_2_2b(double delta, double q, const EpsGrid& grid,
                                  const Evaluator& ev) {
    if (!(q > 2.0 && q <= 3.0)) throw std::domain_error("q must lie in (2, 3]");
    detail::check_delta(delta);
    TheoremReport rep;
    rep.required_slope = 2.0 * delta;  // informational: the pure-power part of the rate
    for (const double eps : grid.points) {
        const double r = lambda2_residual(eps, delta, 1.0, ev);
        rep.residuals.push_back(r);
        rep.scaled_sequence.push_back(
            std::pow(std::log(1.0 / eps), -delta) * std::pow(eps, -2.0 * delta) * r);
    }
    rep.fit = fit_rate(grid, rep.residuals);
    rep.fitted_slope = rep.fit.slope;
    const double first = std::abs(rep.scaled_sequence.front());
    const double last = std::abs(rep.scaled_sequence.back());
    rep.pass = tail_decreasing(rep.scaled_sequence) && last < 0.5 * first;
    return rep;
}

namespace {

// Two-point Richardson against a known rate: g(eps) = L + K eps^rate + ...
double richardson(double g1, double e1, double g2, double e2, double rate) {
    const double w = std::pow(e2, rate) / (std::pow(e1, rate) - std::pow(e2, rate));
    return g2 + (g2 - g1) * w;
}

}  // namespace

ConstantRecovery recover_lambda1_constant(double p, const EpsGrid& grid, const Evaluator& ev) {
    if (ev.mode != Evaluator::Mode::gaussian_exact) {
        throw std::domain_error("constant recovery requires the exact Gaussian evaluator");
    }
    if (grid.points.size() < 2) throw insufficient_data_error("need at least 2 grid points");
    const std::size_t k = grid.points.size();
    const double e1 = grid.points[k - 2], e2 = grid.points[k - 1];
    const double g1 = lambda1_residual(e1, p, 1.0, ev) / std::pow(e1, 2.0 - p);
    const double g2 = lambda1_residual(e2, p, 1.0, ev) / std::pow(e2, 2.0 - p);
    ConstantRecovery rec;
    rec.constant_estimate = richardson(g1, e1, g2, e2, p);
    rec.reference = b_limit(-0.5 * p, 1e-8).value * normal_abs_moment(p);
    rec.relative_error = std::abs(rec.constant_estimate - rec.reference) / std::abs(rec.reference);
    return rec;
}

ConstantRecovery recover_lambda2_constant(double delta, const EpsGrid& grid,
                                          const Evaluator& ev) {
    if (ev.mode != Evaluator::Mode::gaussian_exact) {
        throw std::domain_error("constant recovery requires the exact Gaussian evaluator");
    }
    if (grid.points.size() < 2) throw insufficient_data_error("need at least 2 grid points");
    const std::size_t k = grid.points.size();
    const double e1 = grid.points[k - 2], e2 = grid.points[k - 1];
    const double g1 = lambda2_residual(e1, delta, 1.0, ev) / std::pow(e1, 2.0 * delta);
    const double g2 = lambda2_residual(e2, delta, 1.0, ev) / std::pow(e2, 2.0 * delta);
    ConstantRecovery rec;
    rec.constant_estimate = richardson(g1, e1, g2, e2, 2.0);
    rec.reference = c_limit(delta, 1e-8).value;  // times E[N^2] sigma^2 = 1
    rec.relative_error = std::abs(rec.constant_estimate - rec.reference) / std::abs(rec.reference);
    return rec;
}

}  // namespace cmclab
