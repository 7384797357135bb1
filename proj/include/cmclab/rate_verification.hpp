#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cmclab/montecarlo.hpp"
#include "cmclab/remainder_bounds.hpp"

namespace cmclab {

/// Descending geometric eps grid discretizing "as eps decreases to 0".
struct EpsGrid {
    std::vector<double> points;

    /// start, start*ratio, ..., count points; ratio in (0,1), count >= 5.
    static EpsGrid geometric(double start, double ratio, int count);
    /// 0.2 downward at ratio 1/sqrt(2), clipped at the lambda1 eps floor 0.02.
    static EpsGrid default_lambda1();
    /// 0.5 downward at ratio 1/sqrt(2), clipped at 0.1 (series cost).
    static EpsGrid default_lambda2();
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

/// How residuals are produced: the exact Gaussian evaluator or Monte Carlo
/// over a catalog law. inject_bias_exponent, when set, adds eps^e to every
/// residual (negative-control hook).
struct Evaluator {
    enum class Mode { gaussian_exact, mc };

    Mode mode = Mode::gaussian_exact;
    double tol = 1e-9;
    DistributionSpec dist = DistributionSpec::standard_normal();
    MCConfig cfg{};
    std::optional<double> inject_bias_exponent{};
};

/// eps^{2-p} lambda_1(eps, p) - 2 sigma^2/(2 - p).
double lambda1_residual(double eps, double p, double sigma, const Evaluator& ev);

/// eps^{2 delta} lambda_2(eps, delta) - sigma^{2 delta + 2} E|N|^{2 delta+2}/delta.
double lambda2_residual(double eps, double delta, double sigma, const Evaluator& ev);

/// Least squares of log|residual| against log eps. Points with |residual|
/// below `floor` are dropped; fewer than 3 usable points throws
/// insufficient_data_error.
RateFit fit_rate(const EpsGrid& grid, std::span<const double> residuals, double floor = 1e-12);

struct TheoremReport {
    double fitted_slope = 0.0;
    double required_slope = 0.0;
    std::vector<double> residuals;
    std::vector<double> scaled_sequence;
    bool pass = false;
    RateFit fit;
};

/// First-order rate check: the scaled sequence eps^{(gamma-1)(2-p)} *
/// residual must vanish. Pass: fitted slope >= required - 0.1 (required =
/// (1-gamma)(2-p)) and |scaled| decreasing over the last three grid points.
TheoremReport verify_theorem_2_2a(double p, double q, const EpsGrid& grid, const Evaluator& ev);

/// Log-rate check: the scaled sequence (log 1/eps)^{-delta} eps^{-2 delta} *
/// residual must vanish. Pass: |scaled| decreasing over the last three grid
/// points and the final magnitude below half the first.
TheoremReport verify_theorem_2_2b(double delta, double q, const EpsGrid& grid,
                                  const Evaluator& ev);

struct ConstantRecovery {
    double constant_estimate = 0.0;
    double reference = 0.0;
    double relative_error = 0.0;
};

/// Extrapolates residual/eps^{2-p} to eps -> 0 by two-point Richardson
/// (rate eps^p) and compares against b_limit(-p/2) * E|N|^p. Gaussian
/// evaluator, sigma = 1.
ConstantRecovery recover_lambda1_constant(double p, const EpsGrid& grid, const Evaluator& ev);

/// Extrapolates residual/eps^{2 delta} (rate eps^2) against c_limit(delta).
ConstantRecovery recover_lambda2_constant(double delta, const EpsGrid& grid,
                                          const Evaluator& ev);

}  // namespace cmclab
