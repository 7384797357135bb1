#include "cmclab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "cmclab/distributions.hpp"
#include "cmclab/gaussian_series.hpp"
#include "cmclab/limit_constants.hpp"
#include "cmclab/montecarlo.hpp"
#include "cmclab/numerics.hpp"
#include "cmclab/rate_verification.hpp"
#include "cmclab/remainder_bounds.hpp"
#include "cmclab/rng.hpp"
#include "cmclab/special_functions.hpp"

namespace cmclab {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

struct Checker {
    bool pass = true;
    std::ostringstream out;

    void note(const std::string& s) { out << s << "; "; }
    void expect(bool ok, const std::string& s) {
        if (!ok) pass = false;
        out << (ok ? "" : "[FAIL] ") << s << "; ";
    }
    std::string detail() const { return out.str(); }
};

// ---- independent oracles (recomputed here, not taken from the library) ----

// zeta(s) for s in (0,1) via the alternating series accelerated by the
// Cohen-Rodriguez Villegas-Zagier scheme: zeta = eta / (1 - 2^{1-s}).
double zeta_oracle(double s) {
    const int n = 48;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0;
    double c = -d;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        acc += c * std::pow(static_cast<double>(k + 1), -s);
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    return (acc / d) / (1.0 - std::pow(2.0, 1.0 - s));
}

// Euler-Mascheroni constant from the harmonic numbers with the asymptotic
// correction terms through n^{-6}.
double euler_gamma_oracle() {
    const int n = 200;
    CompensatedSum h;
    for (int j = 1; j <= n; ++j) h.add(1.0 / j);
    const double nd = n;
    return h.value() - std::log(nd) - 1.0 / (2.0 * nd) + 1.0 / (12.0 * nd * nd) -
           1.0 / (120.0 * std::pow(nd, 4.0)) + 1.0 / (252.0 * std::pow(nd, 6.0));
}

// Exact truncated lambda2 partial sum (same formula the MC estimator
// targets), for the sharp oracle-equivalence comparison.
double lambda2_partial_exact(double eps, double delta, double sigma, std::int64_t n_max) {
    CompensatedSum s;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        s.add(std::pow(std::log(nd), delta - 1.0) / nd *
              truncated_abs_moment(2.0, eps * std::sqrt(std::log(nd)) / sigma));
    }
    return sigma * sigma * s.value();
}

double lambda1_partial_exact(double eps, double p, double sigma, std::int64_t n_max) {
    CompensatedSum s;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        s.add(std::pow(nd, -0.5 * p) * truncated_abs_moment(p, eps * std::sqrt(nd) / sigma));
    }
    return std::pow(sigma, p) * s.value();
}

// ---- criteria -------------------------------------------------------------

CriterionResult criterion1(const AcceptanceOptions&) {
    Checker ck;
    const double tol = 1e-9;
    const auto grid = EpsGrid::default_lambda1();
    for (const double p : {0.5, 1.0, 1.5}) {
        const double lead = 2.0 / (2.0 - p);
        const double lam = lambda1_gaussian({0.02, p, 1.0}, tol).value;
        const double rel = std::abs(std::pow(0.02, 2.0 - p) * lam - lead) / lead;
        ck.expect(rel <= 0.05, "p=" + fmt(p) + " rel dev " + fmt(rel) + " <= 0.05");
        bool monotone = true;
        double prev = std::numeric_limits<double>::infinity();
        for (const double eps : grid.points) {
            const double r = std::abs(std::pow(eps, 2.0 - p) *
                                          lambda1_gaussian({eps, p, 1.0}, tol).value -
                                      lead);
            if (r >= prev) monotone = false;
            prev = r;
        }
        ck.expect(monotone, "p=" + fmt(p) + " |residual| decreasing along default grid");
    }
    return {1, "theorem 1.1(a) desk check (Gaussian exact)", ck.pass, ck.detail(), 0.0, 30.0};
}

CriterionResult criterion2(const AcceptanceOptions&) {
    Checker ck;
    const double tol = 1e-9;
    {
        const double v = 0.01 * lambda2_gaussian({0.1, 1.0, 1.0}, tol).value;
        ck.expect(v >= 2.97 && v <= 3.03, "delta=1: eps^2*lambda2 = " + fmt(v) + " in [2.97,3.03]");
    }
    {
        const double ref = 2.0 * normal_abs_moment(3.0);
        const double v = 0.1 * lambda2_gaussian({0.1, 0.5, 1.0}, tol).value;
        const double rel = std::abs(v - ref) / ref;
        ck.expect(rel <= 0.03, "delta=0.5: eps*lambda2 = " + fmt(v) + " vs " + fmt(ref) +
                                   ", rel dev " + fmt(rel) + " <= 0.03");
    }
    return {2, "theorem 1.1(b) desk check (Gaussian exact)", ck.pass, ck.detail(), 0.0, 120.0};
}

CriterionResult criterion3(const AcceptanceOptions&) {
    Checker ck;
    {
        const double oracle = zeta_oracle(0.5);
        const auto est = b_limit(-0.5, 1e-6);
        ck.expect(std::abs(est.value - oracle) <= 1e-6,
                  "b_limit(-0.5) = " + fmt(est.value) + " vs zeta(1/2) oracle " + fmt(oracle));
    }
    {
        const double oracle = euler_gamma_oracle() - 1.0;
        const auto est = c_limit(1.0, 1e-6);
        ck.expect(std::abs(est.value - oracle) <= 1e-6,
                  "c_limit(1) = " + fmt(est.value) + " vs EulerGamma-1 oracle " + fmt(oracle));
    }
    for (int i = 1; i <= 9; ++i) {
        const double theta = -0.1 * i;
        const auto est = b_limit(theta, 1e-7);
        const bool ok = est.value >= -1.0 / (theta + 1.0) - 1e-6 &&
                        est.value < theta / (theta + 1.0);
        ck.expect(ok, "B bracket at theta=" + fmt(theta) + " (value " + fmt(est.value) + ")");
    }
    for (int i = 1; i <= 10; ++i) {
        const double delta = 0.1 * i;
        const auto est = c_limit(delta, 1e-7);
        const bool ok = est.value >= -std::pow(std::log(2.0), delta) / delta - 1e-6 &&
                        est.value <= 1e-9;
        ck.expect(ok, "C bracket at delta=" + fmt(delta) + " (value " + fmt(est.value) + ")");
    }
    return {3, "limit constants vs accelerated-summation oracles", ck.pass, ck.detail(), 0.0, 10.0};
}

CriterionResult criterion4(const AcceptanceOptions&) {
    Checker ck;
    Evaluator ev;
    ev.tol = 1e-10;
    for (const double p : {0.5, 1.0, 1.5}) {
        const auto rec = recover_lambda1_constant(p, EpsGrid::default_lambda1(), ev);
        ck.expect(rec.relative_error <= 0.02,
                  "p=" + fmt(p) + ": est " + fmt(rec.constant_estimate) + " vs ref " +
                      fmt(rec.reference) + " (rel " + fmt(rec.relative_error) + " <= 2%)");
    }
    for (const double delta : {0.5, 1.0}) {
        const auto rec = recover_lambda2_constant(delta, EpsGrid::default_lambda2(), ev);
        ck.expect(rec.relative_error <= 0.05,
                  "delta=" + fmt(delta) + ": est " + fmt(rec.constant_estimate) + " vs ref " +
                      fmt(rec.reference) + " (rel " + fmt(rec.relative_error) + " <= 5%)");
    }
    return {4, "expansion-constant recovery (cross-module oracle)", ck.pass, ck.detail(), 0.0,
            120.0};
}

CriterionResult criterion5(const AcceptanceOptions&) {
    Checker ck;
    Evaluator ev;
    ev.tol = 1e-10;
    for (const double p : {0.5, 1.0, 1.5}) {
        const auto rep = verify_theorem_2_2a(p, 3.0, EpsGrid::default_lambda1(), ev);
        ck.expect(rep.pass, "2.2a pass at p=" + fmt(p));
        ck.expect(std::abs(rep.fitted_slope - (2.0 - p)) <= 0.1,
                  "p=" + fmt(p) + " fitted slope " + fmt(rep.fitted_slope) + " within 0.1 of " +
                      fmt(2.0 - p));
        ck.expect(rep.fitted_slope >= rep.required_slope,
                  "p=" + fmt(p) + " fitted >= required " + fmt(rep.required_slope));
    }
    // eps down to the lambda2 contract floor so the halving clause tests the
    // limit rather than the grid.
    const auto grid2b = EpsGrid::geometric(0.5, std::pow(0.1, 1.0 / 7.0), 8);
    for (const double delta : {0.5, 1.0}) {
        const auto rep = verify_theorem_2_2b(delta, 3.0, grid2b, ev);
        ck.expect(rep.pass, "2.2b pass at delta=" + fmt(delta) + " (first " +
                                fmt(std::abs(rep.scaled_sequence.front())) + ", last " +
                                fmt(std::abs(rep.scaled_sequence.back())) + ")");
    }
    {
        Evaluator biased = ev;
        biased.inject_bias_exponent = 0.1;
        const auto rep = verify_theorem_2_2a(1.0, 3.0, EpsGrid::default_lambda1(), biased);
        ck.expect(!rep.pass, "injected eps^0.1 bias flips 2.2a to fail");
        const auto rep2 = verify_theorem_2_2b(1.0, 3.0, grid2b, biased);
        ck.expect(!rep2.pass, "injected eps^0.1 bias flips 2.2b to fail");
    }
    return {5, "theorem 2.2 rate suite with negative controls", ck.pass, ck.detail(), 0.0, 180.0};
}

CriterionResult criterion6(const AcceptanceOptions& opts) {
    Checker ck;
    RngStream rng(opts.seed, 6);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const double p = 0.01 + 1.98 * rng.next_uniform01();
        const double q = 2.0 + 1.0 * rng.next_uniform_open0();
        const auto e = gamma_exponent(p, q);
        const double lhs1 = e.gamma * (2.0 * q - 2.0 - p);
        const double lhs2 = e.gamma * (2.0 - p) + p + q - 4.0;
        const double rhs2 = 2.0 * (q - 2.0) * (q - 2.0) / (2.0 * q - 2.0 - p);
        const bool ok = std::abs(lhs1 - (q - p)) <= 1e-12 * std::max(1.0, std::abs(q - p)) &&
                        std::abs(lhs2 - rhs2) <= 1e-12 * std::max(1.0, std::abs(rhs2)) &&
                        e.gamma > 0.0 && e.gamma < 1.0;
        if (!ok) ++bad;
    }
    ck.expect(bad == 0, "exponent identities hold to 1e-12 on 1000 random (p,q), failures=" +
                            std::to_string(bad));
    return {6, "rate exponent identities", ck.pass, ck.detail(), 0.0, 1.0};
}

CriterionResult criterion7(const AcceptanceOptions&) {
    Checker ck;
    const auto exps = gamma_exponent(1.0, 3.0);
    {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const double eps : {0.1, 0.05, 0.01}) {
            const double s = remainder_tail_bound_lambda1(eps, exps, 1.0, 1.0, 1.0).scaled_bound;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        ck.expect(hi / lo <= 1.10, "lambda1 scaled bound eps-independent within 10% (" + fmt(lo) +
                                       ".." + fmt(hi) + ")");
    }
    {
        double prev = 0.0;
        for (const double m : {1.0, 2.0, 4.0, 8.0}) {
            const auto r = remainder_tail_bound_lambda1(0.01, exps, m, 1.0, 1.0);
            ck.expect(r.scaled_bound <= 1.10 * r.predicted_cap,
                      "lambda1 scaled " + fmt(r.scaled_bound) + " <= 1.1*cap " +
                          fmt(r.predicted_cap) + " at M=" + fmt(m));
            if (prev > 0.0) {
                const double ratio = r.scaled_bound / prev;
                ck.expect(std::abs(ratio / 0.5 - 1.0) <= 0.10,
                          "lambda1 M-doubling ratio " + fmt(ratio) + " ~ 1/2");
            }
            prev = r.scaled_bound;
        }
    }
    {
        double prev = 0.0;
        const double target = std::pow(2.0, -0.5);
        for (const double m : {1.0, 2.0, 4.0, 8.0}) {
            const auto r = remainder_tail_bound_lambda2(0.01, 1.0, 3.0, m, 1.0, 1.0);
            ck.expect(r.scaled_bound <= 1.10 * r.predicted_cap,
                      "lambda2 scaled " + fmt(r.scaled_bound) + " <= 1.1*cap " +
                          fmt(r.predicted_cap) + " at M=" + fmt(m));
            if (prev > 0.0) {
                const double ratio = r.scaled_bound / prev;
                ck.expect(std::abs(ratio / target - 1.0) <= 0.10,
                          "lambda2 M-doubling ratio " + fmt(ratio) + " ~ 2^(-1/2)");
            }
            prev = r.scaled_bound;
        }
    }
    {
        const auto dist = DistributionSpec::rademacher();
        double cstar = 0.0;
        for (int n = 1; n <= 20; ++n) {
            const auto atoms = exact_sn_distribution(dist, n);
            const double sqn = std::sqrt(static_cast<double>(n));
            for (int i = 1; i <= 100; ++i) {
                const double x = 0.05 * i;
                const double disc =
                    std::abs(detail::atoms_upper_tail(atoms, sqn * x) - normal_upper_tail(x));
                cstar = std::max(cstar, disc / bikjalis_bound(n, x, 3.0, 1.0, 1.0));
            }
        }
        ck.expect(cstar > 0.0 && cstar <= 10.0,
                  "single fitted Bikjalis constant C* = " + fmt(cstar) + " (O(1))");
        bool dominated = true;
        for (int n = 1; n <= 20 && dominated; ++n) {
            const auto atoms = exact_sn_distribution(dist, n);
            const double sqn = std::sqrt(static_cast<double>(n));
            for (int i = 1; i <= 100; ++i) {
                const double x = 0.05 * i;
                const double disc =
                    std::abs(detail::atoms_upper_tail(atoms, sqn * x) - normal_upper_tail(x));
                if (disc > bikjalis_bound(n, x, 3.0, 1.0, cstar) * (1.0 + 1e-12)) {
                    dominated = false;
                    break;
                }
            }
        }
        ck.expect(dominated, "C* dominates all enumerated (n <= 20, x-grid) discrepancies");
    }
    return {7, "remainder bound scaling and Bikjalis domination", ck.pass, ck.detail(), 0.0, 60.0};
}

CriterionResult criterion8(const AcceptanceOptions& opts) {
    Checker ck;
    const std::int64_t reps = opts.quick ? 20'000 : 100'000;
    MCConfig cfg;
    cfg.replications = reps;
    cfg.seed = opts.seed;
    cfg.threads = opts.threads;

    const auto normal = DistributionSpec::standard_normal();
    const auto rade = DistributionSpec::rademacher();
    const auto uniform = DistributionSpec::uniform_centered();

    {
        const auto est = estimate_tail_prob(normal, 9, 3.0, cfg);
        const double exact = normal_tail(1.0);
        ck.expect(std::abs(est.mean - exact) <= 3.0 * est.std_error,
                  "tail prob normal n=9 x=3: " + fmt(est.mean) + " vs " + fmt(exact));
    }
    {
        const auto est = estimate_tail_prob(rade, 2, 1.5, cfg);
        ck.expect(std::abs(est.mean - 0.5) <= 3.0 * est.std_error,
                  "tail prob rademacher n=2 x=1.5: " + fmt(est.mean) + " vs 0.5");
        const auto one = estimate_tail_prob(rade, 1, 0.5, cfg);
        ck.expect(one.mean == 1.0 && one.std_error == 0.0,
                  "tail prob rademacher n=1 x=0.5 is exactly 1");
    }
    {
        const auto est = estimate_truncated_pth_moment(uniform, 5, 0.0, 2.0, cfg);
        ck.expect(std::abs(est.mean - 5.0) <= 3.0 * est.std_error,
                  "second moment of S_5 (uniform): " + fmt(est.mean) + " vs 5");
    }
    {
        const auto est = estimate_truncated_pth_moment(rade, 2, 1.5, 1.0, cfg);
        ck.expect(std::abs(est.mean - 1.0) <= 3.0 * est.std_error,
                  "truncated moment rademacher n=2: " + fmt(est.mean) + " vs 1");
    }
    {
        const auto est = estimate_truncated_pth_moment(normal, 4, 2.0, 1.0, cfg);
        const double exact = 2.0 * truncated_abs_moment(1.0, 1.0);
        ck.expect(std::abs(est.mean - exact) <= 3.0 * est.std_error,
                  "truncated moment normal n=4 thr=2: " + fmt(est.mean) + " vs " + fmt(exact));
    }
    {
        MCConfig lcfg = cfg;
        lcfg.n_max = opts.quick ? 40 : 80;
        const auto mc = lambda1_mc(normal, 1.0, 0.3, lcfg);
        const double partial = lambda1_partial_exact(0.3, 1.0, 1.0, lcfg.n_max);
        const double full = lambda1_gaussian({0.3, 1.0, 1.0}, 1e-10).value;
        ck.expect(std::abs(mc.estimate.mean - partial) <= 3.0 * mc.estimate.std_error,
                  "lambda1_mc normal vs exact partial: " + fmt(mc.estimate.mean) + " vs " +
                      fmt(partial));
        ck.expect(std::abs(full - partial) <= mc.truncation_bias_bound,
                  "lambda1 truncation bias bound honors |full - partial|");
        ck.expect(std::abs(mc.estimate.mean - full) <=
                      3.0 * mc.estimate.std_error + mc.truncation_bias_bound,
                  "lambda1_mc normal vs full series within 3se+bias");
    }
    {
        MCConfig lcfg = cfg;
        lcfg.n_max = opts.quick ? 40 : 80;
        const auto mc = lambda1_mc(rade, 1.0, 0.3, lcfg);
        const double scaled = 0.3 * mc.estimate.mean;
        ck.expect(scaled >= 2.0 * 0.7 && scaled <= 2.0 * 1.3,
                  "lambda1_mc rademacher eps^(2-p)*mean = " + fmt(scaled) + " in 2*[0.7,1.3]");
    }
    {
        MCConfig lcfg = cfg;
        lcfg.replications = opts.quick ? 5'000 : 20'000;
        lcfg.n_max = opts.quick ? 100 : 200;
        const auto mc = lambda2_mc(normal, 1.0, 0.5, lcfg);
        const double partial = lambda2_partial_exact(0.5, 1.0, 1.0, lcfg.n_max);
        const double full = lambda2_gaussian({0.5, 1.0, 1.0}, 1e-9).value;
        ck.expect(std::abs(mc.estimate.mean - partial) <= 3.0 * mc.estimate.std_error,
                  "lambda2_mc normal vs exact partial: " + fmt(mc.estimate.mean) + " vs " +
                      fmt(partial));
        ck.expect(std::abs(full - partial) <= mc.truncation_bias_bound,
                  "lambda2 truncation bias bound honors |full - partial|");
        const auto mcu = lambda2_mc(uniform, 1.0, 0.5, lcfg);
        const double band = 0.25 * mcu.estimate.mean;
        const double band_hi = 0.25 * (mcu.estimate.mean + mcu.truncation_bias_bound);
        ck.expect(band <= 3.0 * 1.1 && band_hi >= 3.0 * 0.9,
                  "lambda2_mc uniform eps^2*(mean..mean+bias) = [" + fmt(band) + "," +
                      fmt(band_hi) + "] brackets 3 within desk band");
    }
    {
        const auto grid = default_t_grid();
        const double d25 = delta_n_estimate(normal, 25, cfg, grid);
        ck.expect(d25 <= 0.01, "delta_n normal n=25 = " + fmt(d25) + " ~ 0 (sampling noise only)");
        const double d4 = delta_n_estimate(rade, 4, cfg, grid);
        const double d16 = delta_n_estimate(rade, 16, cfg, grid);
        ck.expect(d4 > d16, "delta_n rademacher decreases: " + fmt(d4) + " > " + fmt(d16));
        const double d64 = delta_n_estimate(rade, 64, cfg, grid);
        const double worst = std::max({d4 * 2.0, d16 * 4.0, d64 * 8.0});
        ck.expect(worst <= 1.0, "delta_n*sqrt(n) bounded over {4,16,64}: max " + fmt(worst));
    }
    {
        const auto a = estimate_tail_prob(normal, 9, 3.0, cfg);
        MCConfig cfg1 = cfg;
        cfg1.threads = 1;
        const auto b = estimate_tail_prob(normal, 9, 3.0, cfg1);
        ck.expect(a.mean == b.mean && a.std_error == b.std_error,
                  "bit-identical across thread counts");
        const auto c = estimate_tail_prob(normal, 9, 3.0, cfg);
        ck.expect(a.mean == c.mean && a.std_error == c.std_error, "bit-identical on repeat");
    }
    return {8, "Monte Carlo oracle equivalence and determinism", ck.pass, ck.detail(), 0.0, 300.0};
}

CriterionResult criterion9(const AcceptanceOptions&) {
    Checker ck;
    const auto rade = DistributionSpec::rademacher();
    {
        bool all_ok = true;
        double worst = 0.0;
        for (const int n : {2, 4, 7, 10}) {
            const auto atoms = exact_sn_distribution(rade, n);
            for (const double a : {0.5, 1.5, 2.5}) {
                for (const double p : {0.5, 1.0, 1.5}) {
                    double lhs = 0.0;
                    std::vector<double> cuts;
                    for (const auto& at : atoms) {
                        if (std::abs(at.value) >= a) {
                            lhs += at.probability * std::pow(std::abs(at.value), p);
                        }
                        cuts.push_back(std::abs(at.value));
                    }
                    // integral route: walk the survival step function, whose
                    // level on (cut_j, cut_{j+1}] is the tail at cut_{j+1}
                    std::sort(cuts.begin(), cuts.end());
                    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
                    double integral = 0.0;
                    double lo = a;
                    for (const double cut : cuts) {
                        if (cut <= lo) continue;
                        integral += detail::atoms_two_sided_tail(atoms, cut) *
                                    (std::pow(cut, p) - std::pow(lo, p));
                        lo = cut;
                    }
                    const double rhs =
                        std::pow(a, p) * detail::atoms_two_sided_tail(atoms, a) + integral;
                    const double diff = std::abs(lhs - rhs);
                    worst = std::max(worst, diff);
                    if (diff > 1e-12) all_ok = false;
                }
            }
        }
        ck.expect(all_ok, "moment-tail decomposition exact on lattice grid (worst " + fmt(worst) +
                              ")");
    }
    {
        const double tol = 1e-9;
        const auto whole = lambda1_gaussian({0.5, 1.0, 1.0}, tol);
        const auto parts = lambda1_parts_gaussian({0.5, 1.0, 1.0}, tol);
        const double gap = std::abs(parts.head.value + parts.integral_part.value - whole.value);
        ck.expect(gap <= whole.tail_bound + parts.head.tail_bound + parts.integral_part.tail_bound,
                  "lambda1 parts recompose at (0.5,1), gap " + fmt(gap));
        const auto whole2 = lambda2_gaussian({1.0, 1.0, 1.0}, tol);
        const auto parts2 = lambda2_parts_gaussian({1.0, 1.0, 1.0}, tol);
        const double gap2 =
            std::abs(parts2.head.value + parts2.integral_part.value - whole2.value);
        ck.expect(gap2 <=
                      whole2.tail_bound + parts2.head.tail_bound + parts2.integral_part.tail_bound,
                  "lambda2 parts recompose at (1,1), gap " + fmt(gap2));
        const auto whole3 = lambda2_gaussian({1.0, 0.5, 1.0}, tol);
        const auto parts3 = lambda2_parts_gaussian({1.0, 0.5, 1.0}, tol);
        const double gap3 =
            std::abs(parts3.head.value + parts3.integral_part.value - whole3.value);
        ck.expect(gap3 <=
                      whole3.tail_bound + parts3.head.tail_bound + parts3.integral_part.tail_bound,
                  "lambda2 parts recompose at (1,0.5), gap " + fmt(gap3));
    }
    {
        bool ok = true;
        std::ostringstream what;
        const auto check_pair = [&](const SeriesValue& coarse, const SeriesValue& fine,
                                    const char* name) {
            const double gap = std::abs(coarse.value - fine.value);
            if (gap > coarse.tail_bound + fine.tail_bound) {
                ok = false;
                what << name << " gap " << fmt(gap) << " exceeds bounds; ";
            }
        };
        check_pair(lambda1_gaussian({0.3, 1.0, 1.0}, 1e-6),
                   lambda1_gaussian({0.3, 1.0, 1.0}, 1e-8), "lambda1(0.3,1)");
        check_pair(lambda1_gaussian({0.1, 0.5, 1.0}, 1e-6),
                   lambda1_gaussian({0.1, 0.5, 1.0}, 1e-8), "lambda1(0.1,0.5)");
        check_pair(klesov_sum_gaussian(0.2, 1e-6), klesov_sum_gaussian(0.2, 1e-8), "klesov(0.2)");
        check_pair(lambda2_gaussian({0.5, 1.0, 1.0}, 1e-6),
                   lambda2_gaussian({0.5, 1.0, 1.0}, 1e-8), "lambda2(0.5,1)");
        check_pair(kong_sum_gaussian(0.5, 1.0, 1e-6), kong_sum_gaussian(0.5, 1.0, 1e-8),
                   "kong(0.5,1)");
        ck.expect(ok, "tail bounds honored against tol/100 recomputations " + what.str());
    }
    return {9, "identity and tail-bound property suites", ck.pass, ck.detail(), 0.0, 120.0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    using Fn = std::function<CriterionResult(const AcceptanceOptions&)>;
    const Fn criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                           criterion6, criterion7, criterion8, criterion9};
    std::vector<CriterionResult> results;
    results.reserve(9);
    for (const auto& fn : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = fn(opts);
        const auto t1 = std::chrono::steady_clock::now();
        r.seconds = std::chrono::duration<double>(t1 - t0).count();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace cmclab
