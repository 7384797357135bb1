// cmclab: command-line front end. Every run emits a machine-readable report
// (JSON or CSV) with a stable envelope {schema_version, command, params,
// seed}. Exit codes: 0 ok/pass, 1 verification fail, 2 usage, 3 budget
// refusal.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmclab/acceptance.hpp"
#include "cmclab/errors.hpp"
#include "cmclab/gaussian_series.hpp"
#include "cmclab/limit_constants.hpp"
#include "cmclab/montecarlo.hpp"
#include "cmclab/rate_verification.hpp"
#include "cmclab/remainder_bounds.hpp"
#include "cmclab/report.hpp"
#include "cmclab/special_functions.hpp"

namespace {

using namespace cmclab;

struct CommonOpts {
    std::string out = "-";
    std::string format = "json";
    std::uint64_t seed = 20250801;
    int threads = 2;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "Output path ('-' = stdout)");
    cmd->add_option("--format", c.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", c.seed, "Base RNG seed")->envname("CMCLAB_SEED");
    cmd->add_option("--threads", c.threads, "Worker cap for Monte Carlo shards")
        ->check(CLI::Range(1, 64));
}

void write_report(const RunReport& rep, const CommonOpts& c) {
    const std::string text = c.format == "csv" ? to_csv(rep) : to_json(rep);
    if (c.out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) throw std::runtime_error("cannot open output path " + c.out);
        f << text;
    }
}

double parse_bias(const std::string& s) {
    if (s.rfind("eps^", 0) != 0) {
        throw CLI::ValidationError("--inject-bias", "expected the form eps^<exponent>");
    }
    try {
        return std::stod(s.substr(4));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--inject-bias", "bad exponent in " + s);
    }
}

struct LambdaArgs {
    std::vector<double> eps;
    double p = 0.0;
    double delta = 0.0;
    double sigma = 1.0;
    std::string dist = "normal";
    std::string mode = "exact";
    double tol = 1e-8;
    std::int64_t reps = 100'000;
    std::int64_t nmax = 200;
};

int run_lambda(bool first_kind, const LambdaArgs& a, const CommonOpts& c) {
    RunReport rep;
    rep.command = first_kind ? "lambda1" : "lambda2";
    rep.seed = c.seed;
    rep.params = {{first_kind ? "p" : "delta", first_kind ? a.p : a.delta},
                  {"sigma", a.sigma},
                  {"dist", a.dist},
                  {"mode", a.mode},
                  {"tol", a.tol},
                  {"reps", a.reps},
                  {"nmax", a.nmax}};
    const bool exact = a.mode == "exact";
    auto dist = DistributionSpec::from_key(a.dist);
    if (exact && dist.kind() != DistKind::standard_normal) {
        std::cerr << "exact mode evaluates the Gaussian case; use --mode mc for " << a.dist
                  << "\n";
        return 2;
    }
    if (a.sigma != 1.0) dist = dist.with_scale(dist.scale() * a.sigma / dist.sigma());
    MCConfig cfg;
    cfg.replications = a.reps;
    cfg.seed = c.seed;
    cfg.n_max = a.nmax;
    cfg.threads = c.threads;
    for (const double eps : a.eps) {
        Record r;
        r.push_back({"eps", eps});
        if (exact) {
            const SeriesValue v = first_kind
                                      ? lambda1_gaussian({eps, a.p, a.sigma}, a.tol)
                                      : lambda2_gaussian({eps, a.delta, a.sigma}, a.tol);
            r.push_back({"value", v.value});
            r.push_back({"stderr_or_tailbound", v.tail_bound});
            r.push_back({"mode", std::string("exact")});
            r.push_back({"n_terms", v.n_terms});
            r.push_back({"closure", std::string(to_string(v.closure))});
        } else {
            const SeriesMCEstimate v = first_kind ? lambda1_mc(dist, a.p, eps, cfg)
                                                  : lambda2_mc(dist, a.delta, eps, cfg);
            r.push_back({"value", v.estimate.mean});
            r.push_back({"stderr_or_tailbound", v.estimate.std_error});
            r.push_back({"mode", std::string("mc")});
            r.push_back({"replications", v.estimate.replications});
            r.push_back({"bias_bound", v.truncation_bias_bound});
        }
        rep.records.push_back(std::move(r));
    }
    write_report(rep, c);
    return 0;
}

int run_constants(std::optional<double> theta, std::optional<double> delta, double tol,
                  bool no_extrapolation, const CommonOpts& c) {
    RunReport rep;
    rep.command = "constants";
    rep.seed = c.seed;
    LimitOptions opt;
    opt.allow_extrapolation = !no_extrapolation;
    const SequenceLimitEstimate est = theta ? b_limit(*theta, tol, opt)
                                            : c_limit(*delta, tol, opt);
    rep.params = {{"tol", tol},
                  {theta ? "theta" : "delta", theta ? *theta : *delta},
                  {"extrapolation", !no_extrapolation}};
    Record r;
    r.push_back({"value", est.value});
    r.push_back({"error_bound", est.error_bound});
    r.push_back({"n_used", est.n_used});
    r.push_back({"method", std::string(est.method == SequenceLimitEstimate::Method::direct
                                           ? "direct"
                                           : "rate_extrapolated")});
    rep.records.push_back(std::move(r));
    write_report(rep, c);
    return 0;
}

struct RatesArgs {
    std::string theorem;
    double p = 1.0;
    double delta = 1.0;
    double q = 3.0;
    double grid_start = 0.0;
    double grid_ratio = 0.0;
    int grid_count = 0;
    std::string mode = "exact";
    std::string dist = "normal";
    std::string inject_bias;
    double tol = 1e-9;
    std::int64_t reps = 100'000;
    std::int64_t nmax = 200;
};

int run_rates(const RatesArgs& a, const CommonOpts& c) {
    const bool is_a = a.theorem == "2.2a";
    EpsGrid grid = is_a ? EpsGrid::default_lambda1() : EpsGrid::default_lambda2();
    if (a.mode == "mc" && is_a && a.grid_count == 0) {
        // the sampling floor is eps >= 0.05; stop the default descent there
        grid = EpsGrid::geometric(0.4, 1.0 / kSqrt2, 6);
    }
    if (a.grid_count > 0) {
        grid = EpsGrid::geometric(a.grid_start, a.grid_ratio, a.grid_count);
    }
    Evaluator ev;
    ev.tol = a.tol;
    if (a.mode == "mc") {
        ev.mode = Evaluator::Mode::mc;
        ev.dist = DistributionSpec::from_key(a.dist);
        ev.cfg.replications = a.reps;
        ev.cfg.seed = c.seed;
        ev.cfg.n_max = a.nmax;
        ev.cfg.threads = c.threads;
    }
    if (!a.inject_bias.empty()) ev.inject_bias_exponent = parse_bias(a.inject_bias);

    const TheoremReport trep = is_a ? verify_theorem_2_2a(a.p, a.q, grid, ev)
                                    : verify_theorem_2_2b(a.delta, a.q, grid, ev);
    RunReport rep;
    rep.command = "rates";
    rep.seed = c.seed;
    rep.params = {{"theorem", a.theorem},
                  {is_a ? "p" : "delta", is_a ? a.p : a.delta},
                  {"q", a.q},
                  {"mode", a.mode},
                  {"dist", a.dist},
                  {"tol", a.tol}};
    if (!a.inject_bias.empty()) rep.params.push_back({"inject_bias", a.inject_bias});
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        Record r;
        r.push_back({"eps", grid.points[i]});
        r.push_back({"residual", trep.residuals[i]});
        r.push_back({"scaled", trep.scaled_sequence[i]});
        r.push_back({"fitted_slope", trep.fitted_slope});
        r.push_back({"required_slope", trep.required_slope});
        r.push_back({"intercept", trep.fit.intercept});
        r.push_back({"r_squared", trep.fit.r_squared});
        r.push_back({"points_used", static_cast<std::int64_t>(trep.fit.points_used)});
        r.push_back({"pass", trep.pass});
        rep.records.push_back(std::move(r));
    }
    write_report(rep, c);
    return trep.pass ? 0 : 1;
}

struct RemainderArgs {
    double p = 1.0;
    double q = 3.0;
    std::optional<double> delta;
    std::vector<double> m_list{1.0, 2.0, 4.0, 8.0};
    std::vector<double> eps_list{0.1, 0.05, 0.01};
    double c_abs = 1.0;
    double Lq = 1.0;
    std::string dist;
    std::int64_t nmax = 20;
    std::int64_t reps = 10'000;
};

int run_remainder(const RemainderArgs& a, const CommonOpts& c) {
    RunReport rep;
    rep.command = "remainder";
    rep.seed = c.seed;
    rep.params = {{"p", a.p}, {"q", a.q}, {"C", a.c_abs}, {"Lq", a.Lq}};
    if (a.delta) rep.params.push_back({"delta", *a.delta});
    if (!a.dist.empty()) {
        rep.params.push_back({"dist", a.dist});
        rep.params.push_back({"nmax", a.nmax});
        rep.params.push_back({"reps", a.reps});
    }
    const RateExponents exps = a.delta ? RateExponents{a.p, a.q, 0.0} : gamma_exponent(a.p, a.q);
    for (const double eps : a.eps_list) {
        double direct_value = 0.0;
        double direct_stderr = 0.0;
        if (!a.dist.empty() && !a.delta) {
            MCConfig cfg;
            cfg.replications = a.reps;
            cfg.seed = c.seed;
            cfg.threads = c.threads;
            const auto est = remainder_direct_mc(DistributionSpec::from_key(a.dist), a.p, eps,
                                                 a.nmax, cfg);
            direct_value = est.mean;
            direct_stderr = est.std_error;
        }
        for (const double m : a.m_list) {
            const BoundReport b = a.delta
                                      ? remainder_tail_bound_lambda2(eps, *a.delta, a.q, m, a.Lq,
                                                                     a.c_abs)
                                      : remainder_tail_bound_lambda1(eps, exps, m, a.Lq, a.c_abs);
            Record r;
            r.push_back({"variant", std::string(a.delta ? "lambda2" : "lambda1")});
            r.push_back({"eps", eps});
            r.push_back({"M", m});
            r.push_back({"raw_lower", b.raw_lower});
            r.push_back({"raw_bound", b.raw_bound});
            r.push_back({"scaled_bound", b.scaled_bound});
            r.push_back({"predicted_cap", b.predicted_cap});
            r.push_back({"direct_value", direct_value});
            r.push_back({"direct_stderr", direct_stderr});
            rep.records.push_back(std::move(r));
        }
    }
    write_report(rep, c);
    return 0;
}

int run_verify_all(bool full, const CommonOpts& c) {
    AcceptanceOptions opts;
    opts.quick = !full;
    opts.seed = c.seed;
    opts.threads = c.threads;
    const auto results = run_acceptance(opts);
    RunReport rep;
    rep.command = "verify-all";
    rep.seed = c.seed;
    rep.params = {{"mode", std::string(full ? "full" : "quick")}};
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        Record rec;
        rec.push_back({"criterion", static_cast<std::int64_t>(r.number)});
        rec.push_back({"name", r.name});
        rec.push_back({"pass", r.pass});
        rec.push_back({"detail", r.detail});
        rep.records.push_back(std::move(rec));
    }
    write_report(rep, c);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for weighted tail-sum asymptotics of i.i.d. partial sums"};
    app.require_subcommand(1);
    // flat key=value config, keys prefixed by the subcommand: lambda1.p=1
    app.set_config("--config");

    CommonOpts common;

    LambdaArgs l1;
    auto* cmd_l1 = app.add_subcommand("lambda1", "moment-weighted tail series (exact or MC)");
    cmd_l1->add_option("--eps", l1.eps, "epsilon values")->required()->expected(-1);
    cmd_l1->add_option("--p", l1.p, "moment order in (0, 1.95]")->required();
    cmd_l1->add_option("--sigma", l1.sigma, "per-step scale");
    cmd_l1->add_option("--dist", l1.dist, "catalog key (mc mode)");
    cmd_l1->add_option("--mode", l1.mode)->check(CLI::IsMember({"exact", "mc"}));
    cmd_l1->add_option("--tol", l1.tol, "tail-bound tolerance (exact mode)");
    cmd_l1->add_option("--reps", l1.reps, "replications per term (mc mode)");
    cmd_l1->add_option("--nmax", l1.nmax, "series truncation (mc mode)");
    add_common(cmd_l1, common);

    LambdaArgs l2;
    auto* cmd_l2 = app.add_subcommand("lambda2", "log-weighted second-moment tail series");
    cmd_l2->add_option("--eps", l2.eps)->required()->expected(-1);
    cmd_l2->add_option("--delta", l2.delta, "log exponent in (0, 1]")->required();
    cmd_l2->add_option("--sigma", l2.sigma);
    cmd_l2->add_option("--dist", l2.dist);
    cmd_l2->add_option("--mode", l2.mode)->check(CLI::IsMember({"exact", "mc"}));
    cmd_l2->add_option("--tol", l2.tol);
    cmd_l2->add_option("--reps", l2.reps);
    cmd_l2->add_option("--nmax", l2.nmax);
    add_common(cmd_l2, common);

    std::optional<double> theta, delta_c;
    double ctol = 1e-6;
    bool no_extrap = false;
    auto* cmd_const = app.add_subcommand("constants", "sequence limits with certified bounds");
    auto* theta_opt = cmd_const->add_option("--theta", theta, "power exponent in (-1, 0)");
    cmd_const->add_option("--delta", delta_c, "log exponent in (0, 1]")->excludes(theta_opt);
    cmd_const->add_option("--tol", ctol);
    cmd_const->add_flag("--no-extrapolation", no_extrap, "direct summation only");
    add_common(cmd_const, common);

    RatesArgs ra;
    auto* cmd_rates = app.add_subcommand("rates", "convergence-rate verification");
    cmd_rates->add_option("--theorem", ra.theorem)->required()
        ->check(CLI::IsMember({"2.2a", "2.2b"}));
    cmd_rates->add_option("--p", ra.p);
    cmd_rates->add_option("--delta", ra.delta);
    cmd_rates->add_option("--q", ra.q);
    cmd_rates->add_option("--grid-start", ra.grid_start);
    cmd_rates->add_option("--grid-ratio", ra.grid_ratio);
    cmd_rates->add_option("--grid-count", ra.grid_count);
    cmd_rates->add_option("--mode", ra.mode)->check(CLI::IsMember({"exact", "mc"}));
    cmd_rates->add_option("--dist", ra.dist);
    cmd_rates->add_option("--tol", ra.tol);
    cmd_rates->add_option("--reps", ra.reps);
    cmd_rates->add_option("--nmax", ra.nmax);
    cmd_rates->add_option("--inject-bias", ra.inject_bias,
                          "add eps^e to each residual (negative control)");
    add_common(cmd_rates, common);

    RemainderArgs rm;
    auto* cmd_rem = app.add_subcommand("remainder", "normal-approximation remainder bounds");
    cmd_rem->add_option("--p", rm.p);
    cmd_rem->add_option("--q", rm.q);
    cmd_rem->add_option("--delta", rm.delta, "switch to the log-weighted variant");
    cmd_rem->add_option("--M-list", rm.m_list)->expected(-1);
    cmd_rem->add_option("--eps-list", rm.eps_list)->expected(-1);
    cmd_rem->add_option("--C", rm.c_abs, "absolute constant of the bound");
    cmd_rem->add_option("--Lq", rm.Lq, "q-th absolute moment");
    cmd_rem->add_option("--dist", rm.dist, "adds direct-estimate columns");
    cmd_rem->add_option("--nmax", rm.nmax);
    cmd_rem->add_option("--reps", rm.reps);
    add_common(cmd_rem, common);

    bool full = false, quick = false;
    auto* cmd_verify = app.add_subcommand("verify-all", "run the whole verification suite");
    cmd_verify->add_flag("--full", full, "full sampling budgets");
    cmd_verify->add_flag("--quick", quick, "trimmed budgets (default)");
    add_common(cmd_verify, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_l1->parsed()) return run_lambda(true, l1, common);
        if (cmd_l2->parsed()) return run_lambda(false, l2, common);
        if (cmd_const->parsed()) {
            if (!theta && !delta_c) {
                std::cerr << "constants: provide --theta or --delta\n";
                return 2;
            }
            return run_constants(theta, delta_c, ctol, no_extrap, common);
        }
        if (cmd_rates->parsed()) return run_rates(ra, common);
        if (cmd_rem->parsed()) return run_remainder(rm, common);
        if (cmd_verify->parsed()) return run_verify_all(full && !quick, common);
    } catch (const budget_error& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
