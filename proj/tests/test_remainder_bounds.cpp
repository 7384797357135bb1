#include "cmclab/remainder_bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "cmclab/rng.hpp"
#include "cmclab/special_functions.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cmclab;

TEST_CASE("gamma exponent: value and identities") {
    const auto e = gamma_exponent(1.0, 3.0);
    CHECK(e.gamma == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    RngStream rng(99, 0);
    for (int i = 0; i < 100; ++i) {
        const double p = 0.01 + 1.98 * rng.next_uniform01();
        const double q = 2.0 + rng.next_uniform_open0();
        const auto ex = gamma_exponent(p, q);
        CHECK(ex.gamma > 0.0);
        CHECK(ex.gamma < 1.0);
        CHECK(ex.gamma * (2.0 * q - 2.0 - p) == doctest::Approx(q - p).epsilon(1e-13));
        const double lhs = ex.gamma * (2.0 - p) + p + q - 4.0;
        const double rhs = 2.0 * (q - 2.0) * (q - 2.0) / (2.0 * q - 2.0 - p);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(rhs > 0.0);
    }
    CHECK_THROWS_AS(gamma_exponent(0.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(gamma_exponent(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(gamma_exponent(1.0, 3.5), std::domain_error);
}

TEST_CASE("h1 threshold") {
    const auto e = gamma_exponent(1.0, 3.0);
    CHECK(h1(0.1, 1.0, e) == doctest::Approx(std::pow(10.0, 4.0 / 3.0)).epsilon(1e-12));
    CHECK(h1(0.05, 1.0, e) > h1(0.1, 1.0, e));
    CHECK(h1(0.1, 2.0, e) / h1(0.1, 1.0, e) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(h1(1.5, 1.0, e), std::domain_error);
    CHECK_THROWS_AS(h1(0.1, 0.5, e), std::domain_error);
}

TEST_CASE("h2 threshold") {
    const double v = h2(0.1, 1.0, 1.0, 3.0);
    CHECK(v == doctest::Approx(100.0 / std::pow(std::log(10.0), 2.0)).epsilon(1e-12));
    double prev = 0.0;
    for (const double eps : {0.3, 0.1, 0.03, 0.01}) {
        const double cur = h2(eps, 1.0, 1.0, 3.0);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK(h2(0.1, 3.0, 1.0, 3.0) == doctest::Approx(3.0 * v).epsilon(1e-13));
    CHECK_THROWS_AS(h2(0.5, 1.0, 1.0, 3.0), std::domain_error);  // >= 1/e
}

TEST_CASE("bikjalis bound: basic scaling") {
    CHECK(bikjalis_bound(1, 1e-12, 3.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    const double b1 = bikjalis_bound(4, 1.0, 3.0, 1.0, 1.0);
    const double b2 = bikjalis_bound(16, 1.0, 3.0, 1.0, 1.0);
    CHECK(b1 / b2 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(bikjalis_bound(0, 1.0, 3.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bikjalis_bound(1, 0.0, 3.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("bikjalis dominates enumerated rademacher discrepancies with one constant") {
    const auto d = DistributionSpec::rademacher();
    double cstar = 0.0;
    for (int n = 1; n <= 12; ++n) {
        const auto atoms = exact_sn_distribution(d, n);
        const double sqn = std::sqrt(static_cast<double>(n));
        for (int i = 1; i <= 100; ++i) {
            const double x = 0.05 * i;
            const double disc =
                std::abs(detail::atoms_upper_tail(atoms, sqn * x) - normal_upper_tail(x));
            cstar = std::max(cstar, disc / bikjalis_bound(n, x, 3.0, 1.0, 1.0));
        }
    }
    CHECK(cstar > 0.0);
    CHECK(cstar <= 10.0);  // O(1)
    for (int n = 1; n <= 12; ++n) {
        const auto atoms = exact_sn_distribution(d, n);
        const double sqn = std::sqrt(static_cast<double>(n));
        for (int i = 1; i <= 100; ++i) {
            const double x = 0.05 * i;
            const double disc =
                std::abs(detail::atoms_upper_tail(atoms, sqn * x) - normal_upper_tail(x));
            CHECK(disc <= bikjalis_bound(n, x, 3.0, 1.0, cstar) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("lambda1 remainder tail bound: eps cancellation and M decay") {
    const auto e = gamma_exponent(1.0, 3.0);
    double first = 0.0;
    for (const double eps : {0.1, 0.05, 0.01}) {
        const auto r = remainder_tail_bound_lambda1(eps, e, 1.0, 1.0, 1.0);
        CHECK(r.raw_lower <= r.raw_bound);
        CHECK(r.scaled_bound > 0.0);
        if (first == 0.0) {
            first = r.scaled_bound;
        } else {
            CHECK(std::abs(r.scaled_bound / first - 1.0) <= 0.10);
        }
    }
    double prev = 0.0;
    for (const double m : {1.0, 2.0, 4.0, 8.0}) {
        const auto r = remainder_tail_bound_lambda1(0.05, e, m, 1.0, 1.0);
        CHECK(r.scaled_bound <= r.predicted_cap * 1.10);
        if (prev > 0.0) CHECK(std::abs(r.scaled_bound / prev - 0.5) <= 0.05);
        prev = r.scaled_bound;
    }
    const auto c1 = remainder_tail_bound_lambda1(0.05, e, 1.0, 1.0, 1.0).predicted_cap;
    const auto c2 = remainder_tail_bound_lambda1(0.05, e, 2.0, 1.0, 1.0).predicted_cap;
    CHECK(c1 / c2 == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("lambda2 remainder tail bound: cap and M decay") {
    double prev = 0.0;
    for (const double m : {1.0, 2.0, 4.0, 8.0}) {
        const auto r = remainder_tail_bound_lambda2(0.01, 1.0, 3.0, m, 1.0, 1.0);
        CHECK(r.scaled_bound <= r.predicted_cap * 1.10);
        CHECK(r.raw_lower <= r.raw_bound);
        if (prev > 0.0) {
            CHECK(std::abs(r.scaled_bound / prev - std::pow(2.0, -0.5)) <= 0.10 * std::pow(2.0, -0.5));
        }
        prev = r.scaled_bound;
    }
    // delta - q/2 < 0 throughout the admissible domain
    for (const double delta : {0.1, 0.5, 1.0}) {
        for (const double q : {2.1, 2.7, 3.0}) {
            CHECK(delta - 0.5 * q < 0.0);
            const auto r = remainder_tail_bound_lambda2(0.05, delta, q, 1.0, 1.0, 1.0);
            CHECK(r.scaled_bound > 0.0);
            CHECK(std::isfinite(r.scaled_bound));
        }
    }
}

TEST_CASE("remainder_direct_mc: identically zero for the normal law") {
    MCConfig cfg;
    cfg.replications = 4'000;
    cfg.seed = 20250801;
    cfg.threads = 2;
    const auto est = remainder_direct_mc(DistributionSpec::standard_normal(), 1.0, 0.5, 10, cfg);
    CHECK(est.mean >= 0.0);
    // noise floor: sum_n n^{-p} int sqrt(G(1-G)/R) p x^{p-1} dx with G the
    // Gaussian tail itself
    double floor = 0.0;
    for (int n = 1; n <= 10; ++n) {
        const double sqn = std::sqrt(static_cast<double>(n));
        floor += std::pow(static_cast<double>(n), -1.0) *
                 oracles::integrate(
                     [&](double x) {
                         const double g = oracles::normal_tail_quad(x / sqn);
                         return std::sqrt(std::max(g * (1.0 - g), 0.0) / 4000.0);
                     },
                     0.5 * n, 0.5 * n + 8.0 * sqn, 1e-9);
    }
    CHECK(est.mean <= 3.0 * floor);
}

TEST_CASE("remainder_direct_mc: exact positive value for rademacher") {
    MCConfig cfg;
    cfg.seed = 1;
    const auto est = remainder_direct_mc(DistributionSpec::rademacher(), 1.0, 0.5, 20, cfg);
    CHECK(est.std_error == 0.0);
    CHECK(est.replications == 0);
    CHECK(est.mean > 0.0);

    // dyadic blocks of per-n contributions decrease
    const auto upto = [&](std::int64_t n_max) {
        return remainder_direct_mc(DistributionSpec::rademacher(), 1.0, 0.5, n_max, cfg).mean;
    };
    const double b1 = upto(4);
    const double b2 = upto(8) - upto(4);
    const double b3 = upto(16) - upto(8);
    CHECK(b1 > b2);
    CHECK(b2 > b3);

    // dominated by the integrated Bikjalis form with the fitted constant
    const auto d = DistributionSpec::rademacher();
    double cstar = 0.0;
    for (int n = 1; n <= 20; ++n) {
        const auto atoms = exact_sn_distribution(d, n);
        const double sqn = std::sqrt(static_cast<double>(n));
        for (int i = 1; i <= 100; ++i) {
            const double x = 0.05 * i;
            const double disc =
                std::abs(detail::atoms_upper_tail(atoms, sqn * x) - normal_upper_tail(x));
            cstar = std::max(cstar, disc / bikjalis_bound(n, x, 3.0, 1.0, 1.0));
        }
    }
    // per-n integrated bound: C* Lq (p/(q-p)) eps^{p-q} n^{1-q}, p=1, q=3
    double bound_sum = 0.0;
    for (int n = 1; n <= 20; ++n) {
        bound_sum += cstar * 0.5 * std::pow(0.5, -2.0) * std::pow(static_cast<double>(n), -2.0);
    }
    CHECK(est.mean <= bound_sum);
}

TEST_CASE("remainder_direct_mc domain checks") {
    MCConfig cfg;
    CHECK_THROWS_AS(remainder_direct_mc(DistributionSpec::rademacher(), 1.0, 0.5, 300, cfg),
                    std::domain_error);
    CHECK_THROWS_AS(remainder_direct_mc(DistributionSpec::rademacher(), 2.5, 0.5, 10, cfg),
                    std::domain_error);
}
