#include "cmclab/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using namespace cmclab;

TEST_CASE("normal_tail basic values") {
    CHECK(normal_tail(0.0) == 1.0);
    // complementary-error-function reference oracle (quadrature route)
    CHECK(normal_tail(1.959964) == doctest::Approx(0.05).epsilon(2e-5));
    CHECK(std::abs(normal_tail(1.959964) - oracles::normal_tail_quad(1.959964)) < 1e-12);
    for (double x : {0.1, 0.7, 1.3, 2.5, 4.0, 6.0, 8.0}) {
        CHECK(normal_tail(x) ==
              doctest::Approx(oracles::normal_tail_quad(x)).epsilon(1e-12));
    }
}

TEST_CASE("normal_tail large-x asymptotic") {
    // tail ~ 2 phi(x)/x for large x; at x = 8 the ratio is within 2%
    const double x = 8.0;
    const double ratio = normal_tail(x) * (kSqrt2Pi * x / 2.0) * std::exp(0.5 * x * x);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("normal_tail is strictly decreasing") {
    double prev = normal_tail(0.0);
    for (double x = 0.25; x <= 12.0; x += 0.25) {
        const double v = normal_tail(x);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("normal_tail domain errors") {
    CHECK_THROWS_AS(normal_tail(-0.1), std::domain_error);
    CHECK_THROWS_AS(normal_tail(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(normal_tail(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("normal_abs_moment") {
    CHECK(normal_abs_moment(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(normal_abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(normal_abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-13));
    // quadrature oracle at p = 1: 2 int_0^inf t phi(t) dt
    CHECK(normal_abs_moment(1.0) ==
          doctest::Approx(oracles::truncated_abs_moment_quad(1.0, 0.0)).epsilon(1e-12));
    CHECK(normal_abs_moment(1.0) == doctest::Approx(0.7978845608).epsilon(1e-9));
    CHECK(normal_abs_moment(3.0) == doctest::Approx(1.5957691216).epsilon(1e-9));
    CHECK_THROWS_AS(normal_abs_moment(-0.5), std::domain_error);
}

TEST_CASE("truncated_abs_moment against quadrature oracle") {
    for (double p : {0.0, 0.25, 0.5, 1.0, 1.5, 1.95, 2.0, 3.0}) {
        for (double a : {0.0, 0.3, 1.0, 2.2, 4.5}) {
            CAPTURE(p);
            CAPTURE(a);
            CHECK(truncated_abs_moment(p, a) ==
                  doctest::Approx(oracles::truncated_abs_moment_quad(p, a)).epsilon(5e-11));
        }
    }
}

TEST_CASE("truncated_abs_moment special cases") {
    for (double p : {0.5, 1.0, 2.0}) {
        CHECK(truncated_abs_moment(p, 0.0) == doctest::Approx(normal_abs_moment(p)).epsilon(1e-13));
    }
    for (double a : {0.0, 1.0, 2.0}) {
        CHECK(truncated_abs_moment(0.0, a) == doctest::Approx(normal_tail(a)).epsilon(1e-13));
    }
    // closed form m_2(a) = 2 a phi(a) + P(|N| >= a) at a = 1
    const double closed = 2.0 * normal_pdf(1.0) + normal_tail(1.0);
    CHECK(truncated_abs_moment(2.0, 1.0) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(truncated_abs_moment(2.0, 1.0) == doctest::Approx(0.801252).epsilon(2e-5));
    CHECK_THROWS_AS(truncated_abs_moment(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(truncated_abs_moment(-1.0, 1.0), std::domain_error);
}

TEST_CASE("truncated_abs_moment monotone in a, positive") {
    for (double p : {0.3, 1.0, 1.7}) {
        double prev = truncated_abs_moment(p, 0.0);
        for (double a = 0.2; a <= 6.0; a += 0.2) {
            const double v = truncated_abs_moment(p, a);
            CHECK(v > 0.0);
            CHECK(v <= prev);
            CHECK(v <= normal_abs_moment(p));
            prev = v;
        }
    }
}

TEST_CASE("quadrature fallback path agrees with the gamma route") {
    for (double p : {0.1, 0.9, 1.8}) {
        for (double a : {0.2, 1.1, 3.0}) {
            CHECK(detail::truncated_abs_moment_quad(p, a) ==
                  doctest::Approx(truncated_abs_moment(p, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("decomposition identity m_p(a) = a^p tail(a) + i_p(a)") {
    for (double p : {0.5, 1.0, 1.5}) {
        for (double a : {0.2, 0.8, 1.5, 3.0}) {
            CAPTURE(p);
            CAPTURE(a);
            const double lhs = truncated_abs_moment(p, a);
            const double rhs =
                std::pow(a, p) * normal_tail(a) + oracles::tail_moment_integral_quad(p, a);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            CHECK(tail_moment_integral(p, a) ==
                  doctest::Approx(oracles::tail_moment_integral_quad(p, a)).epsilon(1e-7));
        }
    }
}

TEST_CASE("regularized_gamma_q limits and domain") {
    CHECK(regularized_gamma_q(0.5, 0.0) == 1.0);
    CHECK(regularized_gamma_q(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(regularized_gamma_q(1.0, -1.0), std::domain_error);
}

TEST_CASE("normal_quantile round-trips the tail") {
    for (double u : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.77, 0.999, 1.0 - 1e-9}) {
        const double z = normal_quantile(u);
        CHECK(normal_upper_tail(z) == doctest::Approx(1.0 - u).epsilon(1e-11));
    }
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}
