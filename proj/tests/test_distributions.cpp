#include "cmclab/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "cmclab/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cmclab;

namespace {

struct SampleStats {
    double mean = 0.0;
    double second = 0.0;
    double se_mean = 0.0;
    double se_second = 0.0;
};

SampleStats partial_sum_stats(const DistributionSpec& d, std::int64_t n, std::int64_t reps,
                              std::uint64_t seed) {
    RngStream rng(seed, 1);
    double m = 0.0, m2 = 0.0;     // Welford on S
    double qm = 0.0, qm2 = 0.0;   // Welford on S^2
    for (std::int64_t r = 1; r <= reps; ++r) {
        const double s = sample_partial_sum(d, n, rng);
        double dlt = s - m;
        m += dlt / static_cast<double>(r);
        m2 += dlt * (s - m);
        const double sq = s * s;
        dlt = sq - qm;
        qm += dlt / static_cast<double>(r);
        qm2 += dlt * (sq - qm);
    }
    SampleStats st;
    st.mean = m;
    st.second = qm;
    st.se_mean = std::sqrt(m2 / static_cast<double>(reps - 1) / static_cast<double>(reps));
    st.se_second = std::sqrt(qm2 / static_cast<double>(reps - 1) / static_cast<double>(reps));
    return st;
}

}  // namespace

TEST_CASE("rademacher single draw is a sign") {
    RngStream rng(7, 0);
    const auto d = DistributionSpec::rademacher();
    for (int i = 0; i < 50; ++i) {
        const double v = sample_partial_sum(d, 1, rng);
        CHECK((v == 1.0 || v == -1.0));
    }
}

TEST_CASE("partial-sum variance matches n sigma^2 (CLT oracle)") {
    const auto st = partial_sum_stats(DistributionSpec::standard_normal(), 4, 100'000, 20250807);
    CHECK(std::abs(st.second - 4.0) <= 3.0 * st.se_second);
}

TEST_CASE("exponential_centered partial sums have zero mean") {
    for (const std::int64_t n : {1, 3, 11}) {
        const auto st =
            partial_sum_stats(DistributionSpec::exponential_centered(), n, 100'000, 99);
        CHECK(std::abs(st.mean) <= 3.0 * st.se_mean);
    }
}

TEST_CASE("every catalog member: mean ~ 0 and second moment ~ sigma^2") {
    const DistributionSpec members[] = {
        DistributionSpec::standard_normal(), DistributionSpec::rademacher(),
        DistributionSpec::uniform_centered(), DistributionSpec::exponential_centered(),
        DistributionSpec::two_point(3.0, 0.2)};
    for (const auto& d : members) {
        CAPTURE(d.key());
        const auto st = partial_sum_stats(d, 1, 100'000, 4242);
        CHECK(std::abs(st.mean) <= 3.0 * st.se_mean + 1e-12);
        const double sigma2 = d.variance();
        CHECK(std::abs(st.second - sigma2) <= 3.0 * st.se_second + 1e-12);
    }
}

TEST_CASE("exact_sn_distribution small cases") {
    const auto d = DistributionSpec::rademacher();
    const auto one = exact_sn_distribution(d, 1);
    REQUIRE(one.size() == 2);
    CHECK(one[0].value == -1.0);
    CHECK(one[0].probability == 0.5);
    CHECK(one[1].value == 1.0);
    CHECK(one[1].probability == 0.5);

    const auto two = exact_sn_distribution(d, 2);
    REQUIRE(two.size() == 3);
    CHECK(two[0].value == -2.0);
    CHECK(two[0].probability == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(two[1].value == 0.0);
    CHECK(two[1].probability == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(two[2].value == 2.0);
    CHECK(two[2].probability == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("exact_sn_distribution probabilities sum to one") {
    const auto rade = DistributionSpec::rademacher();
    const auto tp = DistributionSpec::two_point(1.5, 0.3);
    for (int n = 1; n <= 20; ++n) {
        for (const auto* d : {&rade, &tp}) {
            double mass = 0.0;
            double mean = 0.0;
            for (const auto& at : exact_sn_distribution(*d, n)) {
                mass += at.probability;
                mean += at.probability * at.value;
            }
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(mean) < 1e-12);
        }
    }
}

TEST_CASE("exact_sn_distribution contract errors") {
    CHECK_THROWS_AS(exact_sn_distribution(DistributionSpec::standard_normal(), 4),
                    std::domain_error);
    CHECK_THROWS_AS(exact_sn_distribution(DistributionSpec::rademacher(), 31), std::domain_error);
    CHECK_THROWS_AS(exact_sn_distribution(DistributionSpec::rademacher(), 0), std::domain_error);
}

TEST_CASE("exact law matches Monte Carlo frequencies (multinomial bands)") {
    const auto d = DistributionSpec::rademacher();
    const std::int64_t reps = 100'000;
    for (const int n : {3, 10}) {
        const auto atoms = exact_sn_distribution(d, n);
        std::vector<std::int64_t> counts(atoms.size(), 0);
        RngStream rng(31337, 5);
        for (std::int64_t r = 0; r < reps; ++r) {
            const double s = sample_partial_sum(d, n, rng);
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if (std::abs(s - atoms[i].value) < 1e-9) {
                    ++counts[i];
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const double p = atoms[i].probability;
            const double freq = static_cast<double>(counts[i]) / static_cast<double>(reps);
            CHECK(std::abs(freq - p) <=
                  3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(reps)) + 1e-9);
        }
    }
}

TEST_CASE("moment_metadata closed forms") {
    const auto rade = moment_metadata(DistributionSpec::rademacher());
    CHECK(rade.sigma2 == 1.0);
    CHECK(rade.q == 3.0);
    CHECK(rade.Lq == 1.0);

    const auto norm = moment_metadata(DistributionSpec::standard_normal());
    CHECK(norm.Lq == doctest::Approx(1.59577).epsilon(1e-5));
    CHECK(norm.Lq == doctest::Approx(oracles::truncated_abs_moment_quad(3.0, 0.0)).epsilon(1e-10));

    const auto unif = moment_metadata(DistributionSpec::uniform_centered());
    CHECK(unif.sigma2 == doctest::Approx(1.0).epsilon(1e-14));
    // E|X|^3 = (sqrt 3)^3/4 on the unit-variance support [-sqrt3, sqrt3]
    CHECK(unif.Lq == doctest::Approx(std::pow(std::sqrt(3.0), 3.0) / 4.0).epsilon(1e-13));

    // quadrature oracle for the exponential member: E|Y-1|^3, Y ~ Exp(1)
    const double expo_oracle = oracles::integrate(
        [](double y) { return std::pow(std::abs(y - 1.0), 3.0) * std::exp(-y); }, 0.0, 60.0,
        1e-12);
    const auto expo = moment_metadata(DistributionSpec::exponential_centered());
    CHECK(expo.Lq == doctest::Approx(expo_oracle).epsilon(1e-9));

    const auto tp = moment_metadata(DistributionSpec::two_point(3.0, 0.2));
    CHECK(tp.sigma2 == doctest::Approx(9.0 * 0.2 * 0.8).epsilon(1e-14));
}

TEST_CASE("uniform support half-width is sqrt(3)") {
    RngStream rng(1, 2);
    const auto d = DistributionSpec::uniform_centered();
    for (int i = 0; i < 10'000; ++i) {
        CHECK(std::abs(d.draw(rng)) <= std::sqrt(3.0));
    }
}

TEST_CASE("with_scale rescales the metadata consistently") {
    const auto d = DistributionSpec::uniform_centered().with_scale(2.5);
    const auto md = moment_metadata(d);
    CHECK(md.sigma2 == doctest::Approx(6.25).epsilon(1e-13));
    CHECK(md.Lq == doctest::Approx(std::pow(2.5, 3.0) * std::pow(std::sqrt(3.0), 3.0) / 4.0)
                       .epsilon(1e-12));
    CHECK(d.sigma() == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("from_key round trips") {
    for (const char* key : {"normal", "rademacher", "uniform", "exponential"}) {
        CHECK(DistributionSpec::from_key(key).key() == (std::string(key)));
    }
    const auto tp = DistributionSpec::from_key("two_point(2,0.5)");
    CHECK(tp.kind() == DistKind::two_point);
    CHECK(tp.variance() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(DistributionSpec::from_key("cauchy"), std::domain_error);
    CHECK_THROWS_AS(DistributionSpec::from_key("two_point(1)"), std::domain_error);
    CHECK_THROWS_AS(DistributionSpec::from_key("two_point(x,y)"), std::domain_error);
}

TEST_CASE("counter stream: pure function of (seed, stream, counter)") {
    RngStream a(11, 22, 0, 0);
    RngStream b(11, 22, 0, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(11, 23, 0, 0);
    int same = 0;
    RngStream a2(11, 22, 0, 0);
    for (int i = 0; i < 64; ++i) same += (a2.next_u64() == c.next_u64());
    CHECK(same == 0);

    // jump-ahead: positioning the counter reproduces the sequential draw
    RngStream seq(5, 9, 0, 0);
    std::uint64_t v17 = 0;
    for (int i = 0; i <= 17; ++i) v17 = seq.next_u64();
    RngStream jump(5, 9, 0, 17);
    CHECK(jump.next_u64() == v17);
}

TEST_CASE("sample_partial_sum consumes exactly n stream positions") {
    const auto d = DistributionSpec::exponential_centered();
    RngStream rng(77, 3, 0, 0);
    (void)sample_partial_sum(d, 5, rng);
    CHECK(rng.counter_lo() == 5);
    RngStream at5(77, 3, 0, 5);
    CHECK(rng.next_u64() == at5.next_u64());
}

TEST_CASE("uniform01 is in range and roughly uniform") {
    RngStream rng(123, 0);
    double sum = 0.0;
    for (int i = 0; i < 100'000; ++i) {
        const double u = rng.next_uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100'000.0 == doctest::Approx(0.5).epsilon(0.01));
}
