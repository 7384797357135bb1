#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cmclab/rng.hpp"

namespace cmclab {

enum class DistKind { standard_normal, rademacher, uniform_centered, exponential_centered, two_point };

/// A catalog entry for a zero-mean i.i.d. law: a sampler plus exact moment
/// metadata. Catalog members are unit-variance at scale 1; with_scale(s)
/// multiplies the variable by s. Every member has E|X|^q < inf for the
/// stored q in (2, 3] and satisfies the log-moment condition
/// E[X^2 (log+ |X|)^d] < inf for every d in (0, 1].
class DistributionSpec {
  public:
    static DistributionSpec standard_normal();
    static DistributionSpec rademacher();
    /// Uniform on [-sqrt(3), sqrt(3)] (unit variance).
    static DistributionSpec uniform_centered();
    /// Exp(1) - 1 (unit variance).
    static DistributionSpec exponential_centered();
    /// Takes a(1-prob) with probability prob, -a*prob otherwise (zero mean,
    /// variance a^2 prob (1-prob)); a > 0, prob in (0, 1).
    static DistributionSpec two_point(double a, double prob);

    /// Catalog lookup: "normal", "rademacher", "uniform", "exponential",
    /// or "two_point(a,prob)". Throws std::domain_error for unknown keys.
    static DistributionSpec from_key(std::string_view key);

    DistributionSpec with_scale(double s) const;
    DistributionSpec with_moment_order(double q) const;

    DistKind kind() const noexcept { return kind_; }
    double scale() const noexcept { return scale_; }
    double variance() const noexcept;            // sigma^2
    double sigma() const noexcept;
    double moment_order() const noexcept { return q_; }
    double abs_moment_q() const;                 // E|X|^q at the stored q
    bool log_moment_certificate() const noexcept { return true; }
    bool is_lattice() const noexcept {
        return kind_ == DistKind::rademacher || kind_ == DistKind::two_point;
    }
    /// Two-point support parameters; rademacher reports its canonical
    /// two_point(2, 1/2) form.
    double two_point_a() const noexcept { return a_; }
    double two_point_prob() const noexcept { return prob_; }
    std::string key() const;

    /// One variate; consumes exactly one stream position.
    double draw(RngStream& rng) const;

  private:
    DistKind kind_ = DistKind::standard_normal;
    double scale_ = 1.0;
    double q_ = 3.0;
    double a_ = 2.0;      // two_point support parameter
    double prob_ = 0.5;   // two_point success probability
};

/// One draw of S_n = X_1 + ... + X_n; consumes exactly n stream positions.
double sample_partial_sum(const DistributionSpec& dist, std::int64_t n, RngStream& rng);

struct Atom {
    double value;
    double probability;
};

/// Exact law of S_n for lattice members (rademacher / two_point), n <= 30;
/// atoms in ascending value order, probabilities summing to 1 within 1e-12.
std::vector<Atom> exact_sn_distribution(const DistributionSpec& dist, int n);

struct MomentMetadata {
    double sigma2;
    double q;
    double Lq;
};

MomentMetadata moment_metadata(const DistributionSpec& dist);

namespace detail {

/// Lattice pmf of S_n without the public n-cap (log-space binomial weights,
/// usable to n ~ 1000); same atom ordering as exact_sn_distribution.
std::vector<Atom> lattice_pmf(const DistributionSpec& dist, std::int64_t n);

/// P(|S| >= y) from an atom list.
double atoms_two_sided_tail(const std::vector<Atom>& atoms, double y);

/// P(S > y) from an atom list (strict).
double atoms_upper_tail(const std::vector<Atom>& atoms, double y);

}  // namespace detail

}  // namespace cmclab
