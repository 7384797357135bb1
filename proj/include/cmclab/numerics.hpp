#pragma once

#include <cmath>
#include <cstdint>

namespace cmclab {

/// Kahan-Babuska (Neumaier) compensated accumulator. Summation order is the
/// caller's; for a fixed order the result is bit-reproducible.
class CompensatedSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

namespace detail {

template <class F>
double adaptive_simpson_rec(F& f, double a, double m, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth, int force_splits) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || (force_splits <= 0 && std::abs(delta) <= 15.0 * tol)) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                                force_splits - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                                force_splits - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// abs_tol. The first min_splits bisection levels are unconditional, so an
/// integrand whose mass hides between the coarse sample points cannot fake
/// early convergence. Returns 0 when b <= a.
template <class F>
double integrate(F f, double a, double b, double abs_tol, int max_depth = 48,
                 int min_splits = 6) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth,
                                        min_splits);
}

}  // namespace cmclab
