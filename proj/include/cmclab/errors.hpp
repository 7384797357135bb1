#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace cmclab {

/// Thrown when a request cannot be served within the configured desk-scale
/// budget. The message is a cost certificate (what was requested, what it
/// would cost); best_value/error_bound carry the best estimate reached so
/// far, or NaN when nothing was computed.
class budget_error : public std::runtime_error {
  public:
    explicit budget_error(const std::string& certificate,
                          double best_value = std::numeric_limits<double>::quiet_NaN(),
                          double error_bound = std::numeric_limits<double>::infinity())
        : std::runtime_error(certificate), best_value_(best_value), error_bound_(error_bound) {}

    double best_value() const noexcept { return best_value_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    double best_value_;
    double error_bound_;
};

/// Thrown when fewer usable data points remain than an algorithm needs.
class insufficient_data_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace cmclab
