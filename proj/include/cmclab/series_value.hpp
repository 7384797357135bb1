#pragma once

#include <cstdint>
#include <string_view>

namespace cmclab {

enum class Closure { none, geometric_bound, integral_closure };

constexpr std::string_view to_string(Closure c) {
    switch (c) {
        case Closure::none: return "none";
        case Closure::geometric_bound: return "geometric_bound";
        case Closure::integral_closure: return "integral_closure";
    }
    return "?";
}

/// Result of an infinite-series evaluation. `value` is the partial sum plus
/// any closure term; the true series lies within value +/- tail_bound.
struct SeriesValue {
    double value = 0.0;
    std::int64_t n_terms = 0;
    double tail_bound = 0.0;
    Closure closure = Closure::none;
};

}  // namespace cmclab
