#pragma once

#include <cstdint>

namespace cmclab {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Stafford mix13).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

/// Counter-based splittable random stream. The output at position
/// (seed, stream_id, counter) is a pure function of those values, so any
/// draw can be reproduced in O(1) and shards never overlap: give each worker
/// its own stream_id and position its counter freely. The per-position
/// generator is a SplitMix64 walk keyed by a double-mixed (seed, stream_id,
/// counter_hi) prefix.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter_hi = 0,
              std::uint64_t counter_lo = 0) noexcept
        : seed_(seed), stream_(stream_id), hi_(counter_hi), lo_(counter_lo) {
        rebuild_key();
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }
    std::uint64_t counter_hi() const noexcept { return hi_; }
    std::uint64_t counter_lo() const noexcept { return lo_; }

    void set_counter(std::uint64_t hi, std::uint64_t lo) noexcept {
        if (hi != hi_) {
            hi_ = hi;
            rebuild_key();
        }
        lo_ = lo;
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t v = detail::mix64(key_ + lo_ * detail::kGolden);
        if (++lo_ == 0) {
            ++hi_;
            rebuild_key();
        }
        return v;
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double next_uniform01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1].
    double next_uniform_open0() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform on (0, 1), symmetric about 1/2 (grid midpoints).
    double next_uniform_mid() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    void rebuild_key() noexcept {
        std::uint64_t k = detail::mix64(seed_ + detail::kGolden);
        k = detail::mix64(k ^ stream_);
        key_ = detail::mix64(k ^ hi_);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t hi_;
    std::uint64_t lo_;
    std::uint64_t key_;
};

}  // namespace cmclab
