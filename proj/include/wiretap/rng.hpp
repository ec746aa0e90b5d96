#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wiretap {

// Counter-based generator: output i of stream (seed, stream) is a pure
// function of (seed, stream, i), so parallel and serial runs that hand one
// substream to each trial produce identical draws in any execution order.
namespace rng_detail {
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace rng_detail

class Substream {
public:
  Substream(std::uint64_t seed, std::uint64_t stream)
      : key_(rng_detail::mix64(seed ^ rng_detail::mix64(stream * rng_detail::kGolden + 1))) {}

  std::uint64_t next_u64() { return rng_detail::mix64(key_ + (++ctr_) * rng_detail::kGolden); }

  /// Uniform double strictly inside (0,1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  /// Uniform integer in [0, n). n must be >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Standard normal via Box-Muller, one cached value.
  double next_gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace wiretap
