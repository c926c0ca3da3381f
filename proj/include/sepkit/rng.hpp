#pragma once

#include <cmath>
#include <cstdint>

namespace sepkit {

// Seed for every stochastic operation. Identical seed + parameters give a
// bit-identical sample sequence on every platform and thread count.
struct Seed {
  std::uint64_t value = 0;
};

namespace detail {

// SplitMix64 finalizer (Steele, Lea, Flood 2014 / Vigna). Bijective on u64.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;  // per-draw stride
constexpr std::uint64_t kStream = 0xD1B54A32D192ED03ULL;  // per-stream stride

}  // namespace detail

// Counter-based SplitMix64 stream. The state is a pure function of
// (seed, stream index) and each draw advances the counter by a fixed odd
// stride, so workers given disjoint stream indices produce disjoint,
// reproducible sequences from one seed. Gaussians use Box-Muller on two
// consecutive uniforms (documented in the README for reproducibility).
class Rng {
 public:
  explicit Rng(Seed seed, std::uint64_t stream = 0)
      : state_(detail::mix64(seed.value ^ detail::kGolden) + stream * detail::kStream) {}

  std::uint64_t next_u64() {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  // Uniform on (0,1]: never returns 0, safe under log().
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0,1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double next_gaussian() {
    double u1 = next_unit_open();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace sepkit
