#pragma once

#include <cstdint>
#include <cmath>
#include <cstddef>

// Deterministic random number generation. The exact algorithms are part of
// the file-format contract: any implementation that follows the recipe below
// reproduces the same matrices and experiment streams bit for bit (up to the
// platform's libm for sqrt/log/cos/sin).
//
//   state seeding   state = splitmix64_mix(seed + 0x9E3779B97F4A7C15);
//                   if state == 0, state = 0x9E3779B97F4A7C15
//   generator       xorshift64*: x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
//                   output x * 0x2545F4914F6CDD1D
//   uniform [0,1)   (output >> 11) * 2^-53
//   uniform (0,1]   ((output >> 11) + 1) * 2^-53
//   gaussian        Box-Muller: r = sqrt(-2 ln u1), u1 in (0,1];
//                   theta = 2*pi*u2, u2 in [0,1);
//                   emits r*cos(theta) first, r*sin(theta) second
//   seed mixing     combine(a, b) = splitmix64_mix(a + 0x9E3779B97F4A7C15*(b+1))
//                   with wrap-around uint64 arithmetic

namespace pursuit::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer (Steele, Lea & Flood).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Derives independent substream seeds, e.g. per (sparsity, trial) cell.
inline constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a + kGolden * (b + 1));
}

// Marsaglia/Vigna xorshift64* with a splitmix-mixed seed.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) : state_(mix64(seed + kGolden)) {
    if (state_ == 0) state_ = kGolden;
  }

  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1Dull;
  }

  // Uniform on [0, 1), 53 bits of precision.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe to feed into log.
  double next_open_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; pairs are consumed in cos/sin order.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_open_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform index in [0, n). n must be positive.
  std::size_t next_below(std::size_t n) {
    return static_cast<std::size_t>(next_unit() * static_cast<double>(n));
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pursuit::rng
