#pragma once

#include <cstdint>

namespace frontlab {

// splitmix64 finalizer (Steele/Lea/Flood).  All randomness in the project is
// counter-based: a value is a pure function of (root seed, key...), so any job
// can be recomputed independently and in any order with identical results.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c) {
  return mix(mix(a, b), c);
}

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c, std::uint64_t d) {
  return mix(mix(mix(a, b), c), d);
}

inline constexpr std::uint64_t signed_key(std::int64_t v) {
  return static_cast<std::uint64_t>(v) * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
}

// Uniform double in [0,1) from the top 53 bits.
inline constexpr double unit_double(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Sequential generator seeded from a mixed key; for bootstrap resampling and
// other places where a stream (rather than a keyed lookup) is natural.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_unit() { return unit_double(next()); }
  // Unbiased enough for resampling purposes.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Job-key registry: every module derives its randomness under a distinct tag
// so that job streams never collide.
namespace seed_tag {
inline constexpr std::uint64_t field_cells = 0x11;
inline constexpr std::uint64_t field_global = 0x12;
inline constexpr std::uint64_t speed_lab = 0x21;
inline constexpr std::uint64_t homogenize = 0x31;
inline constexpr std::uint64_t bootstrap = 0x41;
inline constexpr std::uint64_t tests = 0x51;
}  // namespace seed_tag

}  // namespace frontlab
