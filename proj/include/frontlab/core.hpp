#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace frontlab {

// Error taxonomy.  Everything user-facing throws one of these; the CLI maps
// them to exit codes with the job identity attached.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <int D>
using Vec = std::array<double, D>;

template <int D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (int i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <int D>
inline double norm(const Vec<D>& a) {
  return std::sqrt(dot<D>(a, a));
}

template <int D>
inline Vec<D> normalized(Vec<D> a) {
  const double n = norm<D>(a);
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero vector");
  for (int i = 0; i < D; ++i) a[i] /= n;
  return a;
}

template <int D>
inline Vec<D> axpy(double a, const Vec<D>& x, const Vec<D>& y) {
  Vec<D> r{};
  for (int i = 0; i < D; ++i) r[i] = a * x[i] + y[i];
  return r;
}

template <int D>
inline Vec<D> sub(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> r{};
  for (int i = 0; i < D; ++i) r[i] = a[i] - b[i];
  return r;
}

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Cubic smoothstep: 0 on (-inf,0], 1 on [1,inf), C^1 across the joints.
// Used both as the reaction ignition ramp and for initial-data tapers.
inline double smoothstep(double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return z * z * (3.0 - 2.0 * z);
}

// max |d/dz smoothstep| = 3/2 at z = 1/2; part of the Lipschitz certificates.
inline constexpr double kSmoothstepMaxSlope = 1.5;

// Axis-aligned box, the sampling domain of a field realization.
template <int D>
struct Box {
  Vec<D> lo{};
  Vec<D> hi{};

  bool empty() const {
    for (int i = 0; i < D; ++i)
      if (!(lo[i] < hi[i])) return true;
    return false;
  }
  bool contains(const Vec<D>& x) const {
    for (int i = 0; i < D; ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
};

}  // namespace frontlab
