#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/rng.hpp"

namespace frontlab {

// ---------------------------------------------------------------------------
// Direction grids on the unit sphere.

template <int D>
std::vector<Vec<D>> direction_grid(int resolution);

template <>
inline std::vector<Vec<1>> direction_grid<1>(int) {
  return {Vec<1>{1.0}, Vec<1>{-1.0}};
}

template <>
inline std::vector<Vec<2>> direction_grid<2>(int resolution) {
  if (resolution < 8) throw ConfigError("direction grid needs at least 8 angles");
  std::vector<Vec<2>> dirs(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double phi = 2.0 * M_PI * static_cast<double>(i) / resolution;
    dirs[static_cast<std::size_t>(i)] = {std::cos(phi), std::sin(phi)};
  }
  return dirs;
}

// Icosphere vertices: `resolution` is the subdivision level (0 -> 12 vertices,
// each level quadruples the faces).
template <>
inline std::vector<Vec<3>> direction_grid<3>(int resolution) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec<3>> v = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                           {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                           {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& x : v) x = normalized<3>(x);
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},
      {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
      {3, 2, 6},  {3, 6, 8},  {3, 8, 9},   {4, 9, 5},  {2, 4, 11},  {6, 2, 10},
      {8, 6, 7},  {9, 8, 1}};
  for (int level = 0; level < resolution; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec<3> m{};
      for (int k = 0; k < 3; ++k) m[k] = 0.5 * (v[a][k] + v[b][k]);
      v.push_back(normalized<3>(m));
      const int idx = static_cast<int>(v.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> nf;
    nf.reserve(f.size() * 4);
    for (const auto& tri : f) {
      const int a = mid(tri[0], tri[1]), b = mid(tri[1], tri[2]), c = mid(tri[2], tri[0]);
      nf.push_back({tri[0], a, c});
      nf.push_back({tri[1], b, a});
      nf.push_back({tri[2], c, b});
      nf.push_back({a, b, c});
    }
    f = std::move(nf);
  }
  return v;
}

// Largest gap between a direction and its nearest grid neighbor; geometric
// tolerances are expressed through it.
template <int D>
double angular_resolution(const std::vector<Vec<D>>& dirs) {
  if (D == 1) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      if (i == j) continue;
      best = std::min(best, std::acos(std::clamp(dot<D>(dirs[i], dirs[j]), -1.0, 1.0)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Convex bodies as support-function samples over a direction grid.
// Membership is the intersection of the sampled half-spaces {x . e_i < h_i},
// which is convex by construction.

template <int D>
class ConvexBody {
 public:
  ConvexBody() = default;
  ConvexBody(std::vector<Vec<D>> dirs, std::vector<double> support)
      : dirs_(std::move(dirs)), h_(std::move(support)) {
    if (dirs_.size() != h_.size()) throw DomainError("support values do not match directions");
  }

  static ConvexBody empty_body(std::vector<Vec<D>> dirs) {
    ConvexBody b;
    b.dirs_ = std::move(dirs);
    b.h_.assign(b.dirs_.size(), 0.0);
    b.empty_ = true;
    return b;
  }

  static ConvexBody ball(const Vec<D>& center, double radius, std::vector<Vec<D>> dirs) {
    std::vector<double> h(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) h[i] = dot<D>(center, dirs[i]) + radius;
    return ConvexBody(std::move(dirs), std::move(h));
  }

  static ConvexBody box(const Vec<D>& lo, const Vec<D>& hi, std::vector<Vec<D>> dirs) {
    std::vector<double> h(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      double s = 0.0;
      for (int a = 0; a < D; ++a) s += dirs[i][a] > 0.0 ? dirs[i][a] * hi[a] : dirs[i][a] * lo[a];
      h[i] = s;
    }
    return ConvexBody(std::move(dirs), std::move(h));
  }

  static ConvexBody from_points(const std::vector<Vec<D>>& pts, std::vector<Vec<D>> dirs) {
    if (pts.empty()) return empty_body(std::move(dirs));
    std::vector<double> h(dirs.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (const auto& p : pts) h[i] = std::max(h[i], dot<D>(p, dirs[i]));
    return ConvexBody(std::move(dirs), std::move(h));
  }

  bool empty() const { return empty_; }
  const std::vector<Vec<D>>& dirs() const { return dirs_; }
  const std::vector<double>& support() const { return h_; }
  std::vector<double>& support_mutable() { return h_; }

  // max_i (x . e_i - h_i): negative strictly inside, positive outside; for
  // outside points it is also the sharpest sampled lower bound on the distance
  // to the body.
  double membership_margin(const Vec<D>& x) const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dirs_.size(); ++i)
      m = std::max(m, dot<D>(x, dirs_[i]) - h_[i]);
    return m;
  }
  bool contains(const Vec<D>& x) const { return !empty_ && membership_margin(x) < 0.0; }

  // min_i (h_i - x . e_i): for interior points this is the exact distance to
  // the boundary of the sampled intersection.
  double inner_distance(const Vec<D>& x) const { return -membership_margin(x); }

  double diameter_estimate() const {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double v : h_) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::max(hi + hi, hi - lo);
  }

 private:
  std::vector<Vec<D>> dirs_;
  std::vector<double> h_;
  bool empty_ = false;
};

// Direction-dependent speed on the same grid as the bodies it evolves.
template <int D>
class SpeedFunction {
 public:
  SpeedFunction() = default;
  SpeedFunction(std::vector<Vec<D>> dirs, std::vector<double> values)
      : dirs_(std::move(dirs)), c_(std::move(values)) {
    if (dirs_.size() != c_.size()) throw DomainError("speed values do not match directions");
    for (double v : c_)
      if (!(v > 0.0)) throw DomainError("speed function must be strictly positive");
  }
  static SpeedFunction constant(double c, std::vector<Vec<D>> dirs) {
    std::vector<double> v(dirs.size(), c);
    return SpeedFunction(std::move(dirs), std::move(v));
  }

  const std::vector<Vec<D>>& dirs() const { return dirs_; }
  const std::vector<double>& values() const { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double min_value() const { return *std::min_element(c_.begin(), c_.end()); }
  double max_value() const { return *std::max_element(c_.begin(), c_.end()); }

 private:
  std::vector<Vec<D>> dirs_;
  std::vector<double> c_;
};

// ---------------------------------------------------------------------------
// Basic operations.

template <int D>
void require_same_grid(const ConvexBody<D>& a, const ConvexBody<D>& b) {
  if (a.dirs().size() != b.dirs().size())
    throw DomainError("bodies live on different direction grids");
}

// Support-space evolution of the homogenized limit set: h <- h + c t per
// direction; the half-space intersection over the grid realizes the set.
template <int D>
ConvexBody<D> theta_set(const ConvexBody<D>& a, const SpeedFunction<D>& c, double t) {
  if (t < 0.0) throw DomainError("theta_set needs t >= 0");
  if (a.empty()) throw DomainError("theta_set needs a nonempty body");
  if (a.dirs().size() != c.dirs().size())
    throw DomainError("speed function lives on a different grid");
  std::vector<double> h = a.support();
  for (std::size_t i = 0; i < h.size(); ++i) h[i] += c[i] * t;
  return ConvexBody<D>(a.dirs(), std::move(h));
}

template <int D>
ConvexBody<D> dilate(const ConvexBody<D>& a, double r) {
  if (r < 0.0) throw DomainError("dilate needs r >= 0");
  if (a.empty()) return a;
  std::vector<double> h = a.support();
  for (double& v : h) v += r;
  return ConvexBody<D>(a.dirs(), std::move(h));
}

// Chebyshev center estimate: maximizes the concave gap min_i (h_i - x . e_i)
// by subgradient ascent followed by coordinate-wise ternary polish.
template <int D>
struct CenterResult {
  Vec<D> center{};
  double inradius = 0.0;
};

template <int D>
CenterResult<D> chebyshev_center(const ConvexBody<D>& a) {
  if (a.empty()) throw DomainError("chebyshev center of an empty body");
  const auto& dirs = a.dirs();
  const auto& h = a.support();
  auto gap = [&](const Vec<D>& x) {
    double m = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const double g = h[i] - dot<D>(x, dirs[i]);
      if (g < m) {
        m = g;
        arg = i;
      }
    }
    return std::pair<double, std::size_t>(m, arg);
  };

  double scale = 1.0;
  for (double v : h) scale = std::max(scale, std::abs(v));
  Vec<D> x{};
  for (int k = 0; k < 600; ++k) {
    const auto [g, arg] = gap(x);
    const double step = scale / static_cast<double>(k + 4);
    for (int a2 = 0; a2 < D; ++a2) x[a2] -= step * dirs[arg][a2];
  }
  for (int sweep = 0; sweep < 4; ++sweep) {
    for (int axis = 0; axis < D; ++axis) {
      double lo = x[axis] - scale, hi = x[axis] + scale;
      for (int it = 0; it < 90; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        Vec<D> x1 = x, x2 = x;
        x1[axis] = m1;
        x2[axis] = m2;
        if (gap(x1).first < gap(x2).first)
          lo = m1;
        else
          hi = m2;
      }
      x[axis] = 0.5 * (lo + hi);
    }
  }
  return {x, gap(x).first};
}

// Inward offset in support space.  Emptiness is certified by the feasibility
// probe at the Chebyshev-center candidate of the offset body.
template <int D>
ConvexBody<D> erode(const ConvexBody<D>& a, double r) {
  if (r < 0.0) throw DomainError("erode needs r >= 0");
  if (a.empty()) return a;
  std::vector<double> h = a.support();
  for (double& v : h) v -= r;
  ConvexBody<D> out(a.dirs(), std::move(h));
  const auto c = chebyshev_center(out);
  if (!(c.inradius > 0.0)) return ConvexBody<D>::empty_body(a.dirs());
  return out;
}

// Boundary point along `dir` from an interior point.
template <int D>
Vec<D> ray_boundary(const ConvexBody<D>& a, const Vec<D>& inside, const Vec<D>& dir) {
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.dirs().size(); ++i) {
    const double den = dot<D>(a.dirs()[i], dir);
    if (den <= 1e-14) continue;
    t = std::min(t, (a.support()[i] - dot<D>(inside, a.dirs()[i])) / den);
  }
  if (!std::isfinite(t)) throw DomainError("unbounded ray inside a sampled body");
  return axpy<D>(t, dir, inside);
}

// One boundary sample per grid direction (ray cast from the Chebyshev center).
template <int D>
std::vector<Vec<D>> boundary_samples(const ConvexBody<D>& a) {
  const auto c = chebyshev_center(a);
  std::vector<Vec<D>> out;
  out.reserve(a.dirs().size());
  for (const auto& d : a.dirs()) out.push_back(ray_boundary<D>(a, c.center, d));
  return out;
}

// Hausdorff distance via boundary samples against the half-space gap of the
// other body; exact for convex bodies up to the direction-grid resolution.
template <int D>
double hausdorff(const ConvexBody<D>& a, const ConvexBody<D>& b) {
  if (a.empty() || b.empty()) throw DomainError("hausdorff needs nonempty bodies");
  require_same_grid(a, b);
  double worst = 0.0;
  for (const auto& p : boundary_samples(a)) worst = std::max(worst, b.membership_margin(p));
  for (const auto& p : boundary_samples(b)) worst = std::max(worst, a.membership_margin(p));
  return std::max(worst, 0.0);
}

// Max support gap: equals the Hausdorff distance when both supports are tight;
// used as the cheap comparison in property checks.
template <int D>
double support_gap(const ConvexBody<D>& a, const ConvexBody<D>& b) {
  require_same_grid(a, b);
  double g = 0.0;
  for (std::size_t i = 0; i < a.support().size(); ++i)
    g = std::max(g, std::abs(a.support()[i] - b.support()[i]));
  return g;
}

// x in erode(A,r)  <=>  B_r(x) subset A, on the sampled grid.
template <int D>
bool support_subset(const ConvexBody<D>& inner, const ConvexBody<D>& outer, double tol = 0.0) {
  if (inner.empty()) return true;
  if (outer.empty()) return false;
  require_same_grid(inner, outer);
  for (std::size_t i = 0; i < inner.support().size(); ++i)
    if (inner.support()[i] > outer.support()[i] + tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Interior ball condition.

template <int D>
struct InteriorBallResult {
  bool pass = true;
  double worst_violation = -std::numeric_limits<double>::infinity();
  Vec<D> worst_point{};
};

template <int D>
InteriorBallResult<D> interior_ball_check(const ConvexBody<D>& a, double r, double tol = 0.0) {
  if (a.empty() || !(r > 0.0)) throw DomainError("interior ball check needs a nonempty body and r > 0");
  InteriorBallResult<D> res;
  const auto& dirs = a.dirs();
  // Support points per direction (where the outward normal is e), from the
  // ray-cast boundary cloud.
  const std::vector<Vec<D>> cloud = boundary_samples(a);
  std::size_t stride = 1;
  if (dirs.size() > 256) stride = dirs.size() / 256;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    Vec<D> x_e{};
    for (const auto& p : cloud) {
      const double v = dot<D>(p, dirs[i]);
      if (v > best) {
        best = v;
        x_e = p;
      }
    }
    const Vec<D> center = axpy<D>(-r, dirs[i], x_e);
    for (std::size_t k = 0; k < dirs.size(); k += stride) {
      const Vec<D> p = axpy<D>(r, dirs[k], center);
      const double viol = a.membership_margin(p);
      if (viol > res.worst_violation) {
        res.worst_violation = viol;
        res.worst_point = p;
      }
    }
  }
  res.pass = res.worst_violation <= tol;
  return res;
}

// ---------------------------------------------------------------------------
// Regularization: inner parabolic shrink + r-dilation, contact points, and
// the reduced speed read off the contact displacement.

template <int D>
struct ShrunkBody {
  ConvexBody<D> dilated;          // B_r(A_1)
  std::vector<Vec<D>> contacts;   // per grid direction, on the boundary of B_r(A_1)
};

namespace detail {

// A_1 = {x : sdist_A(x) + delta |x-x0|^2 < 0}, sampled along rays from x0;
// returns B_r(A_1) plus its support points per grid direction.
template <int D>
ShrunkBody<D> parabolic_shrink_dilate(const ConvexBody<D>& a, double r, std::uint64_t salt) {
  const auto cheb = chebyshev_center(a);
  if (!(cheb.inradius > 0.0)) throw ConstructionError("degenerate body in regularization");
  const auto& dirs = a.dirs();

  // Dense ray directions: a 4x refinement of the grid (uniform in the plane,
  // seeded jitters around the grid on the sphere).
  std::vector<Vec<D>> rays;
  if constexpr (D == 2) {
    rays = direction_grid<2>(4 * static_cast<int>(dirs.size()));
  } else {
    rays = dirs;
    if (D > 1) {
      rays.reserve(dirs.size() * 4);
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (int j = 1; j <= 3; ++j) {
          Vec<D> v = dirs[i];
          for (int a2 = 0; a2 < D; ++a2) {
            const double jitter =
                unit_double(mix(salt, i, static_cast<std::uint64_t>(j), a2)) - 0.5;
            v[a2] += 0.35 * jitter;
          }
          rays.push_back(normalized<D>(v));
        }
      }
    }
  }

  double maxd2 = 0.0;
  for (const auto& d : rays) {
    const Vec<D> p = ray_boundary<D>(a, cheb.center, d);
    const Vec<D> q = sub<D>(p, cheb.center);
    maxd2 = std::max(maxd2, dot<D>(q, q));
  }
  const double delta = 0.5 * r / std::max(maxd2, 1e-300);

  std::vector<Vec<D>> cloud;
  cloud.reserve(rays.size());
  for (const auto& d : rays) {
    // psi(t) = -inner_distance + delta t^2 along the ray; one sign change.
    double lo = 0.0;
    double hi = norm<D>(sub<D>(ray_boundary<D>(a, cheb.center, d), cheb.center));
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Vec<D> p = axpy<D>(mid, d, cheb.center);
      const double psi = -a.inner_distance(p) + delta * mid * mid;
      (psi < 0.0 ? lo : hi) = mid;
    }
    cloud.push_back(axpy<D>(0.5 * (lo + hi), d, cheb.center));
  }

  ShrunkBody<D> out;
  std::vector<double> h(dirs.size());
  out.contacts.resize(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : cloud) {
      const double v = dot<D>(p, dirs[i]);
      if (v > best) {
        best = v;
        out.contacts[i] = p;
      }
    }
    h[i] = best + r;
    out.contacts[i] = axpy<D>(r, dirs[i], out.contacts[i]);
  }
  out.dilated = ConvexBody<D>(dirs, std::move(h));
  return out;
}

}  // namespace detail

template <int D>
struct Regularized {
  ConvexBody<D> a_prime;
  SpeedFunction<D> c_prime;
  std::vector<Vec<D>> contact_start;  // x_e(0)
  std::vector<Vec<D>> contact_end;    // x_e(T)
  double r = 0.0;
  double horizon = 0.0;

  // Contact path x_e(t): linear interpolation between the two contact sets.
  Vec<D> contact(std::size_t i, double t) const {
    const double s = t / horizon;
    Vec<D> p{};
    for (int a = 0; a < D; ++a)
      p[a] = (1.0 - s) * contact_start[i][a] + s * contact_end[i][a];
    return p;
  }
};

template <int D>
Regularized<D> regularize(const ConvexBody<D>& a, const SpeedFunction<D>& c, double r,
                          double horizon, double tol = -1.0) {
  if (a.empty()) throw DomainError("regularize needs a nonempty body");
  if (a.dirs().size() != c.dirs().size())
    throw DomainError("speed function lives on a different grid");
  const double c_lo = c.min_value(), c_hi = c.max_value();
  if (!(horizon >= 2.0 * r / c_lo))
    throw ConfigError("regularize requires T >= 2r / min c");
  if (tol < 0.0)
    tol = 2.0 * angular_resolution<D>(a.dirs()) * std::max(1.0, a.diameter_estimate());

  const ShrunkBody<D> start = detail::parabolic_shrink_dilate<D>(a, r, 0xA5);
  const ConvexBody<D> theta_T = theta_set(a, c, horizon);
  const ConvexBody<D> eroded = erode(theta_T, r);
  if (eroded.empty()) throw ConstructionError("evolved body vanished under erosion");
  const ShrunkBody<D> end = detail::parabolic_shrink_dilate<D>(eroded, r, 0xB6);

  Regularized<D> out;
  out.a_prime = start.dilated;
  out.contact_start = start.contacts;
  out.contact_end = end.contacts;
  out.r = r;
  out.horizon = horizon;

  std::vector<double> cp(a.dirs().size());
  const double tol_c = 2.0 * tol / horizon;  // contact-point error propagated to a rate
  for (std::size_t i = 0; i < cp.size(); ++i) {
    cp[i] = dot<D>(sub<D>(end.contacts[i], start.contacts[i]), a.dirs()[i]) / horizon;
    if (!(cp[i] > 0.0))
      throw ConstructionError("regularized speed not positive in direction " +
                              std::to_string(i));
    // Conclusion (i): the perturbed speed never exceeds the original.  The
    // sampled construction can overshoot by the grid error, which is clamped.
    if (cp[i] > c[i] + tol_c)
      throw ConstructionError("regularized speed exceeds the original in direction " +
                              std::to_string(i));
    cp[i] = std::min(cp[i], c[i]);
  }
  out.c_prime = SpeedFunction<D>(a.dirs(), std::move(cp));

  // Conclusion (ii) on the grid: A' inside B_r(A), and the evolved original
  // inside the (c_hi/c_lo) r-dilation of the evolved regularization.
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (out.a_prime.support()[i] > a.support()[i] + r + tol)
      throw ConstructionError("regularized body escapes B_r(A) in direction " +
                              std::to_string(i));
  }
  const ConvexBody<D> evolved_prime = theta_set(out.a_prime, out.c_prime, horizon);
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (theta_T.support()[i] > evolved_prime.support()[i] + c_hi * r / c_lo + tol)
      throw ConstructionError("evolved original escapes the dilated regularization in direction " +
                              std::to_string(i));
  }
  return out;
}

}  // namespace frontlab
