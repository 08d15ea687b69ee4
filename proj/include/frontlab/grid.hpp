#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

enum class BoundaryRule { neumann, dirichlet_zero, periodic };

// Uniform axis-aligned grid.  Node (i0,...,i_{D-1}) sits at
// origin + h * (i0,...,i_{D-1}); storage is row-major with the last axis
// fastest.
template <int D>
struct Grid {
  Vec<D> origin{};
  std::array<int, D> n{};
  double h = 1.0;
  std::array<BoundaryRule, D> bc{};

  Grid() { bc.fill(BoundaryRule::neumann); }

  static Grid cover(const Box<D>& box, double spacing, BoundaryRule rule = BoundaryRule::neumann) {
    Grid g;
    g.h = spacing;
    g.bc.fill(rule);
    for (int a = 0; a < D; ++a) {
      g.origin[a] = box.lo[a];
      g.n[a] = static_cast<int>(std::ceil((box.hi[a] - box.lo[a]) / spacing - 1e-9)) + 1;
    }
    return g;
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < D; ++a) s *= static_cast<std::size_t>(n[a]);
    return s;
  }

  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = axis + 1; a < D; ++a) s *= static_cast<std::size_t>(n[a]);
    return s;
  }

  std::size_t flat(const std::array<int, D>& c) const {
    std::size_t i = 0;
    for (int a = 0; a < D; ++a) i = i * static_cast<std::size_t>(n[a]) + static_cast<std::size_t>(c[a]);
    return i;
  }

  std::array<int, D> coords(std::size_t idx) const {
    std::array<int, D> c{};
    for (int a = D - 1; a >= 0; --a) {
      c[a] = static_cast<int>(idx % static_cast<std::size_t>(n[a]));
      idx /= static_cast<std::size_t>(n[a]);
    }
    return c;
  }

  Vec<D> pos(const std::array<int, D>& c) const {
    Vec<D> x{};
    for (int a = 0; a < D; ++a) x[a] = origin[a] + h * static_cast<double>(c[a]);
    return x;
  }
  Vec<D> pos(std::size_t idx) const { return pos(coords(idx)); }

  Box<D> bounds() const {
    Box<D> b;
    for (int a = 0; a < D; ++a) {
      b.lo[a] = origin[a];
      b.hi[a] = origin[a] + h * static_cast<double>(n[a] - 1);
    }
    return b;
  }

  // Nearest node index to a point; throws if outside by more than half a cell.
  std::array<int, D> nearest(const Vec<D>& x) const {
    std::array<int, D> c{};
    for (int a = 0; a < D; ++a) {
      const double t = (x[a] - origin[a]) / h;
      const long r = std::lround(t);
      if (r < 0 || r >= n[a] || std::abs(t - static_cast<double>(r)) > 0.5 + 1e-9)
        throw ConfigError("point is outside the grid");
      c[a] = static_cast<int>(r);
    }
    return c;
  }
};

template <int D>
struct GridState {
  Grid<D> grid;
  std::vector<double> u;
  double t = 0.0;

  GridState() = default;
  explicit GridState(const Grid<D>& g) : grid(g), u(g.size(), 0.0) {}
};

// Node mask with the adjacency boundary (mask nodes with an in-grid neighbor
// outside the mask).
template <int D>
struct LevelSetMask {
  Grid<D> grid;
  std::vector<std::uint8_t> in;
  std::vector<std::size_t> boundary;
  std::size_t count = 0;

  bool empty() const { return count == 0; }
};

template <int D>
LevelSetMask<D> superlevel_set(const GridState<D>& s, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("superlevel threshold must be in (0,1)");
  LevelSetMask<D> m;
  m.grid = s.grid;
  m.in.resize(s.u.size());
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    m.in[i] = s.u[i] >= theta ? 1 : 0;
    m.count += m.in[i];
  }
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    if (!m.in[i]) continue;
    const auto c = s.grid.coords(i);
    bool edge = false;
    for (int a = 0; a < D && !edge; ++a) {
      if (c[a] > 0 && !m.in[i - s.grid.stride(a)]) edge = true;
      if (c[a] + 1 < s.grid.n[a] && !m.in[i + s.grid.stride(a)]) edge = true;
    }
    if (edge) m.boundary.push_back(i);
  }
  return m;
}

// Exact squared Euclidean distance transform (lower envelope of parabolas),
// one pass per axis.  Distances are in node-index units.
namespace detail {
inline void edt_line(std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                     std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    if (f[q] == std::numeric_limits<double>::infinity()) continue;
    if (f[v[0]] == std::numeric_limits<double>::infinity() && k == 0) {
      v[0] = q;
      continue;
    }
    double s;
    while (true) {
      const int p = v[k];
      s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * (q - p));
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    if (f[v[0]] == std::numeric_limits<double>::infinity()) {
      d[q] = std::numeric_limits<double>::infinity();
      continue;
    }
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}
}  // namespace detail

template <int D>
std::vector<double> squared_distance_to_mask(const Grid<D>& grid,
                                             const std::vector<std::uint8_t>& in) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(grid.size());
  for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = in[i] ? 0.0 : inf;

  for (int a = 0; a < D; ++a) {
    const std::size_t stride = grid.stride(a);
    const int len = grid.n[a];
    std::vector<double> f(len), d(len), z(len + 1);
    std::vector<int> v(len);
    const std::size_t lines = grid.size() / static_cast<std::size_t>(len);
    for (std::size_t line = 0; line < lines; ++line) {
      // Base index of this line: distribute `line` over the other axes.
      std::size_t base = 0, rem = line;
      for (int b = D - 1; b >= 0; --b) {
        if (b == a) continue;
        const std::size_t nb = static_cast<std::size_t>(grid.n[b]);
        base += (rem % nb) * grid.stride(b);
        rem /= nb;
      }
      for (int q = 0; q < len; ++q) f[q] = dist[base + static_cast<std::size_t>(q) * stride];
      detail::edt_line(f, d, v, z);
      for (int q = 0; q < len; ++q) dist[base + static_cast<std::size_t>(q) * stride] = d[q];
    }
  }
  return dist;
}

// Width of the transition zone: the smallest L with the eta-superlevel set
// inside the L-neighborhood of the theta-superlevel set.
template <int D>
double transition_width(const GridState<D>& s, double eta, double theta) {
  if (!(0.0 < eta && eta < theta && theta < 1.0))
    throw DomainError("transition width needs 0 < eta < theta < 1");
  const LevelSetMask<D> hi = superlevel_set(s, theta);
  const LevelSetMask<D> lo = superlevel_set(s, eta);
  if (lo.empty()) return 0.0;
  if (hi.empty()) return std::numeric_limits<double>::infinity();
  const std::vector<double> d2 = squared_distance_to_mask(s.grid, hi.in);
  double worst = 0.0;
  for (std::size_t i = 0; i < lo.in.size(); ++i)
    if (lo.in[i]) worst = std::max(worst, d2[i]);
  return std::sqrt(worst) * s.grid.h;
}

}  // namespace frontlab
