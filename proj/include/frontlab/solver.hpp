#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "frontlab/baseline.hpp"
#include "frontlab/core.hpp"
#include "frontlab/field.hpp"
#include "frontlab/grid.hpp"

namespace frontlab {

struct StepperOptions {
  double dt = 0.0;           // 0: largest step allowed by the stability bounds
  double cfl_safety = 0.8;   // fraction of the diffusive limit used by default
  double clamp_tol = 1e-12;  // excursions beyond this are an error
  bool track_min_step_delta = true;
  bool use_support_window = true;
};

struct AdvanceResult {
  std::uint64_t steps = 0;
  double min_step_delta = 0.0;   // min over steps and nodes of u(t+dt)-u(t)
  double max_excursion = 0.0;    // worst out-of-[0,1] overshoot seen (clamped)
  bool stopped_on_probes = false;
};

// Explicit Euler for u_t = Lap u + f(x,u) with the 2d+1-point stencil.  The
// step map is monotone in every input under dt <= h^2/(2d) and dt*M <= 1/2,
// which is what all comparison-based checks in this project lean on.  Nodes
// outside the tracked support window are exactly zero in both buffers and are
// skipped; this is exact because f(x,0) = 0.
template <int D>
class Stepper {
 public:
  using BlendFn = std::function<std::array<double, 2>(const Vec<D>&)>;

  Stepper(const Grid<D>& grid, const IgnitionField<D>& field, StepperOptions opts = {})
      : Stepper(grid, field,
                [&field](const Vec<D>& x) { return field.blend_at(x); }, opts) {}

  // `blend` maps a grid-frame position to the local (a(x), theta(x)); rotated
  // slabs pass a frame-composed sampler.
  Stepper(const Grid<D>& grid, const IgnitionField<D>& field, BlendFn blend,
          StepperOptions opts = {})
      : grid_(grid), opts_(opts) {
    const ReactionHypotheses& hyp = field.hypotheses();
    alpha1_ = hyp.alpha1;
    m1_ = hyp.m1;
    inv_w_ = 1.0 / hyp.ramp_width;
    lipschitz_ = hyp.lipschitz;
    if (field.perturbation()) pert_ = *field.perturbation();

    const double dt_diff = grid.h * grid.h / (2.0 * D);
    const double dt_react = 0.5 / hyp.lipschitz;
    if (opts_.dt <= 0.0) {
      dt_ = std::min(opts_.cfl_safety * dt_diff, dt_react);
    } else {
      if (opts_.dt > dt_diff * (1.0 + 1e-12))
        throw ConfigError("dt violates the diffusive stability bound h^2/(2d)");
      if (opts_.dt * hyp.lipschitz > 0.5 * (1.0 + 1e-12))
        throw ConfigError("dt violates the reaction monotonicity bound dt*M <= 1/2");
      dt_ = opts_.dt;
    }

    const std::size_t total = grid.size();
    amp_alpha_.resize(total);
    theta_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      const auto [a, th] = blend(grid.pos(i));
      amp_alpha_[i] = a * alpha1_;
      theta_[i] = th;
    }

    for (int a = 0; a < D; ++a) {
      const int n = grid.n[a];
      auto& t = axis_[a];
      t.off_m.resize(n);
      t.w_m.resize(n);
      t.off_p.resize(n);
      t.w_p.resize(n);
      const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(grid.stride(a));
      for (int i = 0; i < n; ++i) {
        t.off_m[i] = -s;
        t.w_m[i] = 1.0;
        t.off_p[i] = s;
        t.w_p[i] = 1.0;
        if (i == 0) apply_bc(grid.bc[a], n, s, t.off_m[i], t.w_m[i]);
        if (i == n - 1) apply_bc(grid.bc[a], n, -s, t.off_p[i], t.w_p[i]);
      }
    }
  }

  double dt() const { return dt_; }

  void set_probes(std::vector<std::size_t> idx, double threshold) {
    probe_idx_ = std::move(idx);
    probe_threshold_ = threshold;
    probe_time_.assign(probe_idx_.size(), std::numeric_limits<double>::infinity());
  }
  const std::vector<double>& probe_times() const { return probe_time_; }
  bool all_probes_arrived() const {
    for (double t : probe_time_)
      if (!std::isfinite(t)) return false;
    return true;
  }

  void enable_arrival_field(double threshold) {
    arrival_threshold_ = threshold;
    arrival_.assign(grid_.size(), std::numeric_limits<double>::infinity());
  }
  const std::vector<double>& arrival_field() const { return arrival_; }

  // Advances to t_end; optionally stops as soon as every probe has arrived.
  AdvanceResult advance(GridState<D>& s, double t_end, bool stop_on_probes = false) {
    if (t_end < s.t - 1e-12) throw ConfigError("advance target time precedes the state time");
    if (s.u.size() != grid_.size()) throw ConfigError("state does not match the stepper grid");
    AdvanceResult res;
    res.min_step_delta = 0.0;

    if (scratch_.size() != s.u.size()) scratch_.assign(s.u.size(), 0.0);
    init_window(s.u);
    record_initial_crossings(s);

    while (s.t < t_end - 1e-12) {
      const double step_dt = std::min(dt_, t_end - s.t);
      take_step(s, step_dt, res);
      ++res.steps;
      if ((res.steps & 63u) == 0) check_finite(s);
      if (stop_on_probes && !probe_idx_.empty() && all_probes_arrived()) {
        res.stopped_on_probes = true;
        break;
      }
    }
    check_finite(s);
    return res;
  }

 private:
  struct AxisTable {
    std::vector<std::ptrdiff_t> off_m, off_p;
    std::vector<double> w_m, w_p;
  };

  // `inward` is the stride step pointing into the domain at this face.
  static void apply_bc(BoundaryRule rule, int n, std::ptrdiff_t inward,
                       std::ptrdiff_t& off, double& w) {
    switch (rule) {
      case BoundaryRule::neumann:
        off = inward;  // mirror ghost
        break;
      case BoundaryRule::dirichlet_zero:
        off = 0;
        w = 0.0;
        break;
      case BoundaryRule::periodic:
        off = inward * static_cast<std::ptrdiff_t>(n - 1);
        break;
    }
  }

  void init_window(const std::vector<double>& u) {
    for (int a = 0; a < D; ++a) {
      if (grid_.bc[a] == BoundaryRule::periodic || !opts_.use_support_window) {
        win_lo_[a] = 0;
        win_hi_[a] = grid_.n[a];
      } else {
        win_lo_[a] = grid_.n[a];
        win_hi_[a] = 0;
      }
    }
    bool any = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0.0) continue;
      any = true;
      const auto c = grid_.coords(i);
      for (int a = 0; a < D; ++a) {
        if (grid_.bc[a] == BoundaryRule::periodic || !opts_.use_support_window) continue;
        win_lo_[a] = std::min(win_lo_[a], c[a]);
        win_hi_[a] = std::max(win_hi_[a], c[a] + 1);
      }
    }
    if (!any) {
      for (int a = 0; a < D; ++a) {
        if (grid_.bc[a] == BoundaryRule::periodic || !opts_.use_support_window) continue;
        win_lo_[a] = 0;
        win_hi_[a] = 0;
      }
    }
  }

  void record_initial_crossings(const GridState<D>& s) {
    for (std::size_t p = 0; p < probe_idx_.size(); ++p)
      if (!std::isfinite(probe_time_[p]) && s.u[probe_idx_[p]] >= probe_threshold_)
        probe_time_[p] = s.t;
    if (!arrival_.empty())
      for (std::size_t i = 0; i < s.u.size(); ++i)
        if (s.u[i] >= arrival_threshold_) arrival_[i] = std::min(arrival_[i], s.t);
  }

  bool window_empty() const {
    for (int a = 0; a < D; ++a)
      if (win_lo_[a] >= win_hi_[a]) return true;
    return false;
  }

  void take_step(GridState<D>& s, double step_dt, AdvanceResult& res) {
    const double t0 = s.t;
    if (window_empty()) {
      s.t = t0 + step_dt;
      return;
    }
    std::array<int, D> lo{}, hi{};
    for (int a = 0; a < D; ++a) {
      lo[a] = std::max(0, win_lo_[a] - 1);
      hi[a] = std::min(grid_.n[a], win_hi_[a] + 1);
    }

    const double inv_h2 = 1.0 / (grid_.h * grid_.h);
    const std::vector<double>& u = s.u;
    std::vector<double>& un = scratch_;
    double min_du = 0.0;
    double max_exc = 0.0;
    bool m1_is_2 = (m1_ == 2.0);

    auto reaction = [&](double uv, std::size_t idx) {
      double f = 0.0;
      const double z = (uv - theta_[idx]) * inv_w_;
      if (z > 0.0) {
        const double zc = z < 1.0 ? z : 1.0;
        const double sv = zc * zc * (3.0 - 2.0 * zc);
        const double om = 1.0 - uv;
        const double pw = m1_is_2 ? om * om : std::pow(om, m1_);
        f = amp_alpha_[idx] * pw * sv;
      }
      if (pert_.amplitude != 0.0) f += pert_.eval(uv);
      return f;
    };

    std::array<int, D> c = lo;
    while (true) {
      std::size_t base = 0;
      for (int a = 0; a < D; ++a) base += static_cast<std::size_t>(c[a]) * grid_.stride(a);

      const AxisTable& tf = axis_[D - 1];
      const int i_end = hi[D - 1];
      for (int i = lo[D - 1]; i < i_end; ++i) {
        const std::size_t idx = base + static_cast<std::size_t>(i - lo[D - 1]);
        const double uv = u[idx];
        double lap = -2.0 * D * uv;
        for (int a = 0; a < D - 1; ++a) {
          const AxisTable& t = axis_[a];
          lap += t.w_m[c[a]] * u[idx + t.off_m[c[a]]] + t.w_p[c[a]] * u[idx + t.off_p[c[a]]];
        }
        lap += tf.w_m[i] * u[idx + tf.off_m[i]] + tf.w_p[i] * u[idx + tf.off_p[i]];

        double v = uv + step_dt * (lap * inv_h2 + reaction(uv, idx));
        if (!(v >= 0.0)) {
          const double exc = 0.0 - v;
          if (!(exc <= opts_.clamp_tol)) {
            dump_and_throw(s, idx, v, res.steps);
          }
          max_exc = std::max(max_exc, exc);
          v = 0.0;
        } else if (v > 1.0) {
          const double exc = v - 1.0;
          if (exc > opts_.clamp_tol) dump_and_throw(s, idx, v, res.steps);
          max_exc = std::max(max_exc, exc);
          v = 1.0;
        }
        un[idx] = v;
        if (opts_.track_min_step_delta) min_du = std::min(min_du, v - uv);
      }

      // Advance the outer counters (the fastest axis is handled above).
      int a = D - 2;
      while (a >= 0) {
        if (++c[a] < hi[a]) break;
        c[a] = lo[a];
        --a;
      }
      if (a < 0) break;
      if (D == 1) break;
    }

    // Grow the support window wherever the expansion slabs became occupied.
    for (int a = 0; a < D; ++a) {
      if (grid_.bc[a] == BoundaryRule::periodic || !opts_.use_support_window) continue;
      if (lo[a] < win_lo_[a] && slab_nonzero(un, lo, hi, a, lo[a])) win_lo_[a] = lo[a];
      if (hi[a] > win_hi_[a] && slab_nonzero(un, lo, hi, a, hi[a] - 1)) win_hi_[a] = hi[a];
    }

    s.u.swap(scratch_);
    s.t = t0 + step_dt;
    res.min_step_delta = std::min(res.min_step_delta, min_du);
    res.max_excursion = std::max(res.max_excursion, max_exc);

    // Crossing times, linearly interpolated inside the step; ties go to the
    // earlier step because crossings are detected with >=.
    if (!probe_idx_.empty()) {
      for (std::size_t p = 0; p < probe_idx_.size(); ++p) {
        if (std::isfinite(probe_time_[p])) continue;
        const std::size_t idx = probe_idx_[p];
        const double a = scratch_[idx], b = s.u[idx];
        if (b >= probe_threshold_)
          probe_time_[p] = t0 + step_dt * frac(probe_threshold_, a, b);
      }
    }
    if (!arrival_.empty()) {
      std::array<int, D> cc = lo;
      while (true) {
        std::size_t base = 0;
        for (int a = 0; a < D; ++a) base += static_cast<std::size_t>(cc[a]) * grid_.stride(a);
        for (int i = lo[D - 1]; i < hi[D - 1]; ++i) {
          const std::size_t idx = base + static_cast<std::size_t>(i - lo[D - 1]);
          if (std::isfinite(arrival_[idx])) continue;
          const double b = s.u[idx];
          if (b >= arrival_threshold_)
            arrival_[idx] = t0 + step_dt * frac(arrival_threshold_, scratch_[idx], b);
        }
        int a = D - 2;
        while (a >= 0) {
          if (++cc[a] < hi[a]) break;
          cc[a] = lo[a];
          --a;
        }
        if (a < 0) break;
        if (D == 1) break;
      }
    }
  }

  static double frac(double theta, double a, double b) {
    if (b <= a) return 0.0;
    if (a >= theta) return 0.0;
    return (theta - a) / (b - a);
  }

  bool slab_nonzero(const std::vector<double>& u, const std::array<int, D>& lo,
                    const std::array<int, D>& hi, int axis, int coord) const {
    std::array<int, D> c = lo;
    c[axis] = coord;
    while (true) {
      std::size_t base = 0;
      for (int a = 0; a < D; ++a) base += static_cast<std::size_t>(c[a]) * grid_.stride(a);
      if (u[base] != 0.0) return true;
      int a = D - 1;
      while (a >= 0) {
        if (a == axis) {
          --a;
          continue;
        }
        if (++c[a] < hi[a]) break;
        c[a] = lo[a];
        --a;
      }
      if (a < 0) break;
    }
    return false;
  }

  void check_finite(const GridState<D>& s) const {
    for (std::size_t i = 0; i < s.u.size(); ++i)
      if (!std::isfinite(s.u[i]))
        throw NumericalError("non-finite solution value at node " + std::to_string(i) +
                             " (t = " + std::to_string(s.t) + ")");
  }

  [[noreturn]] void dump_and_throw(const GridState<D>& s, std::size_t idx, double v,
                                   std::uint64_t step) const {
    const auto c = grid_.coords(idx);
    std::string where;
    for (int a = 0; a < D; ++a) where += (a ? "," : "") + std::to_string(c[a]);
    throw NumericalError("solution excursion " + std::to_string(v) + " at node (" + where +
                         "), step " + std::to_string(step) + ", t = " + std::to_string(s.t));
  }

  Grid<D> grid_;
  StepperOptions opts_;
  double dt_ = 0.0;
  double alpha1_ = 1.0, m1_ = 2.0, inv_w_ = 1.0, lipschitz_ = 1.0;
  GlobalPerturbation pert_{};
  std::vector<double> amp_alpha_, theta_;
  std::array<AxisTable, D> axis_;
  std::array<int, D> win_lo_{}, win_hi_{};
  std::vector<double> scratch_;

  std::vector<std::size_t> probe_idx_;
  double probe_threshold_ = 1.0;
  std::vector<double> probe_time_;
  double arrival_threshold_ = 1.0;
  std::vector<double> arrival_;
};

// Convenience form of the single advance operation.
template <int D>
AdvanceResult advance(GridState<D>& state, const IgnitionField<D>& field, double t_end,
                      StepperOptions opts = {}) {
  Stepper<D> st(state.grid, field, opts);
  return st.advance(state, t_end);
}

// ---------------------------------------------------------------------------
// Initial data with nonnegative parabolic residual.

// Decreasing profile phi on [0, R] with phi(0) = 1 - theta*, phi(R) = 0 and
// phi'' + F0(phi) >= 0.  Built as the standing-wave energy profile of the
// softened minorant F~ = gamma F0(u) ramp(u - u_lin): the (1 - gamma) reaction
// surplus plus the C^1 curvature onset keep the discrete residual positive,
// and any stretch R >= R_nat only adds slack.
class FrontProfile {
 public:
  FrontProfile(const BaselineReaction& f0, double theta_star, double gamma = 0.75) {
    const double top = 1.0 - theta_star;
    if (!(f0.integral(0.0, top) > 0.0))
      throw ConstructionError("baseline reaction has no energy: no front profile exists");
    const double u_lin = 1.0 - f0.theta1();
    const double onset = 0.25 * f0.theta1();  // u-width of the curvature onset
    auto soft = [&](double u) { return gamma * f0(u) * smoothstep((u - u_lin) / onset); };

    // s(u) = int_u^top dv / sqrt(2 E(v)), E(v) = int_v^top F~.
    const int n = 16384;
    std::vector<double> uu(n + 1), ss(n + 1), ee(n + 1);
    uu[0] = top;
    ss[0] = 0.0;
    ee[0] = 0.0;
    const double du = (top - u_lin) / n;
    for (int i = 1; i <= n; ++i) {
      uu[i] = top - du * i;
      ee[i] = ee[i - 1] + 0.5 * (soft(uu[i - 1]) + soft(uu[i])) * du;
    }
    // First interval via the local linearization E ~ F~(top) (top - v).
    const double f_top = std::max(soft(top), 1e-300);
    ss[1] = std::sqrt(2.0 * (top - uu[1]) / f_top);
    for (int i = 2; i <= n; ++i) {
      const double g_a = 1.0 / std::sqrt(2.0 * std::max(ee[i - 1], 1e-300));
      const double g_b = 1.0 / std::sqrt(2.0 * std::max(ee[i], 1e-300));
      ss[i] = ss[i - 1] + 0.5 * (g_a + g_b) * du;
    }
    const double slope = std::sqrt(2.0 * ee[n]);
    natural_radius_ = ss[n] + u_lin / slope;

    // Resample to a uniform table in s.
    const int m = 32768;
    s_table_.resize(m + 1);
    u_table_.resize(m + 1);
    int j = 0;
    for (int i = 0; i <= m; ++i) {
      const double s = natural_radius_ * static_cast<double>(i) / m;
      s_table_[i] = s;
      if (s >= ss[n]) {
        u_table_[i] = std::max(0.0, u_lin - slope * (s - ss[n]));
        continue;
      }
      while (j + 1 <= n && ss[j + 1] < s) ++j;
      const double t = (s - ss[j]) / std::max(ss[j + 1] - ss[j], 1e-300);
      u_table_[i] = uu[j] + t * (uu[j + 1] - uu[j]);
    }
    u_table_[0] = top;
    u_table_[m] = 0.0;
  }

  double natural_radius() const { return natural_radius_; }

  // phi_R(s) for a stretched radius R >= natural_radius().
  double eval(double s, double radius) const {
    if (s <= 0.0) return u_table_.front();
    const double sn = s * natural_radius_ / radius;
    if (sn >= natural_radius_) return 0.0;
    const double x = sn / natural_radius_ * (u_table_.size() - 1);
    const std::size_t i = static_cast<std::size_t>(x);
    const double t = x - static_cast<double>(i);
    return u_table_[i] + t * (u_table_[i + 1] - u_table_[i]);
  }

 private:
  double natural_radius_ = 0.0;
  std::vector<double> s_table_, u_table_;
};

template <int D>
struct FrontData {
  GridState<D> state;
  double radius = 0.0;          // mollification radius in use
  double worst_residual = 0.0;  // min over nodes of Lap_h u0 + F0(u0)
  int doublings = 0;
};

struct FrontDataOptions {
  double residual_tol = 1e-5;
  int max_doublings = 6;
};

// Discrete residual of candidate data u0 against the baseline reaction.
template <int D>
double front_data_residual(const GridState<D>& s, const BaselineReaction& f0) {
  double worst = std::numeric_limits<double>::infinity();
  const Grid<D>& g = s.grid;
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const auto c = g.coords(i);
    double lap = -2.0 * D * s.u[i];
    for (int a = 0; a < D; ++a) {
      const std::size_t st = g.stride(a);
      double um, up;
      if (c[a] > 0)
        um = s.u[i - st];
      else
        um = (g.bc[a] == BoundaryRule::dirichlet_zero) ? 0.0
             : (g.bc[a] == BoundaryRule::periodic)
                 ? s.u[i + st * static_cast<std::size_t>(g.n[a] - 1)]
                 : s.u[i + st];
      if (c[a] + 1 < g.n[a])
        up = s.u[i + st];
      else
        up = (g.bc[a] == BoundaryRule::dirichlet_zero) ? 0.0
             : (g.bc[a] == BoundaryRule::periodic)
                 ? s.u[i - st * static_cast<std::size_t>(g.n[a] - 1)]
                 : s.u[i - st];
      lap += um + up;
    }
    worst = std::min(worst, lap * inv_h2 + f0(s.u[i]));
  }
  return worst;
}

// Monotone front-like initial data for a region given through its outer
// distance function (0 inside, the Euclidean gap outside, 1-Lipschitz).
// The mollification radius starts at the profile's natural width and doubles
// until the discrete residual clears -tol; failure at the cap is an error.
template <int D, class DistFn>
FrontData<D> build_front_data(DistFn&& outer_dist, const BaselineReaction& f0,
                              const Grid<D>& grid, double theta_star,
                              const FrontDataOptions& opts = {}) {
  FrontProfile profile(f0, theta_star);
  FrontData<D> out;
  out.state = GridState<D>(grid);
  double radius = profile.natural_radius();
  for (int k = 0; k <= opts.max_doublings; ++k) {
    for (std::size_t i = 0; i < out.state.u.size(); ++i)
      out.state.u[i] = profile.eval(outer_dist(grid.pos(i)), radius);
    out.radius = radius;
    out.doublings = k;
    out.worst_residual = front_data_residual(out.state, f0);
    if (out.worst_residual >= -opts.residual_tol) return out;
    radius *= 2.0;
  }
  throw ConstructionError(
      "front data residual stayed below -tol after doubling to radius " +
      std::to_string(out.radius) + " (worst residual " +
      std::to_string(out.worst_residual) + ")");
}

// Empty region: u0 = 0.
template <int D>
FrontData<D> build_front_data_empty(const Grid<D>& grid) {
  FrontData<D> out;
  out.state = GridState<D>(grid);
  return out;
}

template <int D>
FrontData<D> build_front_data_halfspace(const Vec<D>& normal, double offset,
                                        const BaselineReaction& f0, const Grid<D>& grid,
                                        double theta_star, const FrontDataOptions& opts = {}) {
  const Vec<D> e = normalized<D>(normal);
  return build_front_data<D>(
      [&e, offset](const Vec<D>& x) { return std::max(0.0, dot<D>(x, e) - offset); }, f0,
      grid, theta_star, opts);
}

// ---------------------------------------------------------------------------
// Arrival times.

template <int D>
struct ArrivalTimeField {
  Grid<D> grid;
  std::vector<double> time;  // +inf where the threshold was never reached
  double threshold = 0.0;
};

struct ArrivalOptions {
  bool assert_monotone = false;  // monotone-data runs require u_t >= -tol
  double monotone_tol = 1e-10;
};

template <int D>
ArrivalTimeField<D> arrival_time_field(const IgnitionField<D>& field,
                                       const GridState<D>& initial, double horizon,
                                       double threshold, const ArrivalOptions& aopts = {},
                                       StepperOptions sopts = {}) {
  if (!(horizon > 0.0)) throw ConfigError("arrival horizon must be positive");
  GridState<D> s = initial;
  Stepper<D> st(s.grid, field, sopts);
  st.enable_arrival_field(threshold);
  const AdvanceResult r = st.advance(s, initial.t + horizon);
  if (aopts.assert_monotone && r.min_step_delta < -aopts.monotone_tol)
    throw NumericalError("monotone-data run lost monotonicity: min step delta " +
                         std::to_string(r.min_step_delta));
  ArrivalTimeField<D> out;
  out.grid = s.grid;
  out.time = st.arrival_field();
  out.threshold = threshold;
  return out;
}

}  // namespace frontlab
