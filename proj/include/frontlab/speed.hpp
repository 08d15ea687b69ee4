#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "frontlab/geometry.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/solver.hpp"
#include "frontlab/stats.hpp"

namespace frontlab {

// ---------------------------------------------------------------------------
// 1-d traveling-front tracking.

// Long-time slope of the level-crossing position for u_t = u_xx + f(u) with
// monotone front data.  `f` must dominate the baseline reaction so the energy
// profile is valid initial data.
template <class ReactionFn>
double tracked_front_speed(ReactionFn&& f_in, const BaselineReaction& f0, double lipschitz,
                           double theta_star, double h, double domain_length = 160.0,
                           double level = 0.5) {
  // Flat uniform lookup of the reaction; the tabulation bias is h-independent
  // and therefore cancels from refinement comparisons.
  constexpr int kTab = 1 << 16;
  std::vector<double> tab(kTab + 1);
  for (int i = 0; i <= kTab; ++i) tab[static_cast<std::size_t>(i)] = f_in(static_cast<double>(i) / kTab);
  auto f = [&tab](double u) {
    double x = u * kTab;
    if (x <= 0.0) return tab[0];
    if (x >= kTab) return tab[kTab];
    const int i = static_cast<int>(x);
    const double t = x - i;
    return tab[static_cast<std::size_t>(i)] + t * (tab[static_cast<std::size_t>(i) + 1] - tab[static_cast<std::size_t>(i)]);
  };

  const FrontProfile profile(f0, theta_star);
  const double start = std::min(profile.natural_radius() * 0.2 + 2.0, 0.2 * domain_length);
  const int n = static_cast<int>(std::lround(domain_length / h)) + 1;
  std::vector<double> u(static_cast<std::size_t>(n), 0.0);
  std::vector<double> un(u.size(), 0.0);
  for (int i = 0; i < n; ++i)
    u[static_cast<std::size_t>(i)] = profile.eval(std::max(0.0, i * h - start), profile.natural_radius());

  const double dt = std::min(0.4 * h * h, 0.5 / lipschitz);
  const double inv_h2 = 1.0 / (h * h);
  const double lo_gate = 0.45 * domain_length, hi_gate = 0.85 * domain_length;
  const double sample_every = 0.5;

  std::vector<double> ts, ps;
  int active = n;
  for (int i = n - 1; i > 0; --i)
    if (u[static_cast<std::size_t>(i)] != 0.0) {
      active = i + 1;
      break;
    }

  double t = 0.0;
  double next_sample = 0.0;
  const double t_cap = 4.0 * domain_length * lipschitz + 1e4;  // hard stop
  while (t < t_cap) {
    if (t >= next_sample) {
      next_sample += sample_every;
      // Crossing position of `level`, scanning from the right.
      double pos = -1.0;
      for (int i = n - 1; i > 0; --i) {
        const std::size_t k = static_cast<std::size_t>(i);
        if (u[k] < level && u[k - 1] >= level) {
          pos = (i - 1) * h + h * (u[k - 1] - level) / (u[k - 1] - u[k]);
          break;
        }
      }
      if (pos >= hi_gate) break;
      if (pos >= lo_gate) {
        ts.push_back(t);
        ps.push_back(pos);
      }
    }
    const int hi = std::min(n, active + 1);
    for (int i = 0; i < hi; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      const double um = (i > 0) ? u[k - 1] : u[1];
      const double up = (i + 1 < n) ? u[k + 1] : u[k - 1];
      un[k] = u[k] + dt * ((um - 2.0 * u[k] + up) * inv_h2 + f(u[k]));
    }
    if (hi < n && un[static_cast<std::size_t>(hi - 1)] != 0.0) active = hi;
    u.swap(un);
    t += dt;
  }
  if (ts.size() < 10)
    throw EstimationError("no positive front speed: the tracked front never crossed the gate");
  const LineFit fit = least_squares(ts, ps);
  if (!(fit.slope > 0.0)) throw EstimationError("no positive front speed");
  return fit.slope;
}

struct SpeedBounds {
  double c0 = 0.0;            // baseline traveling-front speed (refined)
  double c1 = 0.0;            // closed-form cap 2 sqrt(M d)
  double richardson_gap = 0.0;  // |c0(h/2) - c0(h)| / c0, a resolution check
};

// The bracket [c0, c1]: c1 in closed form, c0 from two-resolution front
// tracking of the baseline reaction with Richardson extrapolation.
inline SpeedBounds speed_bounds(const ReactionHypotheses& hyp, double h = 0.2,
                                double domain_length = 160.0) {
  hyp.validate();
  SpeedBounds out;
  out.c1 = speed_cap_c1(hyp);
  const BaselineReaction f0 = BaselineReaction::build(hyp);
  auto f = [&f0](double u) { return f0(u); };
  double ch, ch2;
  try {
    ch = tracked_front_speed(f, f0, hyp.lipschitz, hyp.theta_star, h, domain_length);
    ch2 = tracked_front_speed(f, f0, hyp.lipschitz, hyp.theta_star, h / 2.0, domain_length);
  } catch (const ConstructionError& e) {
    throw EstimationError(std::string("baseline front speed unavailable: ") + e.what());
  }
  out.c0 = ch2 + (ch2 - ch) / 3.0;  // second-order extrapolation
  out.richardson_gap = std::abs(ch2 - ch) / std::max(out.c0, 1e-300);
  return out;
}

// ---------------------------------------------------------------------------
// Half-space slab experiments.

struct SlabOptions {
  double h = 0.25;
  double width_cells = 6.0;     // transverse extent in units of rho
  double horizon = 0.0;         // 0: derived from c0 and the furthest probe
  double c0_hint = 0.0;         // skip the baseline tracking when supplied
  double back_margin = 10.0;
  int threads = 1;
};

// Orthonormal frame with the first column along e.
template <int D>
std::array<Vec<D>, D> frame_along(const Vec<D>& e);

template <>
inline std::array<Vec<1>, 1> frame_along<1>(const Vec<1>& e) {
  return {Vec<1>{e[0] >= 0.0 ? 1.0 : -1.0}};
}
template <>
inline std::array<Vec<2>, 2> frame_along<2>(const Vec<2>& e) {
  const Vec<2> u = normalized<2>(e);
  return {u, Vec<2>{-u[1], u[0]}};
}
template <>
inline std::array<Vec<3>, 3> frame_along<3>(const Vec<3>& e) {
  const Vec<3> u = normalized<3>(e);
  Vec<3> a = std::abs(u[0]) < 0.9 ? Vec<3>{1, 0, 0} : Vec<3>{0, 1, 0};
  Vec<3> v{u[1] * a[2] - u[2] * a[1], u[2] * a[0] - u[0] * a[2], u[0] * a[1] - u[1] * a[0]};
  v = normalized<3>(v);
  Vec<3> w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  return {u, v, w};
}

template <int D>
bool is_axis_aligned(const Vec<D>& e, int& axis, double& sign) {
  for (int a = 0; a < D; ++a) {
    if (std::abs(std::abs(e[a]) - 1.0) < 1e-12) {
      bool others_zero = true;
      for (int b = 0; b < D; ++b)
        if (b != a && std::abs(e[b]) > 1e-12) others_zero = false;
      if (others_zero) {
        axis = a;
        sign = e[a] > 0 ? 1.0 : -1.0;
        return true;
      }
    }
  }
  return false;
}

template <int D>
struct HalfspaceArrival {
  std::vector<double> probes;
  std::vector<double> times;  // +inf where the horizon was hit first
  double horizon = 0.0;
  bool medium_wrapped = false;  // exact periodization (axis-aligned directions)
};

// Arrival times T(l e + y) of the half-space solution, on a slab aligned with
// e and periodic transversely.  For lattice-axis directions the medium itself
// is periodized (seam-free); for rotated slabs only the stencil wraps and the
// seam is part of the finite-compute surrogate.
template <int D>
HalfspaceArrival<D> halfspace_arrival(const ReactionHypotheses& hyp, std::uint64_t seed,
                                      const Vec<D>& direction, const Vec<D>& y,
                                      const std::vector<double>& probes,
                                      const BaselineReaction& f0, double c0,
                                      const SlabOptions& opts = {}) {
  hyp.validate();
  if (probes.empty()) throw ConfigError("no probe distances given");
  double max_l = 0.0;
  for (double l : probes) {
    if (l < 1.0) throw ConfigError("probe distances must be >= 1");
    max_l = std::max(max_l, l);
  }
  const auto frame = frame_along<D>(direction);
  const Vec<D> e = frame[0];

  const FrontProfile profile(f0, hyp.theta_star);
  const double horizon =
      opts.horizon > 0.0 ? opts.horizon : 1.25 * max_l / c0 + 8.0 / c0 + 25.0;

  // Support of u0 >= theta1 ends inside the mollification band; the cone from
  // there must clear the forward boundary.
  const double band = profile.natural_radius() * 2.0;  // allow one doubling
  const double fwd = band + speed_cap_c1(hyp) * horizon + speed_cap_kappa1(hyp) + 5.0 * opts.h;
  // Node-aligned back wall so integer probe distances land on nodes.
  const double back = std::ceil((band + opts.back_margin) / opts.h) * opts.h;
  const double width = std::max(2.0, opts.width_cells) * hyp.rho;
  if (std::abs(width / opts.h - std::lround(width / opts.h)) > 1e-9)
    throw ConfigError("transverse width must be a whole number of grid spacings");

  Grid<D> grid;
  grid.h = opts.h;
  grid.bc.fill(BoundaryRule::periodic);
  grid.bc[0] = BoundaryRule::neumann;
  grid.origin[0] = -back;
  grid.n[0] = static_cast<int>(std::lround((back + fwd) / opts.h)) + 1;
  for (int a = 1; a < D; ++a) {
    grid.origin[a] = 0.0;
    // Periodic axes drop the duplicate end node.
    grid.n[a] = static_cast<int>(std::lround(width / opts.h));
  }

  // Physical bounding box of the slab for the field window.
  Box<D> phys;
  for (int a = 0; a < D; ++a) {
    phys.lo[a] = y[a];
    phys.hi[a] = y[a];
  }
  const Box<D> gb = grid.bounds();
  for (int corner = 0; corner < (1 << D); ++corner) {
    Vec<D> xi{};
    for (int a = 0; a < D; ++a) xi[a] = (corner >> a & 1) ? gb.hi[a] : gb.lo[a];
    Vec<D> p = y;
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) p[b] += xi[a] * frame[a][b];
    for (int a = 0; a < D; ++a) {
      phys.lo[a] = std::min(phys.lo[a], p[a]);
      phys.hi[a] = std::max(phys.hi[a], p[a]);
    }
  }
  for (int a = 0; a < D; ++a) {
    phys.lo[a] -= hyp.rho;
    phys.hi[a] += hyp.rho;
  }

  int axis = -1;
  double sign = 0.0;
  const bool aligned = is_axis_aligned<D>(e, axis, sign);
  IgnitionField<D> field = IgnitionField<D>::sample(hyp, phys, seed);
  if (aligned) {
    // Transverse periodization of the medium itself: wrap every lattice axis
    // other than the propagation axis.
    for (int a = 0; a < D; ++a)
      if (a != axis) field.set_wrap(a, true);
  }

  // Front data in slab coordinates: the halfspace {xi_0 <= 0}.
  FrontData<D> data = build_front_data<D>(
      [](const Vec<D>& xi) { return std::max(0.0, xi[0]); }, f0, grid, hyp.theta_star);

  auto to_phys = [&](const Vec<D>& xi) {
    Vec<D> p = y;
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) p[b] += xi[a] * frame[a][b];
    return p;
  };
  Stepper<D> stepper(grid, field,
                     [&](const Vec<D>& xi) { return field.blend_at(to_phys(xi)); });

  // Probe nodes: on the slab axis, transversely at the wrapped image of y.
  std::vector<std::size_t> probe_idx;
  for (double l : probes) {
    std::array<int, D> c{};
    const double fi = (l - grid.origin[0]) / grid.h;
    const long i0 = std::lround(fi);
    if (i0 < 0 || i0 >= grid.n[0] || std::abs(fi - static_cast<double>(i0)) > 1e-9)
      throw ConfigError("probe distance " + std::to_string(l) +
                        " does not land on a slab node");
    c[0] = static_cast<int>(i0);
    for (int a = 1; a < D; ++a) c[a] = grid.n[a] / 2;
    probe_idx.push_back(grid.flat(c));
  }
  stepper.set_probes(probe_idx, 1.0 - hyp.theta_star);

  GridState<D> s = data.state;
  stepper.advance(s, horizon, /*stop_on_probes=*/true);

  HalfspaceArrival<D> out;
  out.probes = probes;
  out.times = stepper.probe_times();
  out.horizon = horizon;
  out.medium_wrapped = aligned;
  return out;
}

// ---------------------------------------------------------------------------
// Estimators.

struct SpeedEstimate {
  double t_bar = 0.0;   // extrapolated mean arrival slope
  double c_star = 0.0;  // 1 / t_bar
  double stderr_c = 0.0;
  std::vector<double> lengths;
  std::vector<double> mean_t_over_l;
  bool medium_wrapped = false;
};

struct EstimateOptions {
  SlabOptions slab;
  double delta = 0.05;  // rate offset in the extrapolation abscissa
  int bootstrap = 200;
  std::uint64_t root_seed = 1;
};

template <int D>
SpeedEstimate estimate_front_speed(const ReactionHypotheses& hyp, const Vec<D>& e,
                                   const std::vector<double>& lengths, int seeds,
                                   const BaselineReaction& f0, double c0,
                                   const EstimateOptions& opts = {}) {
  if (lengths.size() < 3) throw EstimationError("speed ladder needs at least 3 lengths");
  if (seeds < 8) throw EstimationError("speed estimation needs at least 8 seeds");
  const RateExponents ex = rate_exponents(hyp);

  std::vector<std::vector<double>> t_by_seed(static_cast<std::size_t>(seeds));
  std::vector<char> wrapped(static_cast<std::size_t>(seeds), 0);
  parallel_for(static_cast<std::size_t>(seeds), opts.slab.threads, [&](std::size_t s) {
    const std::uint64_t seed = mix(opts.root_seed, seed_tag::speed_lab, s);
    const auto run = halfspace_arrival<D>(hyp, seed, e, Vec<D>{}, lengths, f0, c0, opts.slab);
    for (double t : run.times)
      if (!std::isfinite(t))
        throw EstimationError("a probe was not reached within the horizon");
    t_by_seed[s] = run.times;
    wrapped[s] = run.medium_wrapped ? 1 : 0;
  });

  // Abscissa for the mean-rate extrapolation.
  std::vector<double> xs(lengths.size());
  for (std::size_t j = 0; j < lengths.size(); ++j)
    xs[j] = std::pow(lengths[j], -(1.0 - ex.beta - opts.delta));

  auto intercept_for = [&](const std::vector<std::size_t>& pick) {
    std::vector<double> ys(lengths.size(), 0.0);
    for (std::size_t j = 0; j < lengths.size(); ++j) {
      double m = 0.0;
      for (std::size_t s : pick) m += t_by_seed[s][j] / lengths[j];
      ys[j] = m / static_cast<double>(pick.size());
    }
    return least_squares(xs, ys);
  };

  std::vector<std::size_t> all(static_cast<std::size_t>(seeds));
  for (std::size_t s = 0; s < all.size(); ++s) all[s] = s;
  const LineFit fit = intercept_for(all);
  if (!(fit.intercept > 0.0))
    throw EstimationError("mean arrival slope extrapolated to a nonpositive value");

  SpeedEstimate est;
  est.t_bar = fit.intercept;
  est.c_star = 1.0 / fit.intercept;
  est.lengths = lengths;
  est.medium_wrapped = !wrapped.empty() && wrapped[0];
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    double m = 0.0;
    for (int s = 0; s < seeds; ++s) m += t_by_seed[static_cast<std::size_t>(s)][j] / lengths[j];
    est.mean_t_over_l.push_back(m / seeds);
  }

  SplitMix rng(mix(opts.root_seed, seed_tag::bootstrap));
  std::vector<double> boots;
  boots.reserve(static_cast<std::size_t>(opts.bootstrap));
  for (int b = 0; b < opts.bootstrap; ++b) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(seeds));
    for (auto& p : pick) p = rng.next_below(static_cast<std::uint64_t>(seeds));
    const LineFit bf = intercept_for(pick);
    if (bf.intercept > 0.0) boots.push_back(1.0 / bf.intercept);
  }
  est.stderr_c = boots.size() >= 2 ? sample_std(boots) : 0.0;
  return est;
}

struct FluctuationStats {
  std::vector<double> lengths;
  std::vector<double> mean_t;
  std::vector<double> std_t;
  // tail_freq[k-1][j]: empirical P(|T - mean| >= k std) at lengths[j].
  std::array<std::vector<double>, 3> tail_freq;
  double growth_exponent = 0.0;  // fitted slope of log std vs log l
  double beta = 0.0;             // the exponent in force for these hypotheses
};

template <int D>
FluctuationStats fluctuation_stats(const ReactionHypotheses& hyp, const Vec<D>& e,
                                   const std::vector<double>& lengths, int seeds,
                                   const BaselineReaction& f0, double c0,
                                   const EstimateOptions& opts = {}) {
  if (seeds < 30) throw EstimationError("fluctuation tails need at least 30 seeds per length");
  if (lengths.size() < 2) throw EstimationError("fluctuation scaling needs >= 2 lengths");

  std::vector<std::vector<double>> t_by_seed(static_cast<std::size_t>(seeds));
  parallel_for(static_cast<std::size_t>(seeds), opts.slab.threads, [&](std::size_t s) {
    const std::uint64_t seed = mix(opts.root_seed, seed_tag::speed_lab, 0xF1, s);
    const auto run = halfspace_arrival<D>(hyp, seed, e, Vec<D>{}, lengths, f0, c0, opts.slab);
    for (double t : run.times)
      if (!std::isfinite(t))
        throw EstimationError("a probe was not reached within the horizon");
    t_by_seed[s] = run.times;
  });

  FluctuationStats st;
  st.lengths = lengths;
  st.beta = rate_exponents(hyp).beta;
  std::vector<double> log_l, log_std;
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    std::vector<double> col(static_cast<std::size_t>(seeds));
    for (int s = 0; s < seeds; ++s) col[static_cast<std::size_t>(s)] = t_by_seed[static_cast<std::size_t>(s)][j];
    const double m = mean(col);
    const double sd = sample_std(col);
    st.mean_t.push_back(m);
    st.std_t.push_back(sd);
    for (int k = 1; k <= 3; ++k) {
      int count = 0;
      for (double t : col)
        if (std::abs(t - m) >= k * sd) ++count;
      st.tail_freq[static_cast<std::size_t>(k - 1)].push_back(
          static_cast<double>(count) / static_cast<double>(seeds));
    }
    if (sd > 0.0) {
      log_l.push_back(std::log(lengths[j]));
      log_std.push_back(std::log(sd));
    }
  }
  if (log_l.size() >= 2) st.growth_exponent = least_squares(log_l, log_std).slope;
  return st;
}

// Direction-resolved speed profile.
struct SpeedProfileRow {
  double c_star = 0.0;
  double stderr_c = 0.0;
};

template <int D>
struct SpeedProfile {
  std::vector<Vec<D>> dirs;
  std::vector<SpeedProfileRow> rows;
  double c0 = 0.0, c1 = 0.0;
  double max_adjacent_jump = 0.0;  // recorded modulus of continuity
  bool within_bounds = true;       // c0..c1 with 2 stderr slack

  SpeedFunction<D> as_speed_function() const {
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i].c_star;
    return SpeedFunction<D>(dirs, std::move(v));
  }
};

template <int D>
SpeedProfile<D> speed_profile(const ReactionHypotheses& hyp, const std::vector<Vec<D>>& dirs,
                              const std::vector<double>& lengths, int seeds,
                              const EstimateOptions& opts = {}) {
  const SpeedBounds bounds = speed_bounds(hyp);
  const BaselineReaction f0 = BaselineReaction::build(hyp);
  SpeedProfile<D> prof;
  prof.dirs = dirs;
  prof.rows.resize(dirs.size());
  prof.c0 = bounds.c0;
  prof.c1 = bounds.c1;
  // Directions are the outer loop so each is internally seed-parallel.
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    EstimateOptions dir_opts = opts;
    dir_opts.root_seed = mix(opts.root_seed, seed_tag::speed_lab, 0xD1, i);
    dir_opts.slab.c0_hint = bounds.c0;
    const SpeedEstimate est =
        estimate_front_speed<D>(hyp, dirs[i], lengths, seeds, f0, bounds.c0, dir_opts);
    prof.rows[i] = {est.c_star, est.stderr_c};
    const double slack = 2.0 * est.stderr_c;
    if (est.c_star < bounds.c0 - slack || est.c_star > bounds.c1 + slack)
      prof.within_bounds = false;
  }
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    const double jump = std::abs(prof.rows[i + 1].c_star - prof.rows[i].c_star);
    prof.max_adjacent_jump = std::max(prof.max_adjacent_jump, jump);
  }
  return prof;
}

}  // namespace frontlab
