#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/geometry.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/solver.hpp"
#include "frontlab/speed.hpp"
#include "frontlab/stats.hpp"

namespace frontlab {

// ---------------------------------------------------------------------------
// Scaled solves: the rescaled equation is solved through the relabeling
// u_eps(t, x) = u(t/eps, x/eps), so the unscaled arrays ARE the scaled fields,
// reindexed.  Masks are stored on the unscaled grid; scaled coordinates are
// eps * node position, exactly.

struct ScaledSolveOptions {
  double h_unscaled = 0.25;  // h_scaled = eps * h_unscaled (the default matches eps/4)
  double memory_cap_mb = 4096.0;
  double extra_pad = 1.0;  // beyond the c1 T0 cone, in scaled units
};

// Unscaled grid covering (1/eps) B_{c1 T0 + pad}(A).
template <int D>
Grid<D> scaled_solve_grid(const ReactionHypotheses& hyp, double eps, const ConvexBody<D>& a,
                          double t0, const ScaledSolveOptions& opts = {}) {
  const double reach = speed_cap_c1(hyp) * t0 + opts.extra_pad;
  Box<D> scaled;
  for (int d = 0; d < D; ++d) {
    // Axis extents of the body from its support in the axis directions.
    double h_plus = std::numeric_limits<double>::infinity();
    double h_minus = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.dirs().size(); ++i) {
      const double ed = a.dirs()[i][d];
      if (ed > 0.999999) h_plus = std::min(h_plus, a.support()[i]);
      if (ed < -0.999999) h_minus = std::min(h_minus, a.support()[i]);
    }
    if (!std::isfinite(h_plus) || !std::isfinite(h_minus))
      throw ConfigError("the body's direction grid must contain the +/- axis directions");
    scaled.lo[d] = -h_minus - reach;
    scaled.hi[d] = h_plus + reach;
  }
  Box<D> unscaled;
  for (int d = 0; d < D; ++d) {
    unscaled.lo[d] = scaled.lo[d] / eps;
    unscaled.hi[d] = scaled.hi[d] / eps;
  }
  Grid<D> grid = Grid<D>::cover(unscaled, opts.h_unscaled);
  const double mb = static_cast<double>(grid.size()) * 8.0 * 4.0 / (1024.0 * 1024.0);
  if (mb > opts.memory_cap_mb)
    throw ConfigError("scaled solve needs about " + std::to_string(mb) +
                      " MiB, above the configured cap; raise the cap or eps");
  return grid;
}

template <int D>
struct ScaledCheckpoint {
  double t = 0.0;  // scaled time
  LevelSetMask<D> mask;
};

template <int D>
struct ScaledSolveResult {
  double eps = 0.0;
  Grid<D> grid;
  std::vector<ScaledCheckpoint<D>> checkpoints;
  double min_step_delta = 0.0;
  double mollification_width = 0.0;  // unscaled
};

// Initial data (1 - theta1) * taper(outer distance / width), width = eps^(nu-1)
// unscaled, so the scaled data sits inside the required sandwich.
template <int D>
GridState<D> scaled_initial_data(const ReactionHypotheses& hyp, double eps,
                                 const ConvexBody<D>& a, double nu, const Grid<D>& grid) {
  GridState<D> s(grid);
  const double width = std::pow(eps, nu - 1.0);
  const double amp = 1.0 - hyp.theta1;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    Vec<D> xs = grid.pos(i);
    for (int d = 0; d < D; ++d) xs[d] *= eps;
    const double gap = std::max(0.0, a.membership_margin(xs)) / eps;  // unscaled
    s.u[i] = gap >= width ? 0.0 : amp * (1.0 - smoothstep(gap / width));
  }
  return s;
}

template <int D>
ScaledSolveResult<D> scaled_solve(const IgnitionField<D>& field, double eps,
                                  const ConvexBody<D>& a, double nu, double theta,
                                  const std::vector<double>& checkpoints,
                                  const ScaledSolveOptions& opts = {},
                                  const Grid<D>* grid_override = nullptr) {
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("level theta must sit in (0,1)");
  const ReactionHypotheses& hyp = field.hypotheses();
  double t0 = 0.0;
  for (double t : checkpoints) {
    if (!(t > 0.0)) throw ConfigError("checkpoints must be positive");
    t0 = std::max(t0, t);
  }
  const Grid<D> grid = grid_override ? *grid_override
                                     : scaled_solve_grid<D>(hyp, eps, a, t0, opts);
  ScaledSolveResult<D> out;
  out.eps = eps;
  out.grid = grid;
  out.mollification_width = std::pow(eps, nu - 1.0);

  GridState<D> s = scaled_initial_data<D>(hyp, eps, a, nu, grid);
  Stepper<D> stepper(grid, field);
  for (double t : checkpoints) {
    const AdvanceResult res = stepper.advance(s, t / eps);
    out.min_step_delta = std::min(out.min_step_delta, res.min_step_delta);
    ScaledCheckpoint<D> cp;
    cp.t = t;
    cp.mask = superlevel_set(s, theta);
    out.checkpoints.push_back(std::move(cp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inclusion verdicts.

struct InclusionRow {
  double eps = 0.0;
  std::uint64_t seed_index = 0;
  double t = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  double d_h = 0.0;  // +inf when the level set is empty
};

// Both sides of the homogenized-limit event at one checkpoint: the eroded
// limit set must fill the mask, the mask must stay in the dilated limit set.
template <int D>
InclusionRow verify_inclusions(const LevelSetMask<D>& mask, double eps,
                               const ConvexBody<D>& theta_t, double margin) {
  if (!(margin > eps * mask.grid.h))
    throw ConfigError("inclusion margin must exceed the scaled grid spacing");
  InclusionRow row;
  row.eps = eps;

  const ConvexBody<D> eroded = erode(theta_t, margin);
  const ConvexBody<D> dilated = dilate(theta_t, margin);
  bool lower_ok = true, upper_ok = true;
  if (!eroded.empty() && mask.count == 0) lower_ok = false;
  for (std::size_t i = 0; i < mask.in.size() && (lower_ok || upper_ok); ++i) {
    Vec<D> xs = mask.grid.pos(i);
    for (int d = 0; d < D; ++d) xs[d] *= eps;
    if (mask.in[i]) {
      if (upper_ok && !dilated.contains(xs)) upper_ok = false;
    } else {
      if (lower_ok && !eroded.empty() && eroded.contains(xs)) lower_ok = false;
    }
  }
  row.lower_ok = lower_ok;
  row.upper_ok = upper_ok;

  if (mask.count == 0) {
    row.d_h = std::numeric_limits<double>::infinity();
    return row;
  }
  // Hausdorff gap between the mask boundary and the limit-set boundary.
  const std::vector<Vec<D>> body_bd = boundary_samples(theta_t);
  double worst = 0.0;
  // Mask boundary nodes to the body boundary: for convex bodies the distance
  // from x to the boundary is |margin gap| inside and the plane gap outside.
  std::vector<Vec<D>> mask_bd;
  mask_bd.reserve(mask.boundary.size());
  for (std::size_t idx : mask.boundary) {
    Vec<D> xs = mask.grid.pos(idx);
    for (int d = 0; d < D; ++d) xs[d] *= eps;
    mask_bd.push_back(xs);
    worst = std::max(worst, std::abs(theta_t.membership_margin(xs)));
  }
  if (mask_bd.empty()) {
    // The mask has no interior boundary (fills the grid); fall back to node
    // sweep against the body boundary samples.
    row.d_h = std::numeric_limits<double>::infinity();
    return row;
  }
  for (const auto& b : body_bd) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : mask_bd) best = std::min(best, norm<D>(sub<D>(b, m)));
    worst = std::max(worst, best);
  }
  row.d_h = worst;
  return row;
}

// ---------------------------------------------------------------------------
// Rate fit and success frequencies.

struct RateFit {
  double sigma_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::vector<double> eps_values;
  std::vector<double> medians;
};

inline RateFit rate_fit(const std::vector<InclusionRow>& rows, int bootstrap = 200,
                        std::uint64_t seed = 1) {
  std::vector<double> eps_values;
  for (const auto& r : rows)
    if (std::find(eps_values.begin(), eps_values.end(), r.eps) == eps_values.end())
      eps_values.push_back(r.eps);
  std::sort(eps_values.begin(), eps_values.end(), std::greater<double>());

  auto median_for = [&rows](double eps, const std::vector<std::uint64_t>* pick) {
    std::vector<double> v;
    for (const auto& r : rows) {
      if (r.eps != eps || !std::isfinite(r.d_h)) continue;
      if (pick) {
        std::size_t mult = 0;
        for (std::uint64_t p : *pick)
          if (p == r.seed_index) ++mult;
        for (std::size_t k = 0; k < mult; ++k) v.push_back(r.d_h);
      } else {
        v.push_back(r.d_h);
      }
    }
    return v.empty() ? std::numeric_limits<double>::quiet_NaN() : median(v);
  };

  RateFit fit;
  std::vector<double> lx, ly;
  for (double e : eps_values) {
    const double m = median_for(e, nullptr);
    if (!std::isfinite(m) || m <= 0.0) continue;
    fit.eps_values.push_back(e);
    fit.medians.push_back(m);
    lx.push_back(std::log(e));
    ly.push_back(std::log(m));
  }
  if (lx.size() < 3) throw EstimationError("rate fit needs at least 3 usable epsilon values");
  fit.sigma_hat = least_squares(lx, ly).slope;

  // Cluster bootstrap over seed indices.
  std::vector<std::uint64_t> seeds;
  for (const auto& r : rows)
    if (std::find(seeds.begin(), seeds.end(), r.seed_index) == seeds.end())
      seeds.push_back(r.seed_index);
  SplitMix rng(mix(seed, seed_tag::bootstrap, 7));
  std::vector<double> slopes;
  for (int b = 0; b < bootstrap; ++b) {
    std::vector<std::uint64_t> pick(seeds.size());
    for (auto& p : pick) p = seeds[rng.next_below(seeds.size())];
    std::vector<double> bx, by;
    for (double e : fit.eps_values) {
      const double m = median_for(e, &pick);
      if (std::isfinite(m) && m > 0.0) {
        bx.push_back(std::log(e));
        by.push_back(std::log(m));
      }
    }
    if (bx.size() >= 3) slopes.push_back(least_squares(bx, by).slope);
  }
  if (slopes.size() >= 20) {
    fit.ci_lo = percentile(slopes, 0.025);
    fit.ci_hi = percentile(slopes, 0.975);
  } else {
    fit.ci_lo = fit.ci_hi = fit.sigma_hat;
  }
  return fit;
}

struct SuccessRow {
  double eps = 0.0;
  double frequency = 0.0;   // fraction of seeds with all checkpoints doubly included
  int seeds = 0;
  double asymptotic_bound = 0.0;  // 1 - exp(-eps^(-2 sigma)), context only
};

inline SuccessRow success_probability(const std::vector<InclusionRow>& rows, double eps,
                                      double sigma) {
  std::vector<std::uint64_t> seeds;
  for (const auto& r : rows)
    if (r.eps == eps &&
        std::find(seeds.begin(), seeds.end(), r.seed_index) == seeds.end())
      seeds.push_back(r.seed_index);
  if (seeds.size() < 10)
    throw EstimationError("success probability needs at least 10 seeds per epsilon");
  int good = 0;
  for (std::uint64_t s : seeds) {
    bool ok = true;
    for (const auto& r : rows)
      if (r.eps == eps && r.seed_index == s && !(r.lower_ok && r.upper_ok)) ok = false;
    good += ok ? 1 : 0;
  }
  SuccessRow out;
  out.eps = eps;
  out.seeds = static_cast<int>(seeds.size());
  out.frequency = static_cast<double>(good) / static_cast<double>(seeds.size());
  out.asymptotic_bound = 1.0 - std::exp(-std::pow(eps, -2.0 * sigma));
  return out;
}

// ---------------------------------------------------------------------------
// The cube-grid probe device: one point from each cube of side r / sqrt(d)
// meeting the region; every region point is then within r of a probe.

template <int D>
std::vector<Vec<D>> cube_probe_set(const std::function<bool(const Vec<D>&)>& region,
                                   const Box<D>& bbox, double r) {
  if (!(r > 0.0)) throw DomainError("cube probes need r > 0");
  const double side = r / std::sqrt(static_cast<double>(D));
  std::array<std::int64_t, D> lo{}, hi{};
  for (int d = 0; d < D; ++d) {
    lo[d] = static_cast<std::int64_t>(std::floor(bbox.lo[d] / side));
    hi[d] = static_cast<std::int64_t>(std::floor(bbox.hi[d] / side));
  }
  std::vector<Vec<D>> probes;
  std::array<std::int64_t, D> c = lo;
  const int sub = 5;  // per-axis subsamples when hunting a witness
  while (true) {
    bool found = false;
    Vec<D> witness{};
    std::array<int, D> s{};
    while (!found) {
      Vec<D> p{};
      for (int d = 0; d < D; ++d)
        p[d] = (static_cast<double>(c[d]) + (s[d] + 0.5) / sub) * side;
      if (region(p)) {
        found = true;
        witness = p;
        break;
      }
      int d = D - 1;
      while (d >= 0) {
        if (++s[d] < sub) break;
        s[d] = 0;
        --d;
      }
      if (d < 0) break;
    }
    if (found) probes.push_back(witness);

    int d = D - 1;
    while (d >= 0) {
      if (++c[d] <= hi[d]) break;
      c[d] = lo[d];
      --d;
    }
    if (d < 0) break;
  }
  return probes;
}

// ---------------------------------------------------------------------------
// End-to-end experiment.

// Number-list and body-descriptor parsing shared by the config layer and the
// command line ("ball:r", "ball:c...,r", "box:lo,hi per axis").
inline std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = item.find_last_not_of(" \t");
    item = item.substr(a, b - a + 1);
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw ConfigError("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

template <int D>
ConvexBody<D> make_body(const std::string& spec, std::vector<Vec<D>> dirs) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("bad body spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> p = parse_number_list(spec.substr(colon + 1));
  if (kind == "ball") {
    if (p.size() == 1) return ConvexBody<D>::ball(Vec<D>{}, p[0], std::move(dirs));
    if (p.size() == static_cast<std::size_t>(D) + 1) {
      Vec<D> c{};
      for (int a = 0; a < D; ++a) c[a] = p[static_cast<std::size_t>(a)];
      return ConvexBody<D>::ball(c, p.back(), std::move(dirs));
    }
    throw ConfigError("ball spec needs 'ball:r' or 'ball:c...,r'");
  }
  if (kind == "box" || kind == "interval") {
    if (p.size() != 2 * static_cast<std::size_t>(D))
      throw ConfigError("box spec needs lo,hi per axis");
    Vec<D> lo{}, hi{};
    for (int a = 0; a < D; ++a) {
      lo[a] = p[static_cast<std::size_t>(2 * a)];
      hi[a] = p[static_cast<std::size_t>(2 * a + 1)];
      if (!(lo[a] < hi[a])) throw ConfigError("box spec needs lo < hi per axis");
    }
    return ConvexBody<D>::box(lo, hi, std::move(dirs));
  }
  throw ConfigError("unknown body kind '" + kind + "'");
}

struct ExperimentConfig {
  ReactionHypotheses hyp;
  double theta = 0.5;
  double t0 = 1.0;
  std::vector<double> eps_ladder = {0.2, 0.1, 0.05};
  int seeds_per_eps = 20;
  int checkpoint_count = 8;
  double c0_floor = -1.0;  // C0; < 0 resolves by theta (paper floor semantics)
  std::string body_spec = "ball:1.0";
  int direction_resolution = 0;  // 0: dimension default
  // Speed-profile estimation settings.
  std::vector<double> profile_lengths = {12.0, 24.0, 48.0};
  int profile_seeds = 8;
  ScaledSolveOptions solve;
  int threads = 1;
  std::uint64_t root_seed = 1;

  void validate() const {
    hyp.validate();
    if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta ∈ (0, 1)");
    if (!(t0 >= 1.0)) throw ConfigError("T0 ≥ 1");
    if (eps_ladder.empty()) throw ConfigError("epsilon ladder is empty");
    double prev = 0.5;
    for (double e : eps_ladder) {
      if (!(e > 0.0 && e < 0.5)) throw ConfigError("epsilon values must sit in (0, 1/2)");
      if (!(e < prev + 1e-15)) throw ConfigError("epsilon ladder must be strictly decreasing");
      prev = e;
    }
    if (seeds_per_eps < 1) throw ConfigError("seeds_per_eps ≥ 1");
    if (checkpoint_count < 1) throw ConfigError("checkpoints ≥ 1");
  }

  int dirs_resolution() const {
    if (direction_resolution > 0) return direction_resolution;
    return hyp.dim == 3 ? 3 : 256;
  }

  // Checkpoint schedule per epsilon.  The time floor is removable for theta
  // below the plateau level, and is the configured (or default 10) multiple
  // of eps otherwise.
  std::vector<double> checkpoint_times(double eps) const {
    double floor_mult = c0_floor;
    if (floor_mult < 0.0) floor_mult = (theta < 1.0 - hyp.theta1) ? 0.0 : 10.0;
    const double start = floor_mult * eps;
    if (!(start < t0))
      throw ConfigError("the time floor C0 eps leaves no checkpoints below T0");
    std::vector<double> ts;
    for (int k = 1; k <= checkpoint_count; ++k)
      ts.push_back(start + (t0 - start) * static_cast<double>(k) / checkpoint_count);
    return ts;
  }
};

template <int D>
struct HomogenizationReport {
  std::vector<InclusionRow> rows;
  std::vector<SuccessRow> frequencies;
  RateFit fit;
  SpeedProfile<D> profile;   // the measured speed standing in for the true one
  double sigma = 0.0;        // margin exponent in force
  double margin_smallest_eps = 0.0;
  int nestedness_violations = 0;
  bool cone_bound_ok = true;  // Gamma(t) inside B_{(c1+1)(t + eps^sigma')}(A)
};

struct JobDiagnostics {
  int nestedness_violations = 0;
  bool cone_bound_ok = true;
};

// One (epsilon, seed) job; pure function of the config and the measured speed.
template <int D>
std::vector<InclusionRow> run_homogenization_job(const ExperimentConfig& cfg,
                                                 const ConvexBody<D>& body,
                                                 const SpeedFunction<D>& c_star,
                                                 std::size_t eps_idx,
                                                 std::uint64_t seed_index,
                                                 JobDiagnostics* diag = nullptr) {
  const RateExponents ex = rate_exponents(cfg.hyp);
  const double eps = cfg.eps_ladder[eps_idx];
  const std::vector<double> ts = cfg.checkpoint_times(eps);
  const Grid<D> grid = scaled_solve_grid<D>(cfg.hyp, eps, body, cfg.t0, cfg.solve);
  Box<D> fbox = grid.bounds();
  for (int d = 0; d < D; ++d) {
    fbox.lo[d] -= cfg.hyp.rho;
    fbox.hi[d] += cfg.hyp.rho;
  }
  const std::uint64_t seed = mix(cfg.root_seed, seed_tag::homogenize, eps_idx, seed_index);
  const IgnitionField<D> field = IgnitionField<D>::sample(cfg.hyp, fbox, seed);
  const ScaledSolveResult<D> sol =
      scaled_solve<D>(field, eps, body, cfg.hyp.nu, cfg.theta, ts, cfg.solve, &grid);

  std::vector<InclusionRow> rows;
  const double margin = std::pow(eps, ex.sigma);
  const double cone_c = speed_cap_c1(cfg.hyp) + 1.0;
  for (std::size_t k = 0; k < sol.checkpoints.size(); ++k) {
    const auto& cp = sol.checkpoints[k];
    InclusionRow row = verify_inclusions<D>(cp.mask, eps, theta_set(body, c_star, cp.t), margin);
    row.seed_index = seed_index;
    row.t = cp.t;
    rows.push_back(row);
    if (!diag) continue;

    // Nestedness across consecutive checkpoints.
    if (k > 0) {
      const auto& prev = sol.checkpoints[k - 1].mask;
      for (std::size_t i = 0; i < prev.in.size(); ++i)
        if (prev.in[i] && !cp.mask.in[i]) {
          ++diag->nestedness_violations;
          break;
        }
    }
    // Upper-bound cone with C = c1 + 1.
    const ConvexBody<D> cone = dilate(body, cone_c * (cp.t + std::pow(eps, ex.sigma_prime)));
    for (std::size_t i = 0; i < cp.mask.in.size(); ++i) {
      if (!cp.mask.in[i]) continue;
      Vec<D> xs = cp.mask.grid.pos(i);
      for (int d = 0; d < D; ++d) xs[d] *= eps;
      if (!cone.contains(xs)) {
        diag->cone_bound_ok = false;
        break;
      }
    }
  }
  return rows;
}

template <int D>
SpeedProfile<D> measure_profile(const ExperimentConfig& cfg, const std::vector<Vec<D>>& dirs) {
  EstimateOptions eopts;
  eopts.slab.threads = cfg.threads;
  eopts.root_seed = mix(cfg.root_seed, seed_tag::speed_lab);
  return speed_profile<D>(cfg.hyp, dirs, cfg.profile_lengths, cfg.profile_seeds, eopts);
}

// Summary statistics over a complete row set.
template <int D>
void summarize_homogenization(const ExperimentConfig& cfg, HomogenizationReport<D>& rep) {
  const RateExponents ex = rate_exponents(cfg.hyp);
  rep.sigma = ex.sigma;
  rep.frequencies.clear();
  for (double e : cfg.eps_ladder)
    rep.frequencies.push_back(success_probability(rep.rows, e, ex.sigma));
  rep.margin_smallest_eps = std::pow(cfg.eps_ladder.back(), ex.sigma);
  if (cfg.eps_ladder.size() >= 3) rep.fit = rate_fit(rep.rows, 200, cfg.root_seed);
}

template <int D>
HomogenizationReport<D> run_homogenization(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.hyp.dim != D) throw ConfigError("config dimension does not match the instantiation");
  const auto dirs = direction_grid<D>(cfg.dirs_resolution());
  const ConvexBody<D> body = make_body<D>(cfg.body_spec, dirs);

  HomogenizationReport<D> rep;
  // Measured speed profile stands in for the unknowable limit speed; the
  // estimation error is quantified separately by its stderr column.
  rep.profile = measure_profile<D>(cfg, dirs);
  const SpeedFunction<D> c_star = rep.profile.as_speed_function();

  struct Job {
    std::size_t eps_idx;
    std::uint64_t seed_index;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < cfg.eps_ladder.size(); ++e)
    for (int s = 0; s < cfg.seeds_per_eps; ++s)
      jobs.push_back({e, static_cast<std::uint64_t>(s)});

  std::vector<std::vector<InclusionRow>> job_rows(jobs.size());
  std::vector<JobDiagnostics> job_diag(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    job_rows[j] = run_homogenization_job<D>(cfg, body, c_star, jobs[j].eps_idx,
                                            jobs[j].seed_index, &job_diag[j]);
  });

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (const auto& r : job_rows[j]) rep.rows.push_back(r);
    rep.nestedness_violations += job_diag[j].nestedness_violations;
    if (!job_diag[j].cone_bound_ok) rep.cone_bound_ok = false;
  }
  summarize_homogenization<D>(cfg, rep);
  return rep;
}

}  // namespace frontlab
