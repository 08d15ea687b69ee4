// Acceptance suite: one criterion per invocation (1..8, or "all").  Each
// criterion prints exactly one [PASS]/[FAIL] line; the process exits nonzero
// if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/config.hpp"
#include "frontlab/homogenize.hpp"
#include "frontlab/io.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/speed.hpp"
#include "reference_setups.hpp"

using namespace frontlab;
using frontlab_tests::reference_hypotheses;
using frontlab_tests::worked_baseline_hypotheses;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome* out;
  void operator()(bool cond, const std::string& what) const {
    if (!cond) {
      out->pass = false;
      if (!out->detail.empty()) out->detail += "; ";
      out->detail += "FAILED: " + what;
    }
  }
  void note(const std::string& what) const {
    if (!out->detail.empty()) out->detail += "; ";
    out->detail += what;
  }
};

int acceptance_threads() { return std::max(2, default_thread_count()); }

ReactionHypotheses homogeneous_hypotheses(int dim) {
  ReactionHypotheses hyp = reference_hypotheses(dim);
  hyp.amp_max = 1.0;
  hyp.delta_theta = 0.0;
  return hyp;
}

// --------------------------------------------------------------------------
// Criterion 1: the inf-convolution baseline against a brute-force oracle.

Outcome criterion_1() {
  Outcome out;
  Check check{&out};

  SplitMix rng(mix(2026, seed_tag::tests));
  for (int k = 0; k < 5; ++k) {
    ReactionHypotheses hyp;
    hyp.lipschitz = 1.0 + 3.0 * rng.next_unit();
    hyp.theta1 = 0.2 + 0.25 * rng.next_unit();
    hyp.m1 = 1.2 + 2.0 * rng.next_unit();
    hyp.alpha1 = 0.2 + 0.8 * rng.next_unit();
    hyp.ramp_width = 0.1;
    hyp.delta_theta = 0.0;
    const BaselineReaction f0 = BaselineReaction::build(hyp, 4096);
    const auto& u = f0.knots();
    for (std::size_t i = 0; i < u.size(); ++i) {
      double best = f0.envelope_target(u[i]);
      for (std::size_t j = 0; j < u.size(); ++j)
        best = std::min(best, f0.envelope_target(u[j]) + hyp.lipschitz * std::abs(u[i] - u[j]));
      if (std::abs(best - f0.values()[i]) > 1e-12) {
        check(false, "sweep vs brute force gap at set " + std::to_string(k));
        break;
      }
    }
  }

  const BaselineReaction w =
      BaselineReaction::build(worked_baseline_hypotheses(), std::size_t{1} << 16);
  check(std::abs(w(0.77) - 0.02) <= 1e-6, "F0(0.77) = 0.02 to 1e-6");
  check(std::abs(w(0.8) - 0.04) <= 1e-6, "F0(0.8) = 0.04 to 1e-6");
  return out;
}

// --------------------------------------------------------------------------
// Criterion 2: 1-d homogeneous front speed under grid refinement.

Outcome criterion_2() {
  Outcome out;
  Check check{&out};
  const ReactionHypotheses hyp = homogeneous_hypotheses(1);
  const BaselineReaction f0 = BaselineReaction::build(hyp);
  auto f_hom = [&hyp](double u) {
    const double s = smoothstep((u - hyp.theta1) / hyp.ramp_width);
    return hyp.alpha1 * (1.0 - u) * (1.0 - u) * s;
  };

  const double domain = 240.0;
  const double c_h = tracked_front_speed(f_hom, f0, hyp.lipschitz, hyp.theta_star, 0.2, domain);
  const double c_h2 = tracked_front_speed(f_hom, f0, hyp.lipschitz, hyp.theta_star, 0.1, domain);
  const double c_h4 = tracked_front_speed(f_hom, f0, hyp.lipschitz, hyp.theta_star, 0.05, domain);

  const double order = std::log2(std::abs(c_h - c_h2) / std::abs(c_h2 - c_h4));
  const double c_ref = c_h4 + (c_h4 - c_h2) / 3.0;

  const SpeedBounds bounds = speed_bounds(hyp);
  const double c1 = 2.0 * std::sqrt(hyp.lipschitz);  // d = 1

  std::ostringstream os;
  os << "speeds(h,h/2,h/4)=(" << c_h << "," << c_h2 << "," << c_h4 << ") order=" << order
     << " c0=" << bounds.c0 << " c1=" << c1;
  check.note(os.str());
  check(order >= 1.8, "Richardson order >= 1.8");
  check(c_ref >= bounds.c0 * (1.0 - 0.02), "measured speed >= c0 (1 - 0.02)");
  check(c_ref <= c1, "measured speed <= c1 = 2 sqrt(M)");
  return out;
}

// --------------------------------------------------------------------------
// Criterion 3: discrete comparison principle, 200 random ordered pairs.

template <int D>
bool ordered_pairs_stay_ordered(int pairs, std::uint64_t salt, std::string* fail) {
  const ReactionHypotheses hyp = reference_hypotheses(D);
  Box<D> box;
  for (int a = 0; a < D; ++a) {
    box.lo[a] = 0.0;
    box.hi[a] = D == 1 ? 64.0 : 20.0;
  }
  const Grid<D> grid = Grid<D>::cover(box, 0.5);
  Box<D> fbox = box;
  for (int a = 0; a < D; ++a) {
    fbox.lo[a] -= 1.0;
    fbox.hi[a] += 1.0;
  }

  std::vector<char> ok(static_cast<std::size_t>(pairs), 1);
  parallel_for(static_cast<std::size_t>(pairs), acceptance_threads(), [&](std::size_t p) {
    const auto field =
        IgnitionField<D>::sample(hyp, fbox, mix(salt, static_cast<std::uint64_t>(p)));
    SplitMix rng(mix(salt, 0x77, p));
    GridState<D> lo(grid), hi(grid);
    for (std::size_t i = 0; i < lo.u.size(); ++i) {
      const double a = rng.next_unit();
      const double b = rng.next_unit();
      lo.u[i] = std::min(a, b);
      hi.u[i] = std::max(a, b);
    }
    Stepper<D> st_lo(grid, field), st_hi(grid, field);
    const double dt = st_lo.dt();
    for (int leg = 0; leg < 10; ++leg) {
      const double t_end = dt * 100.0 * (leg + 1);
      st_lo.advance(lo, t_end);
      st_hi.advance(hi, t_end);
      for (std::size_t i = 0; i < lo.u.size(); ++i)
        if (lo.u[i] > hi.u[i] + 1e-10) {
          ok[p] = 0;
          return;
        }
    }
  });
  for (int p = 0; p < pairs; ++p)
    if (!ok[static_cast<std::size_t>(p)]) {
      *fail = "pair " + std::to_string(p) + " in d = " + std::to_string(D);
      return false;
    }
  return true;
}

Outcome criterion_3() {
  Outcome out;
  Check check{&out};
  std::string fail;
  check(ordered_pairs_stay_ordered<1>(100, 31, &fail), "ordering lost: " + fail);
  check(ordered_pairs_stay_ordered<2>(100, 32, &fail), "ordering lost: " + fail);
  return out;
}

// --------------------------------------------------------------------------
// Criterion 4: geometry suite.

ConvexBody<2> random_body_2d(std::uint64_t seed) {
  SplitMix rng(mix(seed, seed_tag::tests));
  std::vector<Vec<2>> pts;
  const int n = 5 + static_cast<int>(rng.next_below(10));
  for (int i = 0; i < n; ++i)
    pts.push_back({-2.0 + 4.0 * rng.next_unit(), -2.0 + 4.0 * rng.next_unit()});
  return ConvexBody<2>::from_points(pts, direction_grid<2>(256));
}

SpeedFunction<2> random_speed_2d(std::uint64_t seed, double lo, double hi) {
  SplitMix rng(mix(seed, seed_tag::tests, 2));
  const double phase = 2.0 * M_PI * rng.next_unit();
  const double amp = rng.next_unit();
  const auto dirs = direction_grid<2>(256);
  std::vector<double> v(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double phi = std::atan2(dirs[i][1], dirs[i][0]);
    v[i] = lo + (hi - lo) * (0.5 + 0.5 * amp * std::sin(3.0 * phi + phase));
  }
  return SpeedFunction<2>(dirs, std::move(v));
}

Outcome criterion_4() {
  Outcome out;
  Check check{&out};
  SplitMix rng(mix(4, seed_tag::tests));

  // Semigroup + bracket sandwich on 50 random instances.
  for (int k = 0; k < 50; ++k) {
    const auto body = random_body_2d(1000 + static_cast<std::uint64_t>(k));
    const double c_lo = 0.5 + 0.5 * rng.next_unit();
    const double c_hi = c_lo + 0.2 + rng.next_unit();
    const auto c = random_speed_2d(2000 + static_cast<std::uint64_t>(k), c_lo, c_hi);
    const double t = 2.0 * rng.next_unit();
    const double s = 2.0 * rng.next_unit();

    const auto once = theta_set(body, c, t + s);
    const auto twice = theta_set(theta_set(body, c, t), c, s);
    const double grid_tol =
        2.0 * angular_resolution<2>(body.dirs()) * std::max(1.0, once.diameter_estimate());
    if (support_gap(once, twice) > grid_tol || hausdorff(once, twice) > grid_tol) {
      check(false, "semigroup gap at instance " + std::to_string(k));
      break;
    }
    if (!support_subset(dilate(body, c_lo * t), theta_set(body, c, t), 1e-12) ||
        !support_subset(theta_set(body, c, t), dilate(body, c_hi * t), 1e-12)) {
      check(false, "bracket sandwich at instance " + std::to_string(k));
      break;
    }
  }

  // Regularization conclusions (i)-(iii) on 20 random instances.
  for (int k = 0; k < 20; ++k) {
    const auto body = random_body_2d(3000 + static_cast<std::uint64_t>(k));
    const auto c = random_speed_2d(4000 + static_cast<std::uint64_t>(k), 0.7, 1.7);
    const double r = 0.1 + 0.2 * rng.next_unit();
    const double horizon = 2.0 * r / c.min_value() + 0.3 + rng.next_unit();
    const double tol =
        2.0 * angular_resolution<2>(body.dirs()) * std::max(1.0, body.diameter_estimate());
    try {
      const auto reg = regularize(body, c, r, horizon);
      bool ok = true;
      for (std::size_t i = 0; i < c.values().size(); ++i)
        if (reg.c_prime.values()[i] > c.values()[i] + 1e-12) ok = false;  // (i)
      if (!support_subset(reg.a_prime, dilate(body, r), tol)) ok = false;  // (ii) first half
      const auto lhs = theta_set(body, c, horizon);
      const auto rhs = dilate(theta_set(reg.a_prime, reg.c_prime, horizon),
                              c.max_value() * r / c.min_value());
      if (!support_subset(lhs, rhs, tol)) ok = false;  // (ii) second half
      for (double t : {0.0, 0.5 * horizon, horizon}) {  // (iii)
        const auto slice = theta_set(reg.a_prime, reg.c_prime, t);
        const auto ball_check = interior_ball_check(slice, r * (1.0 - tol), tol * r);
        if (!ball_check.pass) ok = false;
      }
      if (!ok) {
        check(false, "regularization conclusions at instance " + std::to_string(k));
        break;
      }
    } catch (const std::exception& e) {
      check(false, std::string("regularization threw: ") + e.what());
      break;
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// Criterion 5: fluctuation scaling at desk scale (the quantitative core).

std::string fluctuation_report(const FluctuationStats& st) {
  std::ostringstream os;
  os << "beta=" << format_number(st.beta) << " b_hat=" << format_number(st.growth_exponent);
  for (std::size_t j = 0; j < st.lengths.size(); ++j)
    os << " l=" << format_number(st.lengths[j]) << " mean=" << format_number(st.mean_t[j])
       << " std=" << format_number(st.std_t[j]) << " tails=" << format_number(st.tail_freq[0][j])
       << "/" << format_number(st.tail_freq[1][j]) << "/" << format_number(st.tail_freq[2][j]);
  return os.str();
}

FluctuationStats run_criterion_5_core(std::uint64_t root_seed) {
  const ReactionHypotheses hyp = reference_hypotheses(2);
  const ReactionHypotheses hyp1 = reference_hypotheses(1);
  const SpeedBounds bounds = speed_bounds(hyp1);
  const BaselineReaction f0 = BaselineReaction::build(hyp);
  EstimateOptions opts;
  opts.slab.threads = acceptance_threads();
  opts.root_seed = root_seed;
  return fluctuation_stats<2>(hyp, {1.0, 0.0}, {20.0, 40.0, 80.0}, 30, f0, bounds.c0, opts);
}

Outcome criterion_5() {
  Outcome out;
  Check check{&out};
  const FluctuationStats st = run_criterion_5_core(501);
  check.note(fluctuation_report(st));
  check(st.beta == 0.75, "beta = 3/4 for m1 = 2 finite range");
  check(st.growth_exponent <= 0.85, "fitted std growth exponent <= 0.85");
  for (std::size_t j = 0; j + 1 < st.lengths.size(); ++j)
    check(st.std_t[j + 1] / st.mean_t[j + 1] < st.std_t[j] / st.mean_t[j],
          "std/mean strictly decreasing along the ladder");
  return out;
}

// --------------------------------------------------------------------------
// Criterion 6: speed-profile sanity over 32 directions.

Outcome criterion_6() {
  Outcome out;
  Check check{&out};
  const ReactionHypotheses hyp = reference_hypotheses(2);
  const auto dirs = direction_grid<2>(32);

  EstimateOptions opts;
  opts.slab.threads = acceptance_threads();
  opts.root_seed = 601;
  const SpeedProfile<2> prof =
      speed_profile<2>(hyp, dirs, {12.0, 24.0, 48.0}, 8, opts);
  double cmin = 1e300, cmax = 0.0;
  for (const auto& row : prof.rows) {
    cmin = std::min(cmin, row.c_star);
    cmax = std::max(cmax, row.c_star);
  }
  std::ostringstream os;
  os << "c* range [" << cmin << ", " << cmax << "] bracket [" << prof.c0 << ", " << prof.c1
     << "] max_adjacent_jump=" << prof.max_adjacent_jump;
  check.note(os.str());
  check(prof.within_bounds, "c*(e) within [c0 - 2 se, c1 + 2 se] for all 32 directions");

  // Homogeneous-field isotropy within 2%: difference-quotient speeds on the
  // ladder cancel the setup offsets.
  const ReactionHypotheses hom = homogeneous_hypotheses(2);
  const ReactionHypotheses hom1 = homogeneous_hypotheses(1);
  const SpeedBounds hb = speed_bounds(hom1);
  const BaselineReaction hf0 = BaselineReaction::build(hom);
  std::vector<double> speeds(dirs.size());
  parallel_for(dirs.size(), acceptance_threads(), [&](std::size_t i) {
    const auto run =
        halfspace_arrival<2>(hom, 1, dirs[i], {0.0, 0.0}, {16.0, 40.0}, hf0, hb.c0);
    speeds[i] = (40.0 - 16.0) / (run.times[1] - run.times[0]);
  });
  double smin = 1e300, smax = 0.0, smean = 0.0;
  for (double s : speeds) {
    smin = std::min(smin, s);
    smax = std::max(smax, s);
    smean += s;
  }
  smean /= static_cast<double>(speeds.size());
  std::ostringstream os2;
  os2 << "homogeneous isotropy spread " << (smax - smin) / smean;
  check.note(os2.str());
  check(smax / smean <= 1.02 && smin / smean >= 0.98, "homogeneous isotropy within 2%");
  return out;
}

// --------------------------------------------------------------------------
// Criterion 7: homogenization convergence, d = 1 ladder plus a d = 2 smoke.

ExperimentConfig criterion_7_config_d1(std::uint64_t root_seed) {
  ExperimentConfig cfg;
  cfg.hyp = reference_hypotheses(1);
  cfg.theta = 0.5;
  cfg.t0 = 1.0;
  cfg.eps_ladder = {0.2, 0.1, 0.05, 0.02};
  cfg.seeds_per_eps = 20;
  cfg.checkpoint_count = 8;
  cfg.body_spec = "box:-1,1";
  cfg.profile_lengths = {12.0, 24.0, 48.0, 96.0};
  cfg.profile_seeds = 16;
  cfg.threads = acceptance_threads();
  cfg.root_seed = root_seed;
  return cfg;
}

std::string rows_fingerprint(const std::vector<InclusionRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows)
    os << format_number(r.eps) << "," << r.seed_index << "," << format_number(r.t) << ","
       << r.lower_ok << "," << r.upper_ok << ","
       << (std::isfinite(r.d_h) ? format_number(r.d_h) : "inf") << "\n";
  return os.str();
}

Outcome criterion_7() {
  Outcome out;
  Check check{&out};
  const ExperimentConfig cfg = criterion_7_config_d1(701);
  const auto rep = run_homogenization<1>(cfg);

  // Median gap strictly decreasing in eps at every checkpoint.
  const std::vector<double> ts = cfg.checkpoint_times(cfg.eps_ladder.front());
  for (int k = 0; k < cfg.checkpoint_count; ++k) {
    double prev = 1e300;
    for (double eps : cfg.eps_ladder) {
      const double t = cfg.checkpoint_times(eps)[static_cast<std::size_t>(k)];
      std::vector<double> v;
      for (const auto& r : rep.rows)
        if (r.eps == eps && std::abs(r.t - t) < 1e-12 && std::isfinite(r.d_h))
          v.push_back(r.d_h);
      const double m = median(v);
      if (!(m < prev)) {
        check(false, "median d_H not strictly decreasing at checkpoint " + std::to_string(k) +
                         " (eps=" + format_number(eps) + ": " + format_number(m) +
                         " vs " + format_number(prev) + ")");
      }
      prev = m;
    }
  }

  check(rep.fit.sigma_hat > 0.0, "fitted rate positive");
  check(rep.fit.ci_lo > 0.0, "bootstrap CI excludes zero");
  std::ostringstream os;
  os << "sigma_hat=" << rep.fit.sigma_hat << " CI=[" << rep.fit.ci_lo << "," << rep.fit.ci_hi
     << "] margin(0.02)=" << rep.margin_smallest_eps;
  for (const auto& f : rep.frequencies) os << " freq(" << f.eps << ")=" << f.frequency;
  check.note(os.str());

  for (const auto& f : rep.frequencies)
    if (f.eps == cfg.eps_ladder.back())
      check(f.frequency >= 0.95, "success frequency at the smallest eps >= 0.95");

  // d = 2 smoke: inclusions hold for at least 90% of 10 seeds.
  ExperimentConfig smoke;
  smoke.hyp = reference_hypotheses(2);
  smoke.theta = 0.5;
  smoke.t0 = 1.0;
  smoke.eps_ladder = {0.2, 0.1};
  smoke.seeds_per_eps = 10;
  smoke.checkpoint_count = 8;
  smoke.body_spec = "ball:1.0";
  smoke.profile_lengths = {12.0, 24.0, 48.0};
  smoke.profile_seeds = 8;
  smoke.threads = acceptance_threads();
  smoke.root_seed = 702;
  const auto rep2 = run_homogenization<2>(smoke);
  std::ostringstream os2;
  os2 << "d=2 smoke:";
  for (const auto& f : rep2.frequencies) {
    os2 << " freq(" << f.eps << ")=" << f.frequency;
    check(f.frequency >= 0.9, "d=2 smoke inclusion frequency >= 0.9 at eps=" +
                                  format_number(f.eps));
  }
  check.note(os2.str());
  return out;
}

// --------------------------------------------------------------------------
// Criterion 8: determinism of criteria 5 and 7 under a fixed root seed.

Outcome criterion_8() {
  Outcome out;
  Check check{&out};

  const std::string fl_a = fluctuation_report(run_criterion_5_core(801));
  const std::string fl_b = fluctuation_report(run_criterion_5_core(801));
  check(fl_a == fl_b, "criterion 5 rerun byte-identical");

  const ExperimentConfig cfg = criterion_7_config_d1(802);
  const std::string rows_a = rows_fingerprint(run_homogenization<1>(cfg).rows);
  const std::string rows_b = rows_fingerprint(run_homogenization<1>(cfg).rows);
  check(rows_a == rows_b, "criterion 7 rerun byte-identical");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "all") == 0) {
      which = {1, 2, 3, 4, 5, 6, 7, 8};
      break;
    }
    which.push_back(std::atoi(argv[i]));
  }
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8};

  static const char* kNames[] = {
      "",
      "baseline envelope matches the brute-force oracle and worked values",
      "1-d homogeneous front speed: Richardson order and speed bracket",
      "discrete comparison principle on 200 random ordered pairs",
      "geometry suite: semigroup, bracket sandwich, regularization",
      "fluctuation scaling: growth exponent and concentration",
      "speed-profile sanity over 32 directions",
      "homogenization convergence (d=1 ladder, d=2 smoke)",
      "determinism: reruns are byte-identical",
  };

  bool all_pass = true;
  for (int n : which) {
    if (n < 1 || n > 8) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    switch (n) {
      case 1: out = criterion_1(); break;
      case 2: out = criterion_2(); break;
      case 3: out = criterion_3(); break;
      case 4: out = criterion_4(); break;
      case 5: out = criterion_5(); break;
      case 6: out = criterion_6(); break;
      case 7: out = criterion_7(); break;
      case 8: out = criterion_8(); break;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n", out.pass ? "PASS" : "FAIL", n,
                kNames[n], secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
