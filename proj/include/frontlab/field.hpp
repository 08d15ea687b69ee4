#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/baseline.hpp"
#include "frontlab/core.hpp"
#include "frontlab/hypotheses.hpp"
#include "frontlab/rng.hpp"

namespace frontlab {

// Compactly supported C^1 bump in the normalized squared radius q = (2r/rho)^2:
// b = (1-q)^2 on q < 1, zero outside.  Peak slope in r is 16/(3*sqrt(3))/rho.
inline double cell_bump_sq(double q) {
  if (q >= 1.0) return 0.0;
  const double t = 1.0 - q;
  return t * t;
}

inline constexpr double kBumpMaxSlope = 3.0792014356780038;  // 16/(3*sqrt(3))

// Sup-norm perturbation attached by long_range_variant: a u-bump with a global
// random sign, which couples arbitrarily distant evaluations (the variant has
// no finite range of dependence) while staying within `amplitude` of the base
// field everywhere.
struct GlobalPerturbation {
  double amplitude = 0.0;
  double u_lo = 0.0;
  double u_hi = 0.0;
  double sign = 1.0;

  double u_mid() const { return 0.5 * (u_lo + u_hi); }
  double eval(double u) const {
    const double half = 0.5 * (u_hi - u_lo);
    const double y = (u - u_mid()) / half;
    const double q = y * y;
    if (q >= 1.0) return 0.0;
    const double t = 1.0 - q;
    return amplitude * sign * t * t;
  }
};

// One sampled medium: per-cell i.i.d. parameters on the lattice rho * Z^d,
// blended by disjoint bumps of radius rho/2.  Parameters are keyed on the
// absolute cell index, so a window translated by a lattice vector reads the
// translated field.
template <int D>
class IgnitionField {
 public:
  // `lattice_offset` shifts the seed stream by a lattice vector: sampling the
  // translated domain with the matching offset yields the translated field,
  // which is the constructive form of stationarity.
  static IgnitionField sample(const ReactionHypotheses& hyp, const Box<D>& domain,
                              std::uint64_t seed,
                              std::array<std::int64_t, D> lattice_offset = {}) {
    hyp.validate();
    if (domain.empty()) throw ConfigError("field domain is empty");
    if (hyp.dim != D) throw ConfigError("hypotheses dimension does not match field dimension");

    // Analytic x-Lipschitz certificate of the blend; sampling refuses any
    // configuration it cannot certify against M.
    const double lip_x = x_lipschitz_bound(hyp);
    if (lip_x > hyp.lipschitz)
      throw ConfigError("field construction not certifiable: x-Lipschitz bound " +
                        std::to_string(lip_x) + " exceeds M = " +
                        std::to_string(hyp.lipschitz));

    IgnitionField f;
    f.hyp_ = hyp;
    f.hyp_.delta_theta = hyp.resolved_delta_theta();
    f.seed_ = seed;
    f.key_offset_ = lattice_offset;
    f.domain_ = domain;
    for (int a = 0; a < D; ++a) {
      f.cell_lo_[a] = static_cast<std::int64_t>(
          std::ceil((domain.lo[a] - 0.5 * hyp.rho) / hyp.rho));
      const std::int64_t hi = static_cast<std::int64_t>(
          std::floor((domain.hi[a] + 0.5 * hyp.rho) / hyp.rho));
      f.cell_count_[a] = std::max<std::int64_t>(1, hi - f.cell_lo_[a] + 1);
      f.wrap_[a] = false;
    }
    std::size_t total = 1;
    for (int a = 0; a < D; ++a) total *= static_cast<std::size_t>(f.cell_count_[a]);
    f.amp_.resize(total);
    f.theta_off_.resize(total);
    std::array<std::int64_t, D> c{};
    for (std::size_t i = 0; i < total; ++i) {
      std::size_t rem = i;
      for (int a = D - 1; a >= 0; --a) {
        c[a] = f.cell_lo_[a] + static_cast<std::int64_t>(rem % f.cell_count_[a]);
        rem /= f.cell_count_[a];
      }
      std::array<std::int64_t, D> key = c;
      for (int a = 0; a < D; ++a) key[a] -= lattice_offset[a];
      const auto p = cell_params(hyp, seed, key);
      f.amp_[i] = p[0];
      f.theta_off_[i] = p[1];
    }
    return f;
  }

  // Cell parameters as a pure function of (seed, absolute cell index).
  static std::array<double, 2> cell_params(const ReactionHypotheses& hyp,
                                           std::uint64_t seed,
                                           const std::array<std::int64_t, D>& c) {
    std::uint64_t k = mix(seed, seed_tag::field_cells);
    for (int a = 0; a < D; ++a) k = mix(k, signed_key(c[a]));
    const double u1 = unit_double(mix(k, 1));
    const double u2 = unit_double(mix(k, 2));
    return {1.0 + (hyp.amp_max - 1.0) * u1, hyp.resolved_delta_theta() * u2};
  }

  static double x_lipschitz_bound(const ReactionHypotheses& hyp) {
    const double gmax = std::pow(1.0 - hyp.theta1, hyp.m1);
    return hyp.alpha1 * gmax * (kBumpMaxSlope / hyp.rho) *
           ((hyp.amp_max - 1.0) +
            hyp.amp_max * kSmoothstepMaxSlope * hyp.resolved_delta_theta() / hyp.ramp_width);
  }

  // Local blend (a(x), theta(x)).  At most one cell bump covers any point.
  std::array<double, 2> blend_at(const Vec<D>& x) const {
    std::array<std::int64_t, D> c{};
    double q = 0.0;
    const double inv = 1.0 / hyp_.rho;
    for (int a = 0; a < D; ++a) {
      c[a] = static_cast<std::int64_t>(std::llround(x[a] * inv));
      const double dx = (x[a] - static_cast<double>(c[a]) * hyp_.rho) * (2.0 * inv);
      q += dx * dx;
    }
    if (q >= 1.0) return {1.0, hyp_.theta1};
    const double b = cell_bump_sq(q);
    const std::size_t i = cell_flat_index(c);
    return {1.0 + b * (amp_[i] - 1.0), hyp_.theta1 + b * theta_off_[i]};
  }

  // f(x, u) = a(x) * alpha1 * (1-u)^m1 * ramp((u - theta(x))/w), plus the
  // optional global perturbation.
  double operator()(const Vec<D>& x, double u) const {
    if (u < 0.0 || u > 1.0) throw DomainError("reaction evaluated outside u in [0,1]");
    const auto [a, th] = blend_at(x);
    double f = a * base_shape(u, th);
    if (perturbation_) f += perturbation_->eval(u);
    return f;
  }

  double base_shape(double u, double theta_local) const {
    const double s = smoothstep((u - theta_local) / hyp_.ramp_width);
    if (s == 0.0) return 0.0;
    const double one_mu = 1.0 - u;
    const double p = (hyp_.m1 == 2.0) ? one_mu * one_mu : std::pow(one_mu, hyp_.m1);
    return hyp_.alpha1 * p * s;
  }

  // Ignition temperature theta_{x,omega} of this realization at x.
  double ignition_temperature(const Vec<D>& x) const { return blend_at(x)[1]; }

  const ReactionHypotheses& hypotheses() const { return hyp_; }
  std::uint64_t seed() const { return seed_; }
  const Box<D>& domain() const { return domain_; }
  const std::optional<GlobalPerturbation>& perturbation() const { return perturbation_; }

  // Transverse periodization: wrap the cell lattice along `axis` with the
  // window's own period.  The wrapped medium is genuinely periodic, so a
  // solver on the matching torus sees a consistent reaction.
  void set_wrap(int axis, bool on) { wrap_[axis] = on; }
  bool wrapped(int axis) const { return wrap_[axis]; }
  std::int64_t cell_lo(int axis) const { return cell_lo_[axis]; }
  std::int64_t cell_count(int axis) const { return cell_count_[axis]; }

  // Cells whose bump can influence evaluations at points of `region`;
  // dependency bookkeeping for the finite-range checks.
  std::vector<std::array<std::int64_t, D>> influencing_cells(const Box<D>& region) const {
    std::array<std::int64_t, D> lo{}, hi{};
    for (int a = 0; a < D; ++a) {
      lo[a] = static_cast<std::int64_t>(std::ceil((region.lo[a] - 0.5 * hyp_.rho) / hyp_.rho));
      hi[a] = static_cast<std::int64_t>(std::floor((region.hi[a] + 0.5 * hyp_.rho) / hyp_.rho));
    }
    std::vector<std::array<std::int64_t, D>> out;
    std::array<std::int64_t, D> c = lo;
    while (true) {
      out.push_back(c);
      int a = D - 1;
      while (a >= 0) {
        if (++c[a] <= hi[a]) break;
        c[a] = lo[a];
        --a;
      }
      if (a < 0) break;
    }
    return out;
  }

  // Sup-norm perturbation supported in u strictly between the ignition ramp
  // and the decay zone; returns the perturbed field.
  IgnitionField long_range_variant(double n) const {
    if (!hyp_.h4) throw ConfigError("long-range variant requires the approximation constants");
    if (n < hyp_.h4->n4) throw ConfigError("long-range variant requires n >= n4");
    const double amp = hyp_.h4->alpha4 * std::pow(n, -hyp_.h4->m4);
    const double u_lo = hyp_.theta1 + hyp_.delta_theta + hyp_.ramp_width;
    const double u_hi = 1.0 - hyp_.theta1;
    // Base field floor on the support; the perturbation must not reach it.
    const double floor = hyp_.alpha1 * std::pow(hyp_.theta1, hyp_.m1);
    if (amp > 0.5 * floor)
      throw ConfigError("perturbation amplitude exceeds half the reaction floor");
    IgnitionField f = *this;
    GlobalPerturbation p;
    p.amplitude = amp;
    p.u_lo = u_lo;
    p.u_hi = u_hi;
    p.sign = (mix(seed_, seed_tag::field_global) & 1u) ? 1.0 : -1.0;
    f.perturbation_ = p;
    return f;
  }

  void save(const std::string& path, std::uint64_t config_hash = 0) const;
  static IgnitionField load(const std::string& path);

 private:
  std::size_t cell_flat_index(std::array<std::int64_t, D> c) const {
    std::size_t i = 0;
    for (int a = 0; a < D; ++a) {
      std::int64_t r = c[a] - cell_lo_[a];
      if (wrap_[a]) {
        r %= cell_count_[a];
        if (r < 0) r += cell_count_[a];
      } else {
        r = std::clamp<std::int64_t>(r, 0, cell_count_[a] - 1);
      }
      i = i * static_cast<std::size_t>(cell_count_[a]) + static_cast<std::size_t>(r);
    }
    return i;
  }

  ReactionHypotheses hyp_;
  std::uint64_t seed_ = 0;
  std::array<std::int64_t, D> key_offset_{};
  Box<D> domain_{};
  std::array<std::int64_t, D> cell_lo_{};
  std::array<std::int64_t, D> cell_count_{};
  std::array<bool, D> wrap_{};
  std::vector<double> amp_;
  std::vector<double> theta_off_;
  std::optional<GlobalPerturbation> perturbation_;
};

// ---------------------------------------------------------------------------
// Hypothesis verification on sample grids.

struct HypothesisViolation {
  std::string check;
  std::array<double, 3> x{};
  double u = 0;
  double detail = 0;
};

struct HypothesisReport {
  bool sign_and_zero_ok = true;       // (a)
  bool decay_zone_ok = true;          // (b)
  bool lipschitz_ok = true;           // (c)
  bool pure_ignition_ok = true;       // (d)
  bool decay_shift_ok = true;         // (e), only when configured
  double max_lipschitz_quotient = 0;
  std::vector<double> eta_grid;
  std::vector<double> xi_hat;  // min_x f(x, theta_x + eta)
  std::vector<HypothesisViolation> violations;

  bool all_ok() const {
    return sign_and_zero_ok && decay_zone_ok && lipschitz_ok && pure_ignition_ok &&
           decay_shift_ok;
  }
};

template <int D>
HypothesisReport verify_hypotheses(const IgnitionField<D>& field, int u_samples = 400,
                                   int x_samples = 400, double lip_tol = 1e-6) {
  if (u_samples < 100 || x_samples < 100)
    throw ConfigError("verify_hypotheses needs at least 100 samples per axis");
  const ReactionHypotheses& hyp = field.hypotheses();
  HypothesisReport rep;

  auto record = [&rep](bool& flag, const std::string& check, const Vec<D>& x, double u,
                       double detail) {
    flag = false;
    HypothesisViolation v;
    v.check = check;
    for (int a = 0; a < D; ++a) v.x[a] = x[a];
    v.u = u;
    v.detail = detail;
    if (rep.violations.size() < 64) rep.violations.push_back(v);
  };

  // Deterministic sample points: a coarse lattice with hashed jitter.
  std::vector<Vec<D>> xs;
  xs.reserve(static_cast<std::size_t>(x_samples));
  const Box<D>& box = field.domain();
  for (int i = 0; i < x_samples; ++i) {
    Vec<D> x{};
    for (int a = 0; a < D; ++a) {
      const double t = unit_double(mix(field.seed(), seed_tag::tests, i, a));
      x[a] = box.lo[a] + t * (box.hi[a] - box.lo[a]);
    }
    xs.push_back(x);
  }

  std::vector<double> us(static_cast<std::size_t>(u_samples) + 1);
  for (int j = 0; j <= u_samples; ++j)
    us[j] = static_cast<double>(j) / static_cast<double>(u_samples);

  const double du = 1.0 / static_cast<double>(u_samples);
  for (const auto& x : xs) {
    double prev = 0.0;
    for (int j = 0; j <= u_samples; ++j) {
      const double u = us[j];
      const double f = field(x, u);
      if (f < 0.0) record(rep.sign_and_zero_ok, "f >= 0", x, u, f);
      if ((u <= hyp.theta1 || u == 1.0) && f != 0.0)
        record(rep.sign_and_zero_ok, "f = 0 outside the reaction zone", x, u, f);
      if (u >= 1.0 - hyp.theta1) {
        const double lower = hyp.alpha1 * std::pow(1.0 - u, hyp.m1);
        if (f < lower - 1e-12)
          record(rep.decay_zone_ok, "f >= alpha1 (1-u)^m1 on the decay zone", x, u, f - lower);
        if (j > 0 && us[j - 1] >= 1.0 - hyp.theta1 && f > prev + 1e-12)
          record(rep.decay_zone_ok, "f nonincreasing on the decay zone", x, u, f - prev);
      }
      if (j > 0) {
        const double q = std::abs(f - prev) / du;
        rep.max_lipschitz_quotient = std::max(rep.max_lipschitz_quotient, q);
        if (q > hyp.lipschitz * (1.0 + lip_tol))
          record(rep.lipschitz_ok, "u-Lipschitz quotient <= M", x, u, q);
      }
      prev = f;
    }
  }

  // x-direction quotients along short segments between consecutive samples.
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const Vec<D>&a = xs[i - 1], &b = xs[i];
    const double dist = norm<D>(sub<D>(b, a));
    if (dist < 1e-9) continue;
    for (double u : {0.3, 0.5, 0.75, 0.9}) {
      const double q = std::abs(field(b, u) - field(a, u)) / dist;
      rep.max_lipschitz_quotient = std::max(rep.max_lipschitz_quotient, q);
      if (q > hyp.lipschitz * (1.0 + lip_tol))
        record(rep.lipschitz_ok, "x-Lipschitz quotient <= M", b, u, q);
    }
  }

  // Pure-ignition margin xi(eta) = min_x f(x, theta_x + eta).
  for (double eta : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    double xi = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& x : xs) {
      const double th = field.ignition_temperature(x);
      if (th + eta >= 1.0 - hyp.theta1) continue;
      any = true;
      xi = std::min(xi, field(x, th + eta));
    }
    if (!any) continue;
    rep.eta_grid.push_back(eta);
    rep.xi_hat.push_back(xi);
    if (!(xi > 0.0))
      record(rep.pure_ignition_ok, "pure-ignition margin positive", xs.front(), eta, xi);
  }

  // Uniform decay under u-shifts, checked only when the constants exist.
  if (hyp.h3) {
    const double m3 = hyp.h3->m3, alpha3 = hyp.h3->alpha3;
    for (const auto& x : xs) {
      for (double eta : {0.05 * hyp.theta1, 0.2 * hyp.theta1, 0.5 * hyp.theta1}) {
        for (double u = 1.0 - 0.5 * hyp.theta1; u <= 1.0 + 1e-12; u += 0.1 * hyp.theta1) {
          const double uu = std::min(u, 1.0);
          const double gap = field(x, uu - eta) - field(x, uu);
          if (gap < alpha3 * std::pow(eta, m3) - 1e-12)
            record(rep.decay_shift_ok, "uniform decay under u-shifts", x, uu, gap);
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Flat binary persistence (little-endian doubles, fixed header).

namespace detail {
inline void write_u64(std::FILE* f, std::uint64_t v) { std::fwrite(&v, 8, 1, f); }
inline void write_i64(std::FILE* f, std::int64_t v) { std::fwrite(&v, 8, 1, f); }
inline void write_f64(std::FILE* f, double v) { std::fwrite(&v, 8, 1, f); }
inline std::uint64_t read_u64(std::FILE* f) {
  std::uint64_t v = 0;
  if (std::fread(&v, 8, 1, f) != 1) throw ConfigError("truncated field file");
  return v;
}
inline std::int64_t read_i64(std::FILE* f) {
  std::int64_t v = 0;
  if (std::fread(&v, 8, 1, f) != 1) throw ConfigError("truncated field file");
  return v;
}
inline double read_f64(std::FILE* f) {
  double v = 0;
  if (std::fread(&v, 8, 1, f) != 1) throw ConfigError("truncated field file");
  return v;
}
}  // namespace detail

template <int D>
void IgnitionField<D>::save(const std::string& path, std::uint64_t config_hash) const {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  const std::uint64_t magic = 0x464c464431ULL + D;  // "FLFD1"+dim
  detail::write_u64(f, magic);
  detail::write_u64(f, config_hash);
  detail::write_u64(f, seed_);
  detail::write_f64(f, hyp_.lipschitz);
  detail::write_f64(f, hyp_.theta1);
  detail::write_f64(f, hyp_.m1);
  detail::write_f64(f, hyp_.alpha1);
  detail::write_f64(f, hyp_.rho);
  detail::write_f64(f, hyp_.nu);
  detail::write_f64(f, hyp_.delta_theta);
  detail::write_f64(f, hyp_.ramp_width);
  detail::write_f64(f, hyp_.amp_max);
  detail::write_f64(f, hyp_.theta_star);
  detail::write_u64(f, hyp_.h3 ? 1 : 0);
  detail::write_f64(f, hyp_.h3 ? hyp_.h3->m3 : 0.0);
  detail::write_f64(f, hyp_.h3 ? hyp_.h3->alpha3 : 0.0);
  detail::write_u64(f, hyp_.h4 ? 1 : 0);
  detail::write_f64(f, hyp_.h4 ? hyp_.h4->m4 : 0.0);
  detail::write_f64(f, hyp_.h4 ? hyp_.h4->n4 : 0.0);
  detail::write_f64(f, hyp_.h4 ? hyp_.h4->alpha4 : 0.0);
  for (int a = 0; a < D; ++a) {
    detail::write_f64(f, domain_.lo[a]);
    detail::write_f64(f, domain_.hi[a]);
    detail::write_i64(f, cell_lo_[a]);
    detail::write_i64(f, cell_count_[a]);
    detail::write_i64(f, key_offset_[a]);
    detail::write_u64(f, wrap_[a] ? 1 : 0);
  }
  std::fwrite(amp_.data(), 8, amp_.size(), f);
  std::fwrite(theta_off_.data(), 8, theta_off_.size(), f);
  std::fclose(f);
}

template <int D>
IgnitionField<D> IgnitionField<D>::load(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open " + path);
  IgnitionField<D> out;
  const std::uint64_t magic = detail::read_u64(f);
  if (magic != 0x464c464431ULL + D) {
    std::fclose(f);
    throw ConfigError("not a dimension-" + std::to_string(D) + " field file: " + path);
  }
  detail::read_u64(f);  // config hash, informational
  out.seed_ = detail::read_u64(f);
  out.hyp_.lipschitz = detail::read_f64(f);
  out.hyp_.theta1 = detail::read_f64(f);
  out.hyp_.m1 = detail::read_f64(f);
  out.hyp_.alpha1 = detail::read_f64(f);
  out.hyp_.rho = detail::read_f64(f);
  out.hyp_.nu = detail::read_f64(f);
  out.hyp_.delta_theta = detail::read_f64(f);
  out.hyp_.ramp_width = detail::read_f64(f);
  out.hyp_.amp_max = detail::read_f64(f);
  out.hyp_.theta_star = detail::read_f64(f);
  out.hyp_.dim = D;
  if (detail::read_u64(f)) {
    DecayConstants d3;
    d3.m3 = detail::read_f64(f);
    d3.alpha3 = detail::read_f64(f);
    out.hyp_.h3 = d3;
  } else {
    detail::read_f64(f);
    detail::read_f64(f);
  }
  if (detail::read_u64(f)) {
    ApproximationConstants a4;
    a4.m4 = detail::read_f64(f);
    a4.n4 = detail::read_f64(f);
    a4.alpha4 = detail::read_f64(f);
    out.hyp_.h4 = a4;
  } else {
    detail::read_f64(f);
    detail::read_f64(f);
    detail::read_f64(f);
  }
  std::size_t total = 1;
  for (int a = 0; a < D; ++a) {
    out.domain_.lo[a] = detail::read_f64(f);
    out.domain_.hi[a] = detail::read_f64(f);
    out.cell_lo_[a] = detail::read_i64(f);
    out.cell_count_[a] = detail::read_i64(f);
    out.key_offset_[a] = detail::read_i64(f);
    out.wrap_[a] = detail::read_u64(f) != 0;
    total *= static_cast<std::size_t>(out.cell_count_[a]);
  }
  out.amp_.resize(total);
  out.theta_off_.resize(total);
  if (std::fread(out.amp_.data(), 8, total, f) != total ||
      std::fread(out.theta_off_.data(), 8, total, f) != total) {
    std::fclose(f);
    throw ConfigError("truncated field file: " + path);
  }
  std::fclose(f);
  return out;
}

}  // namespace frontlab
