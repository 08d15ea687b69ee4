#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "frontlab/core.hpp"

namespace frontlab {

// Optional uniform-decay constants (decay of f near u = 1 under unit shifts).
struct DecayConstants {
  double m3 = 1.0;    // >= 1
  double alpha3 = 0;  // > 0
};

// Optional finite-range-approximation constants: the reaction is within
// alpha4 * n^(-m4) in sup norm of one with dependence range <= n, for n >= n4.
struct ApproximationConstants {
  double m4 = 0;
  double n4 = 0;
  double alpha4 = 0;
};

// The constants governing a stationary pure-ignition reaction family, plus the
// construction knobs of the sampled lattice medium.
//
// Units: `lipschitz` is a rate per unit u and per unit length; `rho` is a
// length (the cell spacing of the medium lattice); `ramp_width` and
// `delta_theta` are in u-units.
struct ReactionHypotheses {
  double lipschitz = 1.0;  // M >= 1, Lipschitz constant in both x and u
  double theta1 = 0.25;    // ignition floor, in (0, 1/2)
  double m1 = 2.0;         // decay power near u = 1, > 1
  double alpha1 = 1.0;     // decay amplitude, > 0
  double rho = 1.0;        // dependence-range cell spacing, >= 1
  int dim = 1;             // spatial dimension, in {1,2,3}
  double nu = 1.0;         // initial-data exponent, > 0

  // Medium construction knobs.  delta_theta < 0 means "use the default
  // 0.1 * (1 - 2*theta1)".
  double delta_theta = -1.0;  // ignition-offset spread, in [0, ...)
  double ramp_width = 0.05;   // w: u-width of the ignition ramp
  double amp_max = 2.0;       // a_max: amplitude upper bound, >= 1

  double theta_star = 0.05;  // reference level offset used by arrival times

  std::optional<DecayConstants> h3;
  std::optional<ApproximationConstants> h4;

  bool finite_range() const { return !(h3 && h4); }

  double resolved_delta_theta() const {
    return delta_theta < 0.0 ? 0.1 * (1.0 - 2.0 * theta1) : delta_theta;
  }

  // Throws ConfigError naming the violated invariant.
  void validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("invalid hypotheses: " + what); };
    if (!(theta1 > 0.0 && theta1 < 0.5)) fail("theta1 ∈ (0, 0.5)");
    if (!(m1 > 1.0)) fail("m1 > 1");
    if (!(lipschitz >= 1.0)) fail("M ≥ 1");
    if (!(alpha1 > 0.0)) fail("alpha1 > 0");
    if (!(dim >= 1 && dim <= 3)) fail("d ∈ {1,2,3}");
    if (!(rho >= 1.0)) fail("rho ≥ 1");
    if (!(nu > 0.0)) fail("nu > 0");
    // The ignition-zone lower bound must be compatible with an M-Lipschitz rise.
    if (!(alpha1 * std::pow(theta1, m1) <= lipschitz * theta1 * (1.0 + 1e-12)))
      fail("alpha1 * theta1^m1 ≤ M * theta1");
    const double dth = resolved_delta_theta();
    if (!(dth >= 0.0)) fail("delta_theta ≥ 0");
    if (!(ramp_width > 0.0)) fail("ramp_width > 0");
    if (!(amp_max >= 1.0)) fail("amp_max ≥ 1");
    // Keeps every local ignition temperature plus the ramp strictly below the
    // decay zone, so the sampled reaction satisfies the ignition hypotheses.
    if (!(theta1 + dth + ramp_width < 1.0 - theta1))
      fail("theta1 + delta_theta + ramp_width < 1 - theta1");
    if (!(theta_star > 0.0 && theta_star <= theta1 / 4.0 + 1e-15))
      fail("theta_star ∈ (0, theta1/4]");
    if (h3) {
      if (!(h3->m3 >= 1.0)) fail("m3 ≥ 1");
      if (!(h3->alpha3 > 0.0)) fail("alpha3 > 0");
    }
    if (h4) {
      if (!(h4->m4 > 0.0)) fail("m4 > 0");
      if (!(h4->n4 > 0.0)) fail("n4 > 0");
      if (!(h4->alpha4 > 0.0)) fail("alpha4 > 0");
    }
    if (h3.has_value() != h4.has_value())
      fail("the decay and approximation blocks must be configured together");
  }
};

// Rate exponents attached to a hypothesis set.  `sigma_prime` always equals
// 2*sigma when nu does not bind differently; both are kept and the identity is
// checked where it must hold.
struct RateExponents {
  double beta = 0;          // fluctuation growth exponent
  double sigma_tilde = 0;   // raw rate before the initial-data cap
  double sigma = 0;         // homogenization rate: margin eps^sigma
  double sigma_prime = 0;   // upper-bound construction rate
  double sigma_dprime = 0;  // interior-ball construction rate
  bool finite_range = true;
};

inline RateExponents rate_exponents(const ReactionHypotheses& hyp) {
  RateExponents e;
  e.finite_range = hyp.finite_range();
  const double inv2m1 = 1.0 / (2.0 * hyp.m1);
  if (e.finite_range) {
    e.beta = 1.0 - inv2m1;
    e.sigma_tilde = 1.0 / (8.0 * hyp.m1);
  } else {
    const double m3 = hyp.h3->m3, m4 = hyp.h4->m4;
    e.beta = 1.0 - std::min(inv2m1, m4 / (m3 + 2.0 * m4));
    e.sigma_tilde = std::min(1.0 / (8.0 * hyp.m1), m4 / (4.0 * m3 + 8.0 * m4));
  }
  e.sigma = 0.5 * std::min(e.sigma_tilde, hyp.nu);
  e.sigma_prime = std::min((1.0 - e.beta) / 4.0, hyp.nu);
  e.sigma_dprime = (1.0 - e.beta) / (2.0 * (2.0 - e.beta));
  return e;
}

inline std::string describe(const RateExponents& e) {
  std::ostringstream os;
  os << "beta=" << e.beta << " sigma_tilde=" << e.sigma_tilde << " sigma=" << e.sigma
     << " sigma'=" << e.sigma_prime << " sigma''=" << e.sigma_dprime
     << (e.finite_range ? " (finite range)" : " (approximated range)");
  return os.str();
}

// Propagation bounds with closed forms: the heat-kernel speed cap and its
// additive offset.
inline double speed_cap_c1(const ReactionHypotheses& hyp) {
  return 2.0 * std::sqrt(hyp.lipschitz * hyp.dim);
}

inline double speed_cap_kappa1(const ReactionHypotheses& hyp) {
  return 1.0 + std::sqrt(hyp.dim / hyp.lipschitz) *
                   std::log(2.0 * hyp.dim / (1.0 - 2.0 * hyp.theta1));
}

}  // namespace frontlab
