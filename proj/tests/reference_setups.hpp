#pragma once

#include "frontlab/hypotheses.hpp"

// Hypothesis sets shared across the test suites.  `reference_hypotheses` is a
// certifiable configuration (the sampled blend stays within the Lipschitz
// budget M) with m1 = 2, which keeps the exponent arithmetic at the worked
// values beta = 3/4, sigma'' = 1/10.
namespace frontlab_tests {

inline frontlab::ReactionHypotheses reference_hypotheses(int dim) {
  frontlab::ReactionHypotheses hyp;
  hyp.lipschitz = 4.0;
  hyp.theta1 = 0.25;
  hyp.m1 = 2.0;
  hyp.alpha1 = 1.8;
  hyp.rho = 1.0;
  hyp.dim = dim;
  hyp.nu = 1.0;
  hyp.delta_theta = 0.02;
  hyp.ramp_width = 0.42;
  hyp.amp_max = 1.25;
  hyp.theta_star = 0.05;
  return hyp;
}

// The worked baseline constants: M = 1, theta1 = 1/4, m1 = 2, alpha1 = 1.
inline frontlab::ReactionHypotheses worked_baseline_hypotheses() {
  frontlab::ReactionHypotheses hyp;
  hyp.lipschitz = 1.0;
  hyp.theta1 = 0.25;
  hyp.m1 = 2.0;
  hyp.alpha1 = 1.0;
  hyp.dim = 1;
  return hyp;
}

}  // namespace frontlab_tests
