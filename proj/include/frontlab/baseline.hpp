#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "frontlab/hypotheses.hpp"

namespace frontlab {

// The deterministic floor of the reaction family: the largest M-Lipschitz
// function below alpha1*(1-u)^m1 restricted to [1-theta1, 1].  Every sampled
// reaction dominates it, which is what makes it usable as a comparison oracle
// and as the residual reaction for monotone initial data.
class BaselineReaction {
 public:
  // Tabulates F0 on a uniform grid of `resolution` intervals by the two-pass
  // lower-envelope sweep (exact discrete inf-convolution with cost M per unit).
  // The jump point u = 1-theta1 is inserted as an extra knot carrying the
  // lower semicontinuous value 0; the infimum never sees the jump value, and
  // with the knot in the grid the kink of F0 is represented exactly.
  static BaselineReaction build(const ReactionHypotheses& hyp,
                                std::size_t resolution = std::size_t{1} << 14) {
    if (resolution < 1000) throw ConfigError("baseline resolution must be >= 1000");
    BaselineReaction f0;
    f0.lipschitz_ = hyp.lipschitz;
    f0.theta1_ = hyp.theta1;
    f0.m1_ = hyp.m1;
    f0.alpha1_ = hyp.alpha1;

    const double ubreak = 1.0 - hyp.theta1;
    std::vector<double>& u = f0.knots_;
    u.reserve(resolution + 2);
    for (std::size_t i = 0; i <= resolution; ++i)
      u.push_back(static_cast<double>(i) / static_cast<double>(resolution));
    u.push_back(ubreak);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());

    std::vector<double>& F = f0.values_;
    F.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) F[i] = f0.envelope_target(u[i]);
    for (std::size_t i = 1; i < u.size(); ++i)
      F[i] = std::min(F[i], F[i - 1] + hyp.lipschitz * (u[i] - u[i - 1]));
    for (std::size_t i = u.size() - 1; i-- > 0;)
      F[i] = std::min(F[i], F[i + 1] + hyp.lipschitz * (u[i + 1] - u[i]));

    // Running integral int_0^{u_i} F0, for front-profile energy queries.
    f0.integral_.resize(u.size());
    f0.integral_[0] = 0.0;
    for (std::size_t i = 1; i < u.size(); ++i)
      f0.integral_[i] = f0.integral_[i - 1] +
                        0.5 * (F[i] + F[i - 1]) * (u[i] - u[i - 1]);
    return f0;
  }

  // g(u) with the lsc convention at the jump (value 0 at u = 1-theta1 exactly).
  double envelope_target(double u) const {
    if (u <= 1.0 - theta1_) return 0.0;
    return alpha1_ * std::pow(1.0 - u, m1_);
  }

  double operator()(double u) const {
    if (u <= knots_.front()) return values_.front();
    if (u >= knots_.back()) return values_.back();
    const std::size_t j = upper_index(u);
    const double s = (u - knots_[j - 1]) / (knots_[j] - knots_[j - 1]);
    return values_[j - 1] + s * (values_[j] - values_[j - 1]);
  }

  // int_a^b F0(v) dv by exact integration of the tabulated linear pieces.
  double integral(double a, double b) const {
    if (b < a) return -integral(b, a);
    return integral_to(b) - integral_to(a);
  }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  double lipschitz() const { return lipschitz_; }
  double theta1() const { return theta1_; }
  double m1() const { return m1_; }
  double alpha1() const { return alpha1_; }

  double max_value() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
  }

 private:
  std::size_t upper_index(double u) const {
    return static_cast<std::size_t>(
        std::upper_bound(knots_.begin(), knots_.end(), u) - knots_.begin());
  }

  double integral_to(double u) const {
    if (u <= knots_.front()) return 0.0;
    if (u >= knots_.back()) return integral_.back();
    const std::size_t j = upper_index(u);
    const double du = u - knots_[j - 1];
    const double gap = knots_[j] - knots_[j - 1];
    const double fu = values_[j - 1] + du / gap * (values_[j] - values_[j - 1]);
    return integral_[j - 1] + 0.5 * (values_[j - 1] + fu) * du;
  }

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> integral_;
  double lipschitz_ = 1.0;
  double theta1_ = 0.25;
  double m1_ = 2.0;
  double alpha1_ = 1.0;
};

}  // namespace frontlab
