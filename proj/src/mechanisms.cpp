// Copyright 2026 The ldp-bayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpb/mechanisms.hpp"

#include <cmath>

#include "ldpb/errors.hpp"
#include "ldpb/special.hpp"

namespace ldpb::mech {

void PrivacyBudget::validate() const {
  if (!(epsilon >= 0.0)) throw invalid_parameter("budget: epsilon must be >= 0");
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw invalid_parameter("budget: delta must be in [0, 1]");
  }
}

void ClipBounds::validate() const {
  if (!(a < b)) throw invalid_parameter("clip bounds: need a < b");
}

void SensitivityInputs::validate() const {
  if (!(R > 0.0 && Ry > 0.0 && sigma1 > 0.0 && sigma2 > 0.0 && sigma3 > 0.0)) {
    throw invalid_parameter("sensitivity inputs must all be positive");
  }
}

double rr_keep_prob(double epsilon) {
  if (!(epsilon >= 0.0)) throw invalid_parameter("rr: epsilon must be >= 0");
  if (std::isinf(epsilon)) return 1.0;
  // exp(eps)/(1+exp(eps)), computed as a logistic to avoid overflow.
  return 1.0 / (1.0 + std::exp(-epsilon));
}

double laplace_perturb(double x, double scale, Rng& rng) {
  if (!(scale > 0.0)) throw invalid_parameter("laplace: scale must be > 0");
  return x + rng.laplace(scale);
}

double gaussian_privacy_profile(double delta2, double sigma, double epsilon) {
  if (!(delta2 > 0.0)) throw invalid_parameter("profile: delta2 must be > 0");
  if (!(sigma > 0.0)) throw invalid_parameter("profile: sigma must be > 0");
  if (!(epsilon >= 0.0)) throw invalid_parameter("profile: epsilon must be >= 0");
  const double a = delta2 / (2.0 * sigma);
  const double b = epsilon * sigma / delta2;
  // The second term is evaluated in log space so e^eps never overflows on
  // its own.
  const double term2 = std::exp(epsilon + log_norm_cdf(-a - b));
  return norm_cdf(a - b) - term2;
}

double calibrate_gaussian(double delta2, const PrivacyBudget& budget) {
  budget.validate();
  if (!(delta2 > 0.0)) throw invalid_parameter("calibrate: delta2 must be > 0");
  if (!(budget.delta > 0.0 && budget.delta < 1.0)) {
    throw invalid_parameter(
        "calibrate: Gaussian mechanism needs delta in (0, 1)");
  }
  if (!std::isfinite(budget.epsilon)) {
    throw invalid_parameter("calibrate: epsilon must be finite");
  }
  const double eps = budget.epsilon;
  const double target = budget.delta;

  double lo = delta2 * 1e-3;
  double hi = delta2 * 1e3;
  int guard = 0;
  while (gaussian_privacy_profile(delta2, lo, eps) < target) {
    lo *= 0.1;
    if (++guard > 300) throw numeric_failure("calibrate: cannot bracket root");
  }
  guard = 0;
  while (gaussian_privacy_profile(delta2, hi, eps) > target) {
    hi *= 10.0;
    if (++guard > 300) throw numeric_failure("calibrate: cannot bracket root");
  }

  const double sigma_tol = 1e-12;
  while (hi - lo > sigma_tol) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_privacy_profile(delta2, mid, eps) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (mid == lo || mid == hi) break;  // reached float resolution
  }
  const double sigma = hi;  // the profile(hi) <= delta side
  if (std::fabs(gaussian_privacy_profile(delta2, sigma, eps) - target) >
      1e-9) {
    throw numeric_failure("calibrate: residual tolerance not met");
  }
  return sigma;
}

int rr_perturb(int bit, double epsilon, Rng& rng) {
  if (bit != 0 && bit != 1) throw invalid_parameter("rr: bit must be 0 or 1");
  const double p = rr_keep_prob(epsilon);
  return rng.bernoulli(p) ? bit : 1 - bit;
}

std::vector<std::uint8_t> oue_perturb(std::size_t k, std::size_t d,
                                      double epsilon, Rng& rng) {
  if (d == 0 || k >= d) throw invalid_parameter("oue: category out of range");
  const double p = rr_keep_prob(epsilon);
  std::vector<std::uint8_t> z(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (j == k) {
      z[j] = rng.bernoulli(0.5) ? 1 : 0;
    } else {
      z[j] = rng.bernoulli(1.0 - p) ? 1 : 0;
    }
  }
  return z;
}

double sens_linreg(const SensitivityInputs& s) {
  s.validate();
  const double r2 = s.R * s.R;
  const double ry2 = s.Ry * s.Ry;
  const double c1 = (s.sigma1 * s.sigma1) / (s.sigma2 * s.sigma2);
  const double c2 = (s.sigma1 * s.sigma1) / (s.sigma3 * s.sigma3);
  return std::sqrt(0.5 * c1 * c1 * ry2 * ry2 + 2.0 * r2 * r2 +
                   2.0 * c1 * ry2 * r2 + c2 * ry2 * ry2);
}

double sens_logreg_ss(double R, double sigma1, double sigma2) {
  if (!(R > 0.0 && sigma1 > 0.0 && sigma2 > 0.0)) {
    throw invalid_parameter("sens_logreg_ss: inputs must be positive");
  }
  const double r2 = R * R;
  const double s12 = sigma1 * sigma1;
  const double s22 = sigma2 * sigma2;
  return std::sqrt(s22 / (2.0 * s12) + 2.0 * r2 + 2.0 * s12 * r2 * r2 / s22);
}

double sens_input_x(double R) {
  if (!(R > 0.0)) throw invalid_parameter("sens_input_x: R must be > 0");
  return 2.0 * R;
}

double clip_scalar(double x, const ClipBounds& bounds) {
  bounds.validate();
  return std::min(std::max(x, bounds.a), bounds.b);
}

Eigen::VectorXd clip_norm(const Eigen::VectorXd& x, double R) {
  if (!(R > 0.0)) throw invalid_parameter("clip_norm: R must be > 0");
  const double norm = x.norm();
  if (norm <= R) return x;
  return x * (R / norm);
}

}  // namespace ldpb::mech
