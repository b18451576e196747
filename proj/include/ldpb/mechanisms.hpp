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
//
// Client-side LDP perturbation primitives, noise calibration for the
// analytic Gaussian mechanism, and the closed-form L2 sensitivity bounds
// for the sufficient-statistic releases.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "ldpb/rng.hpp"

namespace ldpb::mech {

// (epsilon, delta) pair governing a mechanism. delta = 0 is pure DP and is
// only valid for Laplace / randomized-response style mechanisms.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  void validate() const;
};

struct LaplaceSpec {
  double scale = 0.0;  // Delta_1 / epsilon
};

struct AnalyticGaussianSpec {
  double sigma = 0.0;
  double sensitivity = 0.0;  // Delta_2 the sigma was calibrated against
};

struct RandomizedResponseSpec {
  double p = 0.0;  // probability of reporting the true bit
};

struct OueSpec {
  double p = 0.0;  // probability a zero bit stays zero
  double q = 0.5;  // probability the one bit stays one; fixed by the protocol
};

using MechanismSpec = std::variant<LaplaceSpec, AnalyticGaussianSpec,
                                   RandomizedResponseSpec, OueSpec>;

struct ClipBounds {
  double a = 0.0;
  double b = 0.0;
  void validate() const;
};

// Inputs of the linear-regression sensitivity bound: feature-norm bound R,
// label bound Ry, and the per-block noise scales of the statistic release.
struct SensitivityInputs {
  double R = 0.0;
  double Ry = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
  void validate() const;
};

// p = exp(eps) / (1 + exp(eps)); tends to 1 as eps -> inf.
double rr_keep_prob(double epsilon);

// x + Laplace(0, scale) noise via inverse-CDF sampling.
double laplace_perturb(double x, double scale, Rng& rng);

// The tight delta achieved by a Gaussian mechanism with the given noise at
// (epsilon): Phi(D/2s - es/D) - e^eps Phi(-D/2s - es/D). Decreasing in sigma.
double gaussian_privacy_profile(double delta2, double sigma, double epsilon);

// Smallest sigma whose privacy profile is <= budget.delta; bisection on the
// monotone profile with geometric bracket expansion.
double calibrate_gaussian(double delta2, const PrivacyBudget& budget);

// One-bit randomized response: keep the bit with probability rr_keep_prob.
int rr_perturb(int bit, double epsilon, Rng& rng);

// Optimal unary encoding of category k (0-based) out of d: the hot bit
// survives with probability 1/2, every cold bit flips on with 1 - p.
std::vector<std::uint8_t> oue_perturb(std::size_t k, std::size_t d,
                                      double epsilon, Rng& rng);

// L2 sensitivity of the joint linear-regression statistic release
// [t2(x), y*x, y^2] scaled to equalized noise.
double sens_linreg(const SensitivityInputs& s);

// L2 sensitivity of the logistic-regression statistic release [y*x, t2(x)].
double sens_logreg_ss(double R, double sigma1, double sigma2);

// L2 sensitivity of releasing a norm-bounded feature vector: 2R.
double sens_input_x(double R);

double clip_scalar(double x, const ClipBounds& bounds);

// Rescales to norm R iff the norm exceeds R.
Eigen::VectorXd clip_norm(const Eigen::VectorXd& x, double R);

}  // namespace ldpb::mech
