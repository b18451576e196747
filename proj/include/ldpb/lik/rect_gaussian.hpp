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
// Closed-form marginal density of a Laplace-perturbed, interval-clipped
// Gaussian draw. The clipped value has point masses at both bounds and a
// truncated continuous part; convolving with Laplace noise of rate
// lambda = epsilon / (b - a) gives two exponential spikes plus two
// erf-difference terms. Everything is evaluated through the scaled
// complementary error function so the result stays finite for any z and
// any epsilon.

#pragma once

#include <cstddef>
#include <vector>

#include "ldpb/mechanisms.hpp"

namespace ldpb::lik {

struct GaussianModelParams {
  double mu = 0.0;
  double sigma = 1.0;
  mech::ClipBounds bounds{-1.0, 1.0};
  double epsilon = 1.0;
  void validate() const;
};

struct ValueGrad2 {
  double value = 0.0;
  double d_mu = 0.0;
  double d_sigma = 0.0;
};

// Log marginal density at a single report; finite for all real z.
double rect_gauss_loglik(double z, const GaussianModelParams& params);

// Log density with the gradient in (mu, sigma).
ValueGrad2 rect_gauss_loglik_grad(double z, const GaussianModelParams& params);

// Reusable buffers for the batched path.
struct RectGaussWorkspace {
  std::vector<double> buf;
};

// Sum of log densities and gradients over a batch of reports. Uses the
// runtime-selected vector kernels; records whose density underflows the
// direct evaluation are recomputed through the robust scalar path.
ValueGrad2 rect_gauss_sum(const double* z, std::size_t n,
                          const GaussianModelParams& params,
                          RectGaussWorkspace& ws);

ValueGrad2 rect_gauss_sum(const std::vector<double>& z,
                          const GaussianModelParams& params);

// Log density of the clipped (noise-free) observation: two atoms plus the
// truncated Gaussian interior. The noise-free twin of rect_gauss_loglik.
ValueGrad2 clipped_gauss_loglik_grad(double z,
                                     const GaussianModelParams& params);

}  // namespace ldpb::lik
