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
// Marginal density of a Laplace-perturbed exponential draw clipped above at
// b. The clipped mass sits in an atom exp(-theta b) at b; the continuous
// part is integrated against the noise kernel in closed form. The apparent
// pole at b*theta = epsilon is removable and handled through expm1(w)/w.

#pragma once

#include <cstddef>
#include <vector>

namespace ldpb::lik {

struct ExponentialModelParams {
  double theta = 1.0;  // rate
  double b = 1.0;      // upper clip bound; support is [0, b]
  double epsilon = 1.0;
  void validate() const;
};

struct ValueGrad1 {
  double value = 0.0;
  double d_theta = 0.0;
};

double rect_exp_loglik(double z, const ExponentialModelParams& params);

ValueGrad1 rect_exp_loglik_grad(double z, const ExponentialModelParams& params);

struct RectExpWorkspace {
  std::vector<double> buf;
};

ValueGrad1 rect_exp_sum(const double* z, std::size_t n,
                        const ExponentialModelParams& params,
                        RectExpWorkspace& ws);

ValueGrad1 rect_exp_sum(const std::vector<double>& z,
                        const ExponentialModelParams& params);

// Noise-free twin: density of the clipped draw itself.
ValueGrad1 clipped_exp_loglik_grad(double z,
                                   const ExponentialModelParams& params);

}  // namespace ldpb::lik
