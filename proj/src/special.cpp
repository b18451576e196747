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

#include "ldpb/special.hpp"

#include <cmath>

namespace ldpb {

namespace {

// Asymptotic series for erfcx at large x; truncation error below 1e-16
// for x >= 20.
double erfcx_asymptotic(double x) {
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  double sign = -1.0;
  double odd = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= odd * inv2x2;
    sum += sign * term;
    sign = -sign;
    odd += 2.0;
  }
  return sum / (x * std::sqrt(M_PI));
}

}  // namespace

double erfcx(double x) {
  if (x >= 0.0) {
    if (x < 20.0) return std::exp(x * x) * std::erfc(x);
    return erfcx_asymptotic(x);
  }
  // erfc(x) = 2 - erfc(-x); the exp factor overflows below about -26.6.
  return 2.0 * std::exp(x * x) - erfcx(-x);
}

double log_norm_cdf(double t) {
  if (t > -1.0) {
    return std::log(0.5 * std::erfc(-t / kSqrt2));
  }
  // Phi(t) = exp(-t^2/2) * erfcx(-t/sqrt(2)) / 2 for t << 0.
  return -0.5 * t * t - M_LN2 + std::log(erfcx(-t / kSqrt2));
}

double inv_mills(double t) {
  return std::sqrt(2.0 / M_PI) / erfcx(-t / kSqrt2);
}

double expm1_over_x(double w) {
  if (std::fabs(w) < 1e-5) {
    return 1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0)));
  }
  return std::expm1(w) / w;
}

double d_expm1_over_x(double w) {
  if (std::fabs(w) < 1e-5) {
    return 0.5 + w * (1.0 / 3.0 + w * (0.125 + w / 30.0));
  }
  return (std::exp(w) * (w - 1.0) + 1.0) / (w * w);
}

}  // namespace ldpb
