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

#pragma once

#include <cmath>

namespace ldpb {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kLog2Pi = 1.8378770664093453;
inline constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Scaled complementary error function exp(x^2) * erfc(x), valid on the whole
// real line. Overflows to +inf for x below about -26.6, where the unscaled
// value itself is not representable.
double erfcx(double x);

inline double norm_pdf(double t) {
  return kInvSqrt2Pi * std::exp(-0.5 * t * t);
}

inline double norm_cdf(double t) { return 0.5 * std::erfc(-t / kSqrt2); }

// log Phi(t), accurate in both tails.
double log_norm_cdf(double t);

// phi(t) / Phi(t); stays finite and accurate for t far in the left tail.
double inv_mills(double t);

// expm1(w) / w with the removable singularity at w = 0 handled.
double expm1_over_x(double w);

// Derivative of expm1_over_x.
double d_expm1_over_x(double w);

inline double logaddexp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(std::fabs(a - b))));
}

}  // namespace ldpb
