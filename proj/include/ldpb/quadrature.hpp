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

#include <functional>
#include <vector>

namespace ldpb {

// Adaptive Simpson quadrature on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

// Integrates over [a, b] splitting at the given interior knots (kinks of the
// integrand); knots outside (a, b) are ignored.
double integrate_with_knots(const std::function<double(double)>& f, double a,
                            double b, const std::vector<double>& knots,
                            double tol);

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  explicit GaussLegendre(int n);
  double integrate(const std::function<double(double)>& f, double a,
                   double b) const;
  std::vector<double> nodes;
  std::vector<double> weights;
};

}  // namespace ldpb
