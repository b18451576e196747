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

#include "ldpb/lik/rect_exponential.hpp"

#include <algorithm>
#include <cmath>

#include "ldpb/errors.hpp"
#include "ldpb/simd/vmath.hpp"
#include "ldpb/special.hpp"

namespace ldpb::lik {

void ExponentialModelParams::validate() const {
  if (!(theta > 0.0)) throw invalid_parameter("rect_exp: theta must be > 0");
  if (!(b > 0.0)) throw invalid_parameter("rect_exp: b must be > 0");
  if (!(epsilon > 0.0)) throw invalid_parameter("rect_exp: epsilon must be > 0");
}

namespace {

// The three mixture components in log space plus their theta-derivatives.
struct Parts {
  double log_c[3] = {-INFINITY, -INFINITY, -INFINITY};
  double dtheta[3] = {0, 0, 0};
};

Parts parts(double z, const ExponentialModelParams& p) {
  Parts out;
  const double lambda = p.epsilon / p.b;
  const double theta = p.theta;
  const double l = std::min(std::max(z, 0.0), p.b);

  if (l > 0.0) {
    const double w = (lambda - theta) * l;
    const double r = expm1_over_x(w);
    out.log_c[0] = std::log(theta) + std::log(l) + std::log(r) - lambda * z;
    out.dtheta[0] = 1.0 / theta - l * d_expm1_over_x(w) / r;
  }
  if (l < p.b) {
    const double v = lambda + theta;
    const double g = p.b - l;
    const double psi = -std::expm1(-v * g);
    out.log_c[1] =
        std::log(theta) + lambda * z - v * l + std::log(psi) - std::log(v);
    out.dtheta[1] = 1.0 / theta - l - 1.0 / v + g / std::expm1(v * g);
  }
  out.log_c[2] = -theta * p.b - lambda * std::fabs(z - p.b);
  out.dtheta[2] = -p.b;
  return out;
}

ValueGrad1 combine(const Parts& parts, double lambda) {
  double m = std::max({parts.log_c[0], parts.log_c[1], parts.log_c[2]});
  double sum = 0.0;
  for (double lc : parts.log_c) sum += std::exp(lc - m);
  ValueGrad1 out;
  out.value = std::log(0.5 * lambda) + m + std::log(sum);
  for (int i = 0; i < 3; ++i) {
    const double w = std::exp(parts.log_c[i] - m) / sum;
    out.d_theta += w * parts.dtheta[i];
  }
  return out;
}

}  // namespace

double rect_exp_loglik(double z, const ExponentialModelParams& params) {
  params.validate();
  return combine(parts(z, params), params.epsilon / params.b).value;
}

ValueGrad1 rect_exp_loglik_grad(double z,
                                const ExponentialModelParams& params) {
  params.validate();
  return combine(parts(z, params), params.epsilon / params.b);
}

ValueGrad1 clipped_exp_loglik_grad(double z,
                                   const ExponentialModelParams& params) {
  params.validate();
  ValueGrad1 out;
  if (z >= params.b) {
    out.value = -params.theta * params.b;
    out.d_theta = -params.b;
  } else if (z >= 0.0) {
    out.value = std::log(params.theta) - params.theta * z;
    out.d_theta = 1.0 / params.theta - z;
  } else {
    out.value = -INFINITY;
    out.d_theta = 0.0;
  }
  return out;
}

ValueGrad1 rect_exp_sum(const std::vector<double>& z,
                        const ExponentialModelParams& params) {
  RectExpWorkspace ws;
  return rect_exp_sum(z.data(), z.size(), params, ws);
}

ValueGrad1 rect_exp_sum(const double* z, std::size_t n,
                        const ExponentialModelParams& params,
                        RectExpWorkspace& ws) {
  params.validate();
  const auto& k = simd::active();
  const double lambda = params.epsilon / params.b;
  const double theta = params.theta;
  const double b = params.b;
  const double v = lambda + theta;

  ws.buf.resize(8 * n);
  double* lv = ws.buf.data();
  double* e_mlz = lv + n;      // exp(-lambda * max(z, 0))
  double* e_u = e_mlz + n;     // exp((lambda - theta) * l)
  double* e_t2 = e_u + n;      // exp(lambda*z - v*l), clamped
  double* e_vg = e_t2 + n;     // exp(-v * (b - l))
  double* e_zb = e_vg + n;     // exp(-lambda |z - b|)
  double* dens = e_zb + n;
  double* logd = dens + n;

  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[i];
    const double li = std::min(std::max(zi, 0.0), b);
    lv[i] = li;
    e_mlz[i] = -lambda * std::max(zi, 0.0);
    e_u[i] = (lambda - theta) * li;
    e_t2[i] = std::min(lambda * zi - v * li, 0.0);
    e_vg[i] = -v * (b - li);
    e_zb[i] = -lambda * std::fabs(zi - b);
  }
  k.exp(e_mlz, e_mlz, n);
  k.exp(e_u, e_u, n);
  k.exp(e_t2, e_t2, n);
  k.exp(e_vg, e_vg, n);
  k.exp(e_zb, e_zb, n);
  const double atom_scale = std::exp(-theta * b);

  double g_theta = 0.0;
  std::vector<std::size_t> fixups;
  const double half_lambda = 0.5 * lambda;

  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[i];
    const double li = lv[i];
    const double u = (lambda - theta) * li;
    // expm1(u)/u and its derivative; poly branch near the removable pole.
    double r, dr;
    if (std::fabs(u) < 1e-2) {
      r = 1.0 + u * (0.5 + u * (1.0 / 6.0 + u * (1.0 / 24.0 + u / 120.0)));
      dr = 0.5 + u * (1.0 / 3.0 + u * (0.125 + u * (1.0 / 30.0)));
    } else {
      r = (e_u[i] - 1.0) / u;
      dr = (e_u[i] * (u - 1.0) + 1.0) / (u * u);
    }
    const double t1 = zi > 0.0 ? theta * li * r * e_mlz[i] : 0.0;

    const double vg = v * (b - li);
    double psi, dpsi_dv;  // psi = 1 - exp(-vg); d psi / dv = g exp(-vg)
    const double g = b - li;
    if (vg < 1e-2) {
      psi = vg * (1.0 - vg * (0.5 - vg * (1.0 / 6.0 - vg / 24.0)));
    } else {
      psi = 1.0 - e_vg[i];
    }
    dpsi_dv = g * e_vg[i];
    const double t2 = zi < b ? theta * e_t2[i] * psi / v : 0.0;

    const double atom = atom_scale * e_zb[i];
    const double d = half_lambda * (t1 + t2 + atom);
    if (!(d > 0.0) || !std::isfinite(d)) {
      dens[i] = 1.0;
      fixups.push_back(i);
      continue;
    }
    dens[i] = d;

    const double dt1 = zi > 0.0 ? t1 / theta - theta * li * li * dr * e_mlz[i]
                                : 0.0;
    const double dt2 =
        zi < b ? t2 * (1.0 / theta - li - 1.0 / v) +
                     theta * e_t2[i] * dpsi_dv / v
               : 0.0;
    const double datom = -b * atom;
    g_theta += half_lambda * (dt1 + dt2 + datom) / d;
  }

  k.log(dens, logd, n);
  double loglik = 0.0;
  for (std::size_t i = 0; i < n; ++i) loglik += logd[i];
  for (std::size_t i : fixups) {
    const ValueGrad1 r = rect_exp_loglik_grad(z[i], params);
    loglik += r.value;
    g_theta += r.d_theta;
  }
  return {loglik, g_theta};
}

}  // namespace ldpb::lik
