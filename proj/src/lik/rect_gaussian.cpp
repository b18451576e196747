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

#include "ldpb/lik/rect_gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "ldpb/errors.hpp"
#include "ldpb/simd/vmath.hpp"
#include "ldpb/special.hpp"

namespace ldpb::lik {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955126;

// Parameter-only quantities shared by every report.
struct Ctx {
  double lambda;       // epsilon / (b - a)
  double mu, sigma, a, b;
  double alpha_a, beta_b;            // (a-mu)/sigma, (b-mu)/sigma
  double log_phi_a, log_phi_bbar;    // log Phi(alpha_a), log Phi(-beta_b)
  double A_a, B_b;                   // erf arguments at the fixed bounds
  double Ka, Kb;                     // exp(-(x-mu)^2 / 2 sigma^2), x = a, b
  double inv_s2;                     // 1 / (sqrt(2) sigma)
};

Ctx make_ctx(const GaussianModelParams& p) {
  Ctx c;
  c.lambda = p.epsilon / (p.bounds.b - p.bounds.a);
  c.mu = p.mu;
  c.sigma = p.sigma;
  c.a = p.bounds.a;
  c.b = p.bounds.b;
  c.alpha_a = (c.a - c.mu) / c.sigma;
  c.beta_b = (c.b - c.mu) / c.sigma;
  c.log_phi_a = log_norm_cdf(c.alpha_a);
  c.log_phi_bbar = log_norm_cdf(-c.beta_b);
  c.inv_s2 = 1.0 / (kSqrt2 * c.sigma);
  const double ls2 = c.lambda * c.sigma * c.sigma;
  c.A_a = (ls2 + c.mu - c.a) * c.inv_s2;
  c.B_b = (ls2 - c.mu + c.b) * c.inv_s2;
  c.Ka = std::exp(-0.5 * c.alpha_a * c.alpha_a);
  c.Kb = std::exp(-0.5 * c.beta_b * c.beta_b);
  return c;
}

// log of T = e^c (erf(hi) - erf(lo)) with hi >= lo, where
// t_hi = c - hi^2 and t_lo = c - lo^2 are passed in (each <= 0 whenever the
// corresponding term participates). Also returns the ratios
// r = exp(t - logT) needed by the gradient.
struct ErfDiffLog {
  double log_value = -INFINITY;
  double r_hi = 0.0;  // exp(t_hi - log_value)
  double r_lo = 0.0;
};

ErfDiffLog log_erf_diff_scaled(double hi, double lo, double t_hi,
                               double t_lo) {
  ErfDiffLog out;
  double log_t;
  if (lo >= 0.0) {
    const double m = std::max(t_lo, t_hi);
    const double d = std::exp(t_lo - m) * erfcx(lo) -
                     std::exp(t_hi - m) * erfcx(hi);
    if (!(d > 0.0)) return out;
    log_t = m + std::log(d);
  } else if (hi <= 0.0) {
    const double m = std::max(t_lo, t_hi);
    const double d = std::exp(t_hi - m) * erfcx(-hi) -
                     std::exp(t_lo - m) * erfcx(-lo);
    if (!(d > 0.0)) return out;
    log_t = m + std::log(d);
  } else {
    // Mixed signs: c < 0 is guaranteed here, so the plain form is safe.
    const double c = t_hi + hi * hi;
    const double d = std::erf(hi) - std::erf(lo);
    if (!(d > 0.0)) return out;
    log_t = c + std::log(d);
  }
  out.log_value = log_t;
  out.r_hi = std::exp(t_hi - log_t);
  out.r_lo = std::exp(t_lo - log_t);
  return out;
}

struct Components {
  double log_c[4] = {-INFINITY, -INFINITY, -INFINITY, -INFINITY};
  double dmu[4] = {0, 0, 0, 0};
  double dsigma[4] = {0, 0, 0, 0};
};

Components components(double z, const Ctx& c, bool want_grad) {
  Components out;
  const double l = std::min(std::max(z, c.a), c.b);
  const double log_half_lambda = std::log(0.5 * c.lambda);

  // Atom at a.
  out.log_c[0] = log_half_lambda + c.log_phi_a - c.lambda * std::fabs(z - c.a);
  // Atom at b.
  out.log_c[1] =
      log_half_lambda + c.log_phi_bbar - c.lambda * std::fabs(z - c.b);
  if (want_grad) {
    const double im_a = inv_mills(c.alpha_a);
    const double im_b = inv_mills(-c.beta_b);
    out.dmu[0] = -im_a / c.sigma;
    out.dsigma[0] = -im_a * c.alpha_a / c.sigma;
    out.dmu[1] = im_b / c.sigma;
    out.dsigma[1] = im_b * c.beta_b / c.sigma;
  }

  const double ls2 = c.lambda * c.sigma * c.sigma;
  const double log_quarter_lambda = std::log(0.25 * c.lambda);

  if (z > c.a) {
    const double A_l = (ls2 + c.mu - l) * c.inv_s2;
    const double t_l =
        -c.lambda * (z - l) - 0.5 * (l - c.mu) * (l - c.mu) / (c.sigma * c.sigma);
    const double t_a = -c.lambda * (z - c.a) -
                       0.5 * (c.a - c.mu) * (c.a - c.mu) / (c.sigma * c.sigma);
    const ErfDiffLog t1 = log_erf_diff_scaled(c.A_a, A_l, t_a, t_l);
    if (t1.log_value > -INFINITY) {
      out.log_c[2] = log_quarter_lambda + t1.log_value;
      if (want_grad) {
        const double dAa_ds = c.lambda / kSqrt2 -
                              (c.mu - c.a) * c.inv_s2 / c.sigma;
        const double dAl_ds = c.lambda / kSqrt2 -
                              (c.mu - l) * c.inv_s2 / c.sigma;
        out.dmu[2] = c.lambda + kTwoOverSqrtPi * c.inv_s2 * (t1.r_hi - t1.r_lo);
        out.dsigma[2] = c.lambda * ls2 +
                        kTwoOverSqrtPi * (t1.r_hi * dAa_ds - t1.r_lo * dAl_ds);
      }
    }
  }

  if (z < c.b) {
    const double B_l = (ls2 - c.mu + l) * c.inv_s2;
    const double u_l =
        c.lambda * (z - l) - 0.5 * (l - c.mu) * (l - c.mu) / (c.sigma * c.sigma);
    const double u_b = c.lambda * (z - c.b) -
                       0.5 * (c.b - c.mu) * (c.b - c.mu) / (c.sigma * c.sigma);
    const ErfDiffLog t2 = log_erf_diff_scaled(c.B_b, B_l, u_b, u_l);
    if (t2.log_value > -INFINITY) {
      out.log_c[3] = log_quarter_lambda + t2.log_value;
      if (want_grad) {
        const double dBb_ds = c.lambda / kSqrt2 -
                              (c.b - c.mu) * c.inv_s2 / c.sigma;
        const double dBl_ds = c.lambda / kSqrt2 -
                              (l - c.mu) * c.inv_s2 / c.sigma;
        out.dmu[3] =
            -c.lambda - kTwoOverSqrtPi * c.inv_s2 * (t2.r_hi - t2.r_lo);
        out.dsigma[3] = c.lambda * ls2 +
                        kTwoOverSqrtPi * (t2.r_hi * dBb_ds - t2.r_lo * dBl_ds);
      }
    }
  }
  return out;
}

ValueGrad2 combine(const Components& parts, bool want_grad) {
  ValueGrad2 out;
  double m = -INFINITY;
  for (double lc : parts.log_c) m = std::max(m, lc);
  if (m == -INFINITY) {
    out.value = -INFINITY;
    return out;
  }
  double sum = 0.0;
  for (double lc : parts.log_c) sum += std::exp(lc - m);
  out.value = m + std::log(sum);
  if (want_grad) {
    for (int i = 0; i < 4; ++i) {
      const double w = std::exp(parts.log_c[i] - out.value);
      out.d_mu += w * parts.dmu[i];
      out.d_sigma += w * parts.dsigma[i];
    }
  }
  return out;
}

}  // namespace

void GaussianModelParams::validate() const {
  bounds.validate();
  if (!(sigma > 0.0)) throw invalid_parameter("rect_gauss: sigma must be > 0");
  if (!(epsilon > 0.0)) {
    throw invalid_parameter("rect_gauss: epsilon must be > 0");
  }
  if (!std::isfinite(mu)) throw invalid_parameter("rect_gauss: mu not finite");
}

double rect_gauss_loglik(double z, const GaussianModelParams& params) {
  params.validate();
  const Ctx c = make_ctx(params);
  return combine(components(z, c, false), false).value;
}

ValueGrad2 rect_gauss_loglik_grad(double z, const GaussianModelParams& params) {
  params.validate();
  const Ctx c = make_ctx(params);
  return combine(components(z, c, true), true);
}

ValueGrad2 clipped_gauss_loglik_grad(double z,
                                     const GaussianModelParams& params) {
  params.validate();
  ValueGrad2 out;
  const double mu = params.mu;
  const double sigma = params.sigma;
  const double a = params.bounds.a;
  const double b = params.bounds.b;
  if (z <= a) {
    const double alpha = (a - mu) / sigma;
    const double im = inv_mills(alpha);
    out.value = log_norm_cdf(alpha);
    out.d_mu = -im / sigma;
    out.d_sigma = -im * alpha / sigma;
  } else if (z >= b) {
    const double beta = (b - mu) / sigma;
    const double im = inv_mills(-beta);
    out.value = log_norm_cdf(-beta);
    out.d_mu = im / sigma;
    out.d_sigma = im * beta / sigma;
  } else {
    const double t = (z - mu) / sigma;
    out.value = -0.5 * t * t - std::log(sigma) - 0.5 * kLog2Pi;
    out.d_mu = t / sigma;
    out.d_sigma = (t * t - 1.0) / sigma;
  }
  return out;
}

ValueGrad2 rect_gauss_sum(const std::vector<double>& z,
                          const GaussianModelParams& params) {
  RectGaussWorkspace ws;
  return rect_gauss_sum(z.data(), z.size(), params, ws);
}

ValueGrad2 rect_gauss_sum(const double* z, std::size_t n,
                          const GaussianModelParams& params,
                          RectGaussWorkspace& ws) {
  params.validate();
  const Ctx c = make_ctx(params);
  const auto& k = simd::active();

  ws.buf.resize(12 * n);
  double* lv = ws.buf.data();
  double* arg1 = lv + n;       // -> e1
  double* arg2 = arg1 + n;     // -> e2
  double* arg3 = arg2 + n;     // -> g
  double* abs_al = arg3 + n;   // -> w_al
  double* abs_bl = abs_al + n; // -> w_bl
  double* argc = abs_bl + n;   // -> ec   (min(c, 0))
  double* argcp = argc + n;    // -> ecp  (min(c', 0))
  double* al = argcp + n;
  double* bl = al + n;
  double* dens = bl + n;
  double* scratch = dens + n;

  const double lambda = c.lambda;
  const double ls2 = lambda * c.sigma * c.sigma;
  const double half_l2s2 = 0.5 * lambda * ls2;
  const double inv_2s2 = 0.5 / (c.sigma * c.sigma);

  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[i];
    const double li = std::min(std::max(zi, c.a), c.b);
    lv[i] = li;
    arg1[i] = -lambda * std::fabs(zi - c.a);
    arg2[i] = -lambda * std::fabs(zi - c.b);
    const double dl = li - c.mu;
    arg3[i] = -dl * dl * inv_2s2;
    const double ali = (ls2 - dl) * c.inv_s2;
    const double bli = (ls2 + dl) * c.inv_s2;
    al[i] = ali;
    bl[i] = bli;
    abs_al[i] = std::fabs(ali);
    abs_bl[i] = std::fabs(bli);
    const double ci = half_l2s2 - lambda * (zi - c.mu);
    argc[i] = std::min(ci, 0.0);
    argcp[i] = std::min(half_l2s2 + lambda * (zi - c.mu), 0.0);
  }

  k.exp(arg1, arg1, n);
  k.exp(arg2, arg2, n);
  k.exp(arg3, arg3, n);
  k.exp(argc, argc, n);
  k.exp(argcp, argcp, n);
  k.erfcx(abs_al, abs_al, n);
  k.erfcx(abs_bl, abs_bl, n);

  const double phi_a = std::exp(c.log_phi_a);
  const double phi_bbar = std::exp(c.log_phi_bbar);
  const double A1 = 0.5 * lambda * phi_a;
  const double A2 = 0.5 * lambda * phi_bbar;
  const double Q = 0.25 * lambda;
  const double pdf_a = norm_pdf(c.alpha_a);
  const double pdf_b = norm_pdf(c.beta_b);
  const double dA1_mu = -0.5 * lambda * pdf_a / c.sigma;
  const double dA2_mu = 0.5 * lambda * pdf_b / c.sigma;
  const double dA1_s = -0.5 * lambda * pdf_a * c.alpha_a / c.sigma;
  const double dA2_s = 0.5 * lambda * pdf_b * c.beta_b / c.sigma;

  const bool aa_pos = c.A_a > 0.0;
  const bool bb_pos = c.B_b > 0.0;
  const double w_aa = erfcx(std::fabs(c.A_a));
  const double w_bb = erfcx(std::fabs(c.B_b));
  const double one_plus_erf_aa = 1.0 + std::erf(c.A_a);
  const double one_plus_erf_bb = 1.0 + std::erf(c.B_b);
  const double dAa_ds = lambda / kSqrt2 - (c.mu - c.a) * c.inv_s2 / c.sigma;
  const double dBb_ds = lambda / kSqrt2 - (c.b - c.mu) * c.inv_s2 / c.sigma;

  double g_mu = 0.0;
  double g_sigma = 0.0;
  std::vector<std::size_t> fixups;

  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[i];
    const double li = lv[i];
    const double e1 = arg1[i];
    const double e2 = arg2[i];
    const double g = arg3[i];

    const double E1a = zi >= c.a ? e1 * c.Ka : 0.0;
    const double E1l = zi > c.b ? g * e2 : (zi > c.a ? g : 0.0);
    const double E2b = zi <= c.b ? e2 * c.Kb : 0.0;
    const double E2l = zi < c.a ? g * e1 : (zi < c.b ? g : 0.0);

    double T1 = 0.0;
    if (zi > c.a) {
      if (!aa_pos) {
        T1 = E1a * w_aa - E1l * abs_al[i];
      } else if (al[i] >= 0.0) {
        T1 = E1l * abs_al[i] - E1a * w_aa;
      } else {
        T1 = argc[i] * one_plus_erf_aa - E1l * abs_al[i];
      }
      T1 = std::max(T1, 0.0);
    }
    double T2 = 0.0;
    if (zi < c.b) {
      if (!bb_pos) {
        T2 = E2b * w_bb - E2l * abs_bl[i];
      } else if (bl[i] >= 0.0) {
        T2 = E2l * abs_bl[i] - E2b * w_bb;
      } else {
        T2 = argcp[i] * one_plus_erf_bb - E2l * abs_bl[i];
      }
      T2 = std::max(T2, 0.0);
    }

    const double d = A1 * e1 + A2 * e2 + Q * (T1 + T2);
    if (!(d > 0.0) || !std::isfinite(d)) {
      dens[i] = 1.0;  // contributes log(1) = 0; fixed up below
      fixups.push_back(i);
      continue;
    }
    dens[i] = d;

    const double dAl_ds = lambda / kSqrt2 - (c.mu - li) * c.inv_s2 / c.sigma;
    const double dBl_ds = lambda / kSqrt2 - (li - c.mu) * c.inv_s2 / c.sigma;
    const double dT1_mu =
        lambda * T1 + kTwoOverSqrtPi * c.inv_s2 * (E1a - E1l);
    const double dT1_s = lambda * ls2 * T1 +
                         kTwoOverSqrtPi * (E1a * dAa_ds - E1l * dAl_ds);
    const double dT2_mu =
        -lambda * T2 + kTwoOverSqrtPi * c.inv_s2 * (E2l - E2b);
    const double dT2_s = lambda * ls2 * T2 +
                         kTwoOverSqrtPi * (E2b * dBb_ds - E2l * dBl_ds);

    const double dd_mu = dA1_mu * e1 + dA2_mu * e2 + Q * (dT1_mu + dT2_mu);
    const double dd_s = dA1_s * e1 + dA2_s * e2 + Q * (dT1_s + dT2_s);
    g_mu += dd_mu / d;
    g_sigma += dd_s / d;
  }

  k.log(dens, scratch, n);
  double loglik = 0.0;
  for (std::size_t i = 0; i < n; ++i) loglik += scratch[i];

  for (std::size_t i : fixups) {
    const ValueGrad2 r = rect_gauss_loglik_grad(z[i], params);
    loglik += r.value;
    g_mu += r.d_mu;
    g_sigma += r.d_sigma;
  }

  return {loglik, g_mu, g_sigma};
}

}  // namespace ldpb::lik
