// Copyright (c) specsense contributors
// SPDX-License-Identifier: Apache-2.0
#include "specsense/qfunc.hpp"

#include <cmath>
#include <stdexcept>

namespace specsense {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Rational approximation of the standard normal quantile (Acklam's
// coefficients), accurate to ~1e-9. Refined below with Newton steps
// against erfc, which brings the inverse to full double precision.
double quantile_estimate(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double t = q * q;
    return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * q /
           (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
  }
  double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}
}  // namespace

double q_tail(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double q_tail_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("q_tail_inv: probability must lie in (0, 1)");
  }
  // q_tail(x) = 1 - Phi(x), so x = Phi^{-1}(1 - p) = -Phi^{-1}(p).
  double x = -quantile_estimate(p);
  // Newton on q_tail(x) - p = 0 with q_tail' = -pdf.
  for (int i = 0; i < 3; ++i) {
    double pdf = normal_pdf(x);
    if (pdf <= 0.0) break;
    double err = q_tail(x) - p;
    if (err == 0.0) break;
    x += err / pdf;
  }
  return x;
}

}  // namespace specsense
