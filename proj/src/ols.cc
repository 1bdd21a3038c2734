// Copyright 2026 The boundkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "boundkit/ols.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "boundkit/error.h"

namespace boundkit {
namespace {

constexpr double kRankTolerance = 1e-10;

// Lentz's method for the continued fraction of I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 100000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

// I_x(a, b) with 1 - x supplied separately to avoid cancellation.
double incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (x <= 0.0) return 0.0;
  if (one_minus_x <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log(one_minus_x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

}  // namespace

size_t OlsResult::index(std::string_view name) const {
  const auto it = std::find(predictors.begin(), predictors.end(), name);
  if (it == predictors.end()) {
    throw std::out_of_range("no predictor named " + std::string(name));
  }
  return static_cast<size_t>(it - predictors.begin());
}

double regularized_incomplete_beta(double a, double b, double x) {
  return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_two_sided_p(double t, double dof) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  return incomplete_beta(dof / 2.0, 0.5, dof / (dof + t2), t2 / (dof + t2));
}

OlsResult fit_ols(std::span<const std::string> predictor_names,
                  std::span<const double> design, std::span<const double> y) {
  const size_t k = predictor_names.size();
  const size_t n = y.size();
  if (k == 0) throw DataError("regression needs at least one predictor");
  if (design.size() != n * k) {
    throw DataError("design matrix shape does not match the response");
  }
  if (n <= k) {
    throw DataError("regression needs more observations (" +
                    std::to_string(n) + ") than predictors (" +
                    std::to_string(k) + ")");
  }

  // Column-major working copy, reduced in place to R (upper triangle).
  std::vector<double> a(n * k);
  std::vector<double> column_norms(k, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) a[j * n + i] = design[i * k + j];
  }
  for (size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += a[j * n + i] * a[j * n + i];
    column_norms[j] = std::sqrt(s);
  }
  std::vector<double> qty(y.begin(), y.end());
  std::vector<double> v(n);

  for (size_t j = 0; j < k; ++j) {
    double* col = &a[j * n];
    double norm = 0.0;
    for (size_t i = j; i < n; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    if (norm <= kRankTolerance * std::max(column_norms[j], 1.0)) {
      throw DataError("design matrix is rank deficient: predictor '" +
                      predictor_names[j] +
                      "' is collinear with the predictors before it");
    }
    const double alpha = col[j] > 0 ? -norm : norm;
    // v = x - alpha e_j, normalized below through vtv.
    for (size_t i = j; i < n; ++i) v[i] = col[i];
    v[j] -= alpha;
    double vtv = 0.0;
    for (size_t i = j; i < n; ++i) vtv += v[i] * v[i];
    const auto reflect = [&](double* target) {
      double dot = 0.0;
      for (size_t i = j; i < n; ++i) dot += v[i] * target[i];
      const double f = 2.0 * dot / vtv;
      for (size_t i = j; i < n; ++i) target[i] -= f * v[i];
    };
    for (size_t c = j; c < k; ++c) reflect(&a[c * n]);
    reflect(qty.data());
  }

  const auto r = [&](size_t row, size_t col) { return a[col * n + row]; };

  OlsResult out;
  out.predictors.assign(predictor_names.begin(), predictor_names.end());
  out.n = n;
  out.dof = n - k;
  out.coefficients.assign(k, 0.0);
  for (size_t jj = k; jj-- > 0;) {
    double s = qty[jj];
    for (size_t c = jj + 1; c < k; ++c) s -= r(jj, c) * out.coefficients[c];
    out.coefficients[jj] = s / r(jj, jj);
  }

  double rss = 0.0;
  double y_mean = 0.0;
  for (size_t i = 0; i < n; ++i) y_mean += y[i];
  y_mean /= static_cast<double>(n);
  double tss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (size_t j = 0; j < k; ++j) fitted += design[i * k + j] * out.coefficients[j];
    const double e = y[i] - fitted;
    rss += e * e;
    tss += (y[i] - y_mean) * (y[i] - y_mean);
  }
  // Residuals within rounding of an exact fit count as zero.
  double scale = 0.0;
  for (size_t i = 0; i < n; ++i) scale += y[i] * y[i];
  if (rss <= 1e-24 * std::max(scale, 1.0)) rss = 0.0;
  out.degenerate = rss == 0.0;
  out.residual_variance = rss / static_cast<double>(out.dof);
  out.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;

  // R^-1 by back substitution; diag((X'X)^-1) = row norms of R^-1.
  std::vector<double> rinv(k * k, 0.0);
  for (size_t col = 0; col < k; ++col) {
    for (size_t row = col + 1; row-- > 0;) {
      double s = row == col ? 1.0 : 0.0;
      for (size_t m = row + 1; m <= col; ++m) s -= r(row, m) * rinv[m * k + col];
      rinv[row * k + col] = s / r(row, row);
    }
  }
  out.std_errors.resize(k);
  out.t_stats.resize(k);
  out.p_values.resize(k);
  for (size_t j = 0; j < k; ++j) {
    double diag = 0.0;
    for (size_t c = j; c < k; ++c) diag += rinv[j * k + c] * rinv[j * k + c];
    out.std_errors[j] = std::sqrt(out.residual_variance * diag);
    out.t_stats[j] = out.coefficients[j] / out.std_errors[j];
    out.p_values[j] =
        student_t_two_sided_p(out.t_stats[j], static_cast<double>(out.dof));
  }
  return out;
}

}  // namespace boundkit
