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

#ifndef BOUNDKIT_OLS_H_
#define BOUNDKIT_OLS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boundkit {

// Ordinary least squares fit. Coefficients come from a Householder QR
// factorization of the design matrix; standard errors from the residual
// variance and (X'X)^-1 = R^-1 R^-T.
struct OlsResult {
  std::vector<std::string> predictors;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_stats;   // coefficient / std_error
  std::vector<double> p_values;  // two-sided, t distribution with dof
  size_t n = 0;
  size_t dof = 0;  // n - predictors
  double residual_variance = 0.0;
  double r_squared = 0.0;
  // Residuals are exactly zero, so standard errors are zero and the t
  // statistics are infinite (or NaN for zero coefficients).
  bool degenerate = false;

  // Index of a predictor by name; throws std::out_of_range.
  size_t index(std::string_view name) const;
};

// `design` is row-major with predictor_names.size() columns. Include an
// all-ones column to fit an intercept. Throws DataError when n is not larger
// than the number of predictors, or when a column is (numerically) a linear
// combination of the columns before it; the message names that column.
OlsResult fit_ols(std::span<const std::string> predictor_names,
                  std::span<const double> design, std::span<const double> y);

// Regularized incomplete beta function I_x(a, b), by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with dof degrees of freedom. Returns 0 for
// infinite t and NaN for NaN.
double student_t_two_sided_p(double t, double dof);

}  // namespace boundkit

#endif  // BOUNDKIT_OLS_H_
