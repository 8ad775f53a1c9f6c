// Copyright 2026 The levershap Authors
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

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "levershap/rng.hpp"

namespace levershap {

/// Multivariate normal with a symmetric covariance. Fitted models are
/// positive definite after ridge regularization; conditionals may be
/// positive semi-definite (clamped).
struct GaussianModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  int dim() const { return static_cast<int>(mean.size()); }
};

/// Column means and sample covariance (divisor R-1) plus ridge * I.
/// Rows must be finite and R >= 2. Throws DataError / NumericError.
GaussianModel fit_gaussian(const Eigen::MatrixXd& rows, double ridge);

/// Ridge used when none is given explicitly: 1e-6 * trace(sample cov) / N,
/// floored at 1e-12 so constant data still yields an invertible fit.
double default_ridge(const Eigen::MatrixXd& rows);

GaussianModel fit_gaussian(const Eigen::MatrixXd& rows);

/// Factor L with L L^T = cov. Uses Cholesky when positive definite and an
/// eigenvalue-clamped square root otherwise.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& covariance);

/// Precomputed Gaussian conditioning: the distribution of the `target`
/// coordinates given values for the `given` coordinates. The conditioning
/// values enter only through mean_given(), so one transform serves draws
/// with varying conditioning values.
class ConditionalGaussian {
 public:
  ConditionalGaussian(const GaussianModel& model, std::vector<int> given, std::vector<int> target);

  const std::vector<int>& given() const { return given_; }
  const std::vector<int>& target() const { return target_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  /// mu_a + K (x_b - mu_b)
  Eigen::VectorXd mean_given(const Eigen::VectorXd& given_values) const;

  /// One joint draw of the target coordinates.
  Eigen::VectorXd sample(const Eigen::VectorXd& given_values, Rng& rng) const;

 private:
  std::vector<int> given_;
  std::vector<int> target_;
  Eigen::VectorXd mean_target_;
  Eigen::VectorXd mean_given_;
  Eigen::MatrixXd gain_;        // K = Sigma_ab Sigma_bb^{-1}
  Eigen::MatrixXd covariance_;  // Sigma_a|b, symmetrized and eigenvalue-clamped
  Eigen::MatrixXd factor_;      // L with L L^T = covariance_
};

/// Standard multivariate-normal conditioning on (index, value) pairs.
/// Returns the model over the remaining coordinates, in ascending index
/// order. Indices must be distinct and leave at least one coordinate free.
GaussianModel gaussian_conditional(const GaussianModel& model,
                                   const std::vector<std::pair<int, double>>& given);

/// `count` rows drawn from the model.
Eigen::MatrixXd sample_gaussian(const GaussianModel& model, int count, Rng& rng);

/// Mahalanobis distance of x under the model.
double mahalanobis_distance(const GaussianModel& model, const Eigen::VectorXd& x);

}  // namespace levershap
