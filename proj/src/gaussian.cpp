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

#include "levershap/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "levershap/errors.hpp"

namespace levershap {

namespace {

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& rows) {
  const Eigen::Index r = rows.rows();
  const Eigen::VectorXd mean = rows.colwise().mean();
  const Eigen::MatrixXd centered = rows.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(r - 1);
  return 0.5 * (cov + cov.transpose());
}

Eigen::MatrixXd gather_block(const Eigen::MatrixXd& cov, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = cov(rows[i], cols[j]);
  }
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

}  // namespace

GaussianModel fit_gaussian(const Eigen::MatrixXd& rows, double ridge) {
  if (rows.rows() < 2) throw DataError("gaussian fit needs at least two rows");
  if (!rows.allFinite()) throw DataError("gaussian fit given non-finite data");
  if (ridge < 0.0) throw ConfigError("ridge must be non-negative");

  GaussianModel model;
  model.mean = rows.colwise().mean();
  model.covariance = sample_covariance(rows);
  model.covariance.diagonal().array() += ridge;
  return model;
}

double default_ridge(const Eigen::MatrixXd& rows) {
  if (rows.rows() < 2) throw DataError("gaussian fit needs at least two rows");
  const double trace = sample_covariance(rows).trace();
  return std::max(1e-6 * trace / static_cast<double>(rows.cols()), 1e-12);
}

GaussianModel fit_gaussian(const Eigen::MatrixXd& rows) {
  return fit_gaussian(rows, default_ridge(rows));
}

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& covariance) {
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() == Eigen::Success) return llt.matrixL();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
  if (eig.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of covariance failed");
  }
  const Eigen::VectorXd clamped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clamped.cwiseSqrt().asDiagonal();
}

ConditionalGaussian::ConditionalGaussian(const GaussianModel& model, std::vector<int> given,
                                         std::vector<int> target)
    : given_(std::move(given)), target_(std::move(target)) {
  const int n = model.dim();
  std::set<int> seen;
  for (int i : given_) {
    if (i < 0 || i >= n) throw ConfigError("conditioning index out of range");
    if (!seen.insert(i).second) throw ConfigError("duplicate conditioning index");
  }
  for (int i : target_) {
    if (i < 0 || i >= n) throw ConfigError("target index out of range");
    if (seen.count(i)) throw ConfigError("target index also appears as conditioning index");
  }
  if (target_.empty()) throw ConfigError("conditional target set is empty");

  mean_target_ = gather(model.mean, target_);
  mean_given_ = gather(model.mean, given_);

  if (given_.empty()) {
    gain_.resize(static_cast<Eigen::Index>(target_.size()), 0);
    covariance_ = gather_block(model.covariance, target_, target_);
  } else {
    const Eigen::MatrixXd cov_bb = gather_block(model.covariance, given_, given_);
    const Eigen::MatrixXd cov_ab = gather_block(model.covariance, target_, given_);
    Eigen::LLT<Eigen::MatrixXd> llt(cov_bb);
    if (llt.info() != Eigen::Success) {
      throw NumericError("conditioning covariance block is singular");
    }
    gain_ = llt.solve(cov_ab.transpose()).transpose();
    covariance_ = gather_block(model.covariance, target_, target_) - gain_ * cov_ab.transpose();
  }

  covariance_ = 0.5 * (covariance_ + covariance_.transpose());
  // Conditioning can leave slightly negative eigenvalues; clamp to PSD.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance_);
  if (eig.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of conditional covariance failed");
  }
  const Eigen::VectorXd clamped = eig.eigenvalues().cwiseMax(0.0);
  covariance_ = eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
  covariance_ = 0.5 * (covariance_ + covariance_.transpose());
  factor_ = eig.eigenvectors() * clamped.cwiseSqrt().asDiagonal();
}

Eigen::VectorXd ConditionalGaussian::mean_given(const Eigen::VectorXd& given_values) const {
  if (static_cast<std::size_t>(given_values.size()) != given_.size()) {
    throw ConfigError("conditioning value count does not match conditioning set");
  }
  if (given_.empty()) return mean_target_;
  return mean_target_ + gain_ * (given_values - mean_given_);
}

Eigen::VectorXd ConditionalGaussian::sample(const Eigen::VectorXd& given_values, Rng& rng) const {
  return mean_given(given_values) +
         factor_ * rng.normal_vector(static_cast<Eigen::Index>(target_.size()));
}

GaussianModel gaussian_conditional(const GaussianModel& model,
                                   const std::vector<std::pair<int, double>>& given) {
  const int n = model.dim();
  if (static_cast<int>(given.size()) >= n) {
    throw ConfigError("conditioning must leave at least one free coordinate");
  }
  std::vector<int> given_idx;
  Eigen::VectorXd given_values(given.size());
  for (std::size_t i = 0; i < given.size(); ++i) {
    given_idx.push_back(given[i].first);
    given_values[static_cast<Eigen::Index>(i)] = given[i].second;
  }
  std::vector<int> target;
  for (int i = 0; i < n; ++i) {
    if (std::find(given_idx.begin(), given_idx.end(), i) == given_idx.end()) target.push_back(i);
  }
  ConditionalGaussian transform(model, given_idx, target);
  GaussianModel out;
  out.mean = transform.mean_given(given_values);
  out.covariance = transform.covariance();
  return out;
}

Eigen::MatrixXd sample_gaussian(const GaussianModel& model, int count, Rng& rng) {
  const Eigen::MatrixXd factor = psd_factor(model.covariance);
  Eigen::MatrixXd rows(count, model.dim());
  for (int r = 0; r < count; ++r) {
    rows.row(r) = (model.mean + factor * rng.normal_vector(model.dim())).transpose();
  }
  return rows;
}

double mahalanobis_distance(const GaussianModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.mean.size()) throw ConfigError("dimension mismatch in mahalanobis_distance");
  Eigen::LLT<Eigen::MatrixXd> llt(model.covariance);
  if (llt.info() != Eigen::Success) throw NumericError("covariance is singular");
  const Eigen::VectorXd d = x - model.mean;
  return std::sqrt(d.dot(llt.solve(d)));
}

}  // namespace levershap
