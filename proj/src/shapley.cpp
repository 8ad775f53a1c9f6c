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

#include "levershap/shapley.hpp"

#include <bit>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "levershap/errors.hpp"
#include "levershap/parallel.hpp"
#include "levershap/rng.hpp"

namespace levershap {

namespace {

// Exact for n <= 20: C(19, 9) = 92378 fits comfortably in 64 bits.
std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

void check_feature_count(int n_features) {
  if (n_features < 1) throw ConfigError("attribution needs at least one feature");
  if (n_features > kMaxExactFeatures) {
    throw ConfigError("enumeration limit: " + std::to_string(n_features) + " features exceeds " +
                      std::to_string(kMaxExactFeatures));
  }
}

}  // namespace

double shapley_weight(int coalition_size, int n_features) {
  check_feature_count(n_features);
  if (coalition_size < 0 || coalition_size >= n_features) {
    throw NumericError("shapley_weight: coalition size " + std::to_string(coalition_size) +
                       " outside [0, " + std::to_string(n_features - 1) + "]");
  }
  return 1.0 / (static_cast<double>(n_features) *
                static_cast<double>(binomial(n_features - 1, coalition_size)));
}

double kernel_shap_weight(int coalition_size, int n_features) {
  check_feature_count(n_features);
  if (coalition_size <= 0 || coalition_size >= n_features) {
    throw NumericError("kernel_shap_weight is defined only for nontrivial coalitions");
  }
  return static_cast<double>(n_features - 1) /
         (static_cast<double>(binomial(n_features, coalition_size)) *
          static_cast<double>(coalition_size) * static_cast<double>(n_features - coalition_size));
}

CharacteristicCache evaluate_game(const ValueFn& value_fn, int n_features, int threads) {
  check_feature_count(n_features);
  const std::uint32_t count = std::uint32_t{1} << n_features;

  // Find the output width from the empty coalition, then fill in parallel.
  const Eigen::VectorXd v0 = value_fn(Coalition::empty(n_features));
  if (v0.size() < 1) throw ConfigError("characteristic function returned an empty vector");

  CharacteristicCache cache;
  cache.n_features = n_features;
  cache.output_dim = static_cast<int>(v0.size());
  cache.values.resize(count, cache.output_dim);
  cache.sigmas = Eigen::MatrixXd::Zero(count, cache.output_dim);
  cache.values.row(0) = v0.transpose();

  parallel_for(static_cast<int>(count) - 1, threads, [&](int i) {
    const std::uint32_t mask = static_cast<std::uint32_t>(i) + 1;
    const Eigen::VectorXd v = value_fn(Coalition(mask, n_features));
    if (v.size() != cache.output_dim) {
      throw ConfigError("characteristic function output width changed between coalitions");
    }
    cache.values.row(mask) = v.transpose();
  });
  return cache;
}

CharacteristicCache evaluate_game(const PolicyModel& model, const Eigen::VectorXd& x_star,
                                  const ValueSampler& sampler, int threads) {
  const int n = sampler.feature_count();
  check_feature_count(n);
  const std::uint32_t count = std::uint32_t{1} << n;

  CharacteristicCache cache;
  cache.n_features = n;
  cache.output_dim = model.output_dim();
  cache.values.resize(count, cache.output_dim);
  cache.sigmas.resize(count, cache.output_dim);

  parallel_for(static_cast<int>(count), threads, [&](int i) {
    const std::uint32_t mask = static_cast<std::uint32_t>(i);
    const SampledValue v = sampler.value(model, x_star, Coalition(mask, n));
    cache.values.row(mask) = v.value.transpose();
    cache.sigmas.row(mask) = v.sigma.transpose();
  });
  return cache;
}

Explanation exact_shapley(const CharacteristicCache& cache) {
  const int n = cache.n_features;
  check_feature_count(n);
  const int outputs = cache.output_dim;
  const std::uint32_t count = std::uint32_t{1} << n;

  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) weights[static_cast<std::size_t>(s)] = shapley_weight(s, n);

  Explanation out;
  out.method = "exact-game";
  out.estimator = "exact";
  out.phi = Eigen::MatrixXd::Zero(outputs, n);
  out.phi_sigma = Eigen::MatrixXd::Zero(outputs, n);

  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const int size = std::popcount(mask);
    if (size == n) continue;
    const double w = weights[static_cast<std::size_t>(size)];
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (mask & bit) continue;
      const std::uint32_t with = mask | bit;
      out.phi.col(i) += w * (cache.values.row(with) - cache.values.row(mask)).transpose();
      out.phi_sigma.col(i) += w * (cache.sigmas.row(with) + cache.sigmas.row(mask)).transpose();
    }
  }

  out.base_values = cache.value(0);
  out.prediction = cache.value(cache.full_mask());
  out.sigma_mc = cache.sigmas.colwise().sum().transpose();
  return out;
}

Explanation exact_shapley(const ValueFn& value_fn, int n_features) {
  return exact_shapley(evaluate_game(value_fn, n_features));
}

namespace {

std::vector<std::uint32_t> kernel_coalitions(int n, CoalitionBudget budget, std::uint64_t seed) {
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const std::uint32_t nontrivial = full - 1;  // masks 1 .. full-1
  if (!budget.use_all && budget.count < n + 2) {
    throw ConfigError("kernel coalition budget must be at least N+2 (= " + std::to_string(n + 2) +
                      ")");
  }
  if (budget.use_all || static_cast<std::uint32_t>(budget.count) >= nontrivial) {
    std::vector<std::uint32_t> masks(nontrivial);
    for (std::uint32_t m = 1; m < full; ++m) masks[m - 1] = m;
    return masks;
  }

  // Distinct nontrivial masks; duplicates are rejected so the design matrix
  // never carries repeated rows.
  Rng rng(seed, /*stream=*/0x6b65726e);
  std::set<std::uint32_t> chosen;
  while (static_cast<int>(chosen.size()) < budget.count) {
    chosen.insert(1 + static_cast<std::uint32_t>(rng.below(nontrivial)));
  }
  return std::vector<std::uint32_t>(chosen.begin(), chosen.end());
}

}  // namespace

Explanation kernel_shapley(const CharacteristicCache& cache, CoalitionBudget budget,
                           std::uint64_t seed) {
  const int n = cache.n_features;
  check_feature_count(n);
  if (n < 2) throw ConfigError("kernel_shapley needs at least two features");
  const int outputs = cache.output_dim;
  const std::uint32_t full = cache.full_mask();

  const std::vector<std::uint32_t> masks = kernel_coalitions(n, budget, seed);
  const int rows = static_cast<int>(masks.size());

  const Eigen::VectorXd v_empty = cache.value(0);
  const Eigen::VectorXd v_full = cache.value(full);
  const Eigen::VectorXd delta = v_full - v_empty;

  // Eliminate the last feature's coefficient via the efficiency constraint:
  // phi_last = delta - sum(others). Columns become z_j - z_last and the
  // response absorbs z_last * delta.
  const int last = n - 1;
  Eigen::MatrixXd design(rows, n - 1);
  Eigen::MatrixXd response(rows, outputs);
  for (int r = 0; r < rows; ++r) {
    const std::uint32_t mask = masks[static_cast<std::size_t>(r)];
    const double sqrt_w = std::sqrt(kernel_shap_weight(std::popcount(mask), n));
    const double z_last = (mask >> last) & 1u ? 1.0 : 0.0;
    for (int j = 0; j < n - 1; ++j) {
      const double z_j = (mask >> j) & 1u ? 1.0 : 0.0;
      design(r, j) = sqrt_w * (z_j - z_last);
    }
    response.row(r) =
        sqrt_w * (cache.values.row(mask) - v_empty.transpose() - z_last * delta.transpose());
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < n - 1) {
    throw NumericError("kernel regression design matrix is singular (rank " +
                       std::to_string(qr.rank()) + " < " + std::to_string(n - 1) +
                       "); the coalition budget covers too few distinct coalitions");
  }
  const Eigen::MatrixXd beta = qr.solve(response);  // (n-1) x outputs

  Explanation out;
  out.method = "exact-game";
  out.estimator = "kernel";
  out.phi.resize(outputs, n);
  for (int j = 0; j < n - 1; ++j) out.phi.col(j) = beta.row(j).transpose();
  out.phi.col(last) = delta - out.phi.leftCols(n - 1).rowwise().sum();

  out.base_values = v_empty;
  out.prediction = v_full;

  // MC scales: the weight-propagation formula over the evaluated coalitions;
  // a conservative audit scale rather than a regression variance.
  out.phi_sigma = Eigen::MatrixXd::Zero(outputs, n);
  Eigen::VectorXd sigma_sum = cache.sigma(0) + cache.sigma(full);
  for (const std::uint32_t mask : masks) sigma_sum += cache.sigma(mask);
  out.sigma_mc = sigma_sum;
  if (budget.use_all) {
    const Explanation reference = exact_shapley(cache);
    out.phi_sigma = reference.phi_sigma;
    out.sigma_mc = reference.sigma_mc;
  }
  return out;
}

Explanation kernel_shapley(const ValueFn& value_fn, int n_features, CoalitionBudget budget,
                           std::uint64_t seed) {
  check_feature_count(n_features);
  if (n_features < 2) throw ConfigError("kernel_shapley needs at least two features");

  if (budget.use_all) {
    return kernel_shapley(evaluate_game(value_fn, n_features), budget, seed);
  }

  // Sparse path: evaluate only the sampled coalitions plus the two anchors.
  const std::uint32_t count = std::uint32_t{1} << n_features;
  CharacteristicCache cache;
  cache.n_features = n_features;
  const std::vector<std::uint32_t> masks = kernel_coalitions(n_features, budget, seed);

  const Eigen::VectorXd v0 = value_fn(Coalition::empty(n_features));
  cache.output_dim = static_cast<int>(v0.size());
  cache.values = Eigen::MatrixXd::Zero(count, cache.output_dim);
  cache.sigmas = Eigen::MatrixXd::Zero(count, cache.output_dim);
  cache.values.row(0) = v0.transpose();
  cache.values.row(cache.full_mask()) =
      value_fn(Coalition::full(n_features)).transpose();
  for (const std::uint32_t mask : masks) {
    cache.values.row(mask) = value_fn(Coalition(mask, n_features)).transpose();
  }
  return kernel_shapley(cache, budget, seed);
}

std::string estimator_name(Estimator estimator) {
  return estimator == Estimator::Exact ? "exact" : "kernel";
}

Estimator estimator_from_name(const std::string& name) {
  if (name == "exact") return Estimator::Exact;
  if (name == "kernel") return Estimator::Kernel;
  throw ConfigError("unknown estimator '" + name + "' (expected exact or kernel)");
}

Explanation explain_instance(const PolicyModel& model, const Eigen::VectorXd& x_star,
                             const ValueSampler& sampler, Estimator estimator, int threads) {
  const CharacteristicCache cache = evaluate_game(model, x_star, sampler, threads);
  Explanation out =
      estimator == Estimator::Exact ? exact_shapley(cache) : kernel_shapley(cache);
  out.method = sampler_kind_name(sampler.kind());
  out.instance = x_star;
  out.mc_samples = sampler.mc_samples();
  out.seed = sampler.seed();
  return out;
}

}  // namespace levershap
