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

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "levershap/coalition.hpp"
#include "levershap/samplers.hpp"

namespace levershap {

/// Enumeration guard: exact attribution walks all 2^N coalitions, which is
/// rejected beyond this width rather than silently approximated.
inline constexpr int kMaxExactFeatures = 20;

/// |S|! (N-|S|-1)! / N!, evaluated as 1 / (N * C(N-1, |S|)) so the
/// denominator stays an exact integer for N <= 20.
double shapley_weight(int coalition_size, int n_features);

/// KernelSHAP regression weight (N-1) / (C(N,|S|) * |S| * (N-|S|)) for
/// 0 < |S| < N.
double kernel_shap_weight(int coalition_size, int n_features);

using ValueFn = std::function<Eigen::VectorXd(const Coalition&)>;

/// Dense table of coalition values v(S) (and their MC standard errors) for
/// every mask over n features, memoized so each coalition is evaluated once.
struct CharacteristicCache {
  int n_features = 0;
  int output_dim = 0;
  Eigen::MatrixXd values;  // 2^n x output_dim
  Eigen::MatrixXd sigmas;  // 2^n x output_dim

  std::uint32_t full_mask() const { return (std::uint32_t{1} << n_features) - 1; }
  Eigen::VectorXd value(std::uint32_t mask) const { return values.row(mask).transpose(); }
  Eigen::VectorXd sigma(std::uint32_t mask) const { return sigmas.row(mask).transpose(); }
};

/// Full-enumeration evaluation of a game (zero sigmas). Coalitions are
/// independent, so evaluation parallelizes over masks.
CharacteristicCache evaluate_game(const ValueFn& value_fn, int n_features, int threads = 1);

/// Full-enumeration evaluation of a sampler-backed game for one instance.
CharacteristicCache evaluate_game(const PolicyModel& model, const Eigen::VectorXd& x_star,
                                  const ValueSampler& sampler, int threads = 1);

/// A complete attribution: per-output base values and one phi per feature,
/// plus the Monte Carlo error scales needed to audit additivity.
///
///   base_values[k] + sum_i phi[k][i] == prediction[k]
///
/// holds exactly for exact games and within 4 * sigma_mc[k] for sampled
/// values. phi_sigma propagates per-coalition standard errors through the
/// Shapley weights; sigma_mc is the conservative sum over all coalitions.
struct Explanation {
  std::string method;     // marginal | conditional | causal | exact-game
  std::string estimator;  // exact | kernel
  Eigen::VectorXd base_values;
  Eigen::MatrixXd phi;        // output_dim x n_features
  Eigen::MatrixXd phi_sigma;  // output_dim x n_features
  Eigen::VectorXd sigma_mc;   // per output
  Eigen::VectorXd prediction;
  Eigen::VectorXd instance;  // empty for raw games
  int mc_samples = 0;
  std::uint64_t seed = 0;

  int feature_count() const { return static_cast<int>(phi.cols()); }
  int output_count() const { return static_cast<int>(phi.rows()); }
};

/// Exact Shapley attribution by subset enumeration.
Explanation exact_shapley(const CharacteristicCache& cache);
Explanation exact_shapley(const ValueFn& value_fn, int n_features);

/// Number of coalitions the kernel regression may evaluate. `all()` means
/// every nontrivial coalition; with a smaller count, distinct nontrivial
/// coalitions are sampled from the (seed)-derived stream.
struct CoalitionBudget {
  bool use_all = true;
  int count = 0;

  static CoalitionBudget all() { return {true, 0}; }
  static CoalitionBudget of(int count) { return {false, count}; }
};

/// KernelSHAP: weighted least squares on coalition indicators, with the
/// intercept pinned to v(empty) and the coefficient sum pinned to
/// v(full) - v(empty) by variable elimination, so additivity holds by
/// construction. With a full budget the result equals exact_shapley.
Explanation kernel_shapley(const CharacteristicCache& cache,
                           CoalitionBudget budget = CoalitionBudget::all(),
                           std::uint64_t seed = 0);
Explanation kernel_shapley(const ValueFn& value_fn, int n_features,
                           CoalitionBudget budget = CoalitionBudget::all(),
                           std::uint64_t seed = 0);

enum class Estimator { Exact, Kernel };

std::string estimator_name(Estimator estimator);
Estimator estimator_from_name(const std::string& name);

/// One explanation of model(x_star) against the sampler's background:
/// evaluates the characteristic function over all coalitions (shared across
/// outputs and estimators) and runs the chosen attribution engine.
Explanation explain_instance(const PolicyModel& model, const Eigen::VectorXd& x_star,
                             const ValueSampler& sampler, Estimator estimator = Estimator::Exact,
                             int threads = 1);

}  // namespace levershap
