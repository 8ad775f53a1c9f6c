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
#include <optional>
#include <string>

#include <Eigen/Core>

#include "levershap/coalition.hpp"
#include "levershap/dataset.hpp"
#include "levershap/gaussian.hpp"
#include "levershap/model.hpp"
#include "levershap/ordering.hpp"

namespace levershap {

enum class SamplerKind { Marginal, Conditional, Causal };

std::string sampler_kind_name(SamplerKind kind);
SamplerKind sampler_kind_from_name(const std::string& name);

/// A coalition value estimate: the per-output Monte Carlo mean and its
/// standard error (sample std / sqrt(M); zero where nothing was sampled).
struct SampledValue {
  Eigen::VectorXd value;
  Eigen::VectorXd sigma;
};

/// Estimates the expected model prediction with the coalition's features
/// held at the explained instance and the remaining features integrated out:
///
///   Marginal    - absent features taken from background rows drawn with
///                 replacement (independence assumption).
///   Conditional - absent features drawn jointly from the fitted Gaussian
///                 conditioned on the present features' values.
///   Causal      - absent features drawn component by component along the
///                 causal ordering; present features act as interventions,
///                 so they condition only downstream draws (and, within a
///                 mutually-interacting component, their component peers).
///
/// Immutable after construction and safe for concurrent use. Every coalition
/// gets its own RNG stream derived from (seed, coalition mask), so results
/// are reproducible regardless of evaluation order or thread count, and the
/// full coalition always returns f(x*) bit-exactly with zero sigma.
class ValueSampler {
 public:
  static ValueSampler marginal(BackgroundDataset dataset, int mc_samples, std::uint64_t seed,
                               bool exhaustive_empty = false);
  static ValueSampler conditional(BackgroundDataset dataset, GaussianModel gaussian,
                                  int mc_samples, std::uint64_t seed);
  /// Fits the Gaussian from the dataset with the default ridge.
  static ValueSampler conditional(BackgroundDataset dataset, int mc_samples, std::uint64_t seed);
  static ValueSampler causal(BackgroundDataset dataset, GaussianModel gaussian,
                             CausalOrdering ordering, int mc_samples, std::uint64_t seed);
  static ValueSampler causal(BackgroundDataset dataset, CausalOrdering ordering, int mc_samples,
                             std::uint64_t seed);

  SamplerKind kind() const { return kind_; }
  int feature_count() const { return dataset_.feature_count(); }
  int mc_samples() const { return mc_samples_; }
  std::uint64_t seed() const { return seed_; }
  const BackgroundDataset& dataset() const { return dataset_; }
  const GaussianModel& gaussian() const;
  const CausalOrdering& ordering() const;

  SampledValue value(const PolicyModel& model, const Eigen::VectorXd& x_star,
                     const Coalition& coalition) const;

 private:
  ValueSampler(SamplerKind kind, BackgroundDataset dataset, int mc_samples, std::uint64_t seed);

  SampledValue marginal_value(const PolicyModel& model, const Eigen::VectorXd& x_star,
                              const Coalition& coalition) const;
  SampledValue conditional_value(const PolicyModel& model, const Eigen::VectorXd& x_star,
                                 const Coalition& coalition) const;
  SampledValue causal_value(const PolicyModel& model, const Eigen::VectorXd& x_star,
                            const Coalition& coalition) const;

  SamplerKind kind_;
  BackgroundDataset dataset_;
  int mc_samples_;
  std::uint64_t seed_;
  bool exhaustive_empty_ = false;
  std::optional<GaussianModel> gaussian_;
  std::optional<CausalOrdering> ordering_;
};

/// Free-function spellings of the three estimators; each checks the sampler
/// kind and delegates.
SampledValue marginal_value(const ValueSampler& sampler, const PolicyModel& model,
                            const Eigen::VectorXd& x_star, const Coalition& coalition);
SampledValue conditional_value(const ValueSampler& sampler, const PolicyModel& model,
                               const Eigen::VectorXd& x_star, const Coalition& coalition);
SampledValue causal_value(const ValueSampler& sampler, const PolicyModel& model,
                          const Eigen::VectorXd& x_star, const Coalition& coalition);

}  // namespace levershap
