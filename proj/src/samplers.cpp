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

#include "levershap/samplers.hpp"

#include <cmath>

#include "levershap/errors.hpp"
#include "levershap/rng.hpp"

namespace levershap {

namespace {

/// Streaming per-output mean and standard error over model outputs.
class MeanAccumulator {
 public:
  explicit MeanAccumulator(int dim)
      : count_(0), mean_(Eigen::VectorXd::Zero(dim)), m2_(Eigen::VectorXd::Zero(dim)) {}

  void add(const Eigen::VectorXd& y) {
    ++count_;
    const Eigen::VectorXd delta = y - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta.cwiseProduct(y - mean_);
  }

  SampledValue finish() const {
    SampledValue out;
    out.value = mean_;
    if (count_ >= 2) {
      const double m = static_cast<double>(count_);
      out.sigma = (m2_ / (m - 1.0)).cwiseMax(0.0).cwiseSqrt() / std::sqrt(m);
    } else {
      out.sigma = Eigen::VectorXd::Zero(mean_.size());
    }
    return out;
  }

 private:
  long count_;
  Eigen::VectorXd mean_;
  Eigen::VectorXd m2_;
};

void check_instance(const Eigen::VectorXd& x_star, int n) {
  if (x_star.size() != n) {
    throw ConfigError("instance has " + std::to_string(x_star.size()) + " features, expected " +
                      std::to_string(n));
  }
  if (!x_star.allFinite()) throw DataError("instance contains non-finite values");
}

void check_model(const PolicyModel& model, int n) {
  if (model.input_dim() != n) {
    throw ConfigError("model input dimension " + std::to_string(model.input_dim()) +
                      " does not match feature count " + std::to_string(n));
  }
}

}  // namespace

std::string sampler_kind_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Marginal: return "marginal";
    case SamplerKind::Conditional: return "conditional";
    case SamplerKind::Causal: return "causal";
  }
  throw ConfigError("invalid sampler kind");
}

SamplerKind sampler_kind_from_name(const std::string& name) {
  if (name == "marginal") return SamplerKind::Marginal;
  if (name == "conditional") return SamplerKind::Conditional;
  if (name == "causal") return SamplerKind::Causal;
  throw ConfigError("unknown method '" + name + "' (expected marginal, conditional or causal)");
}

ValueSampler::ValueSampler(SamplerKind kind, BackgroundDataset dataset, int mc_samples,
                           std::uint64_t seed)
    : kind_(kind), dataset_(std::move(dataset)), mc_samples_(mc_samples), seed_(seed) {
  if (mc_samples_ < 1) throw ConfigError("mc_samples must be at least 1");
  if (dataset_.row_count() < 2) throw DataError("background dataset needs at least two rows");
}

ValueSampler ValueSampler::marginal(BackgroundDataset dataset, int mc_samples, std::uint64_t seed,
                                    bool exhaustive_empty) {
  ValueSampler sampler(SamplerKind::Marginal, std::move(dataset), mc_samples, seed);
  sampler.exhaustive_empty_ = exhaustive_empty;
  return sampler;
}

ValueSampler ValueSampler::conditional(BackgroundDataset dataset, GaussianModel gaussian,
                                       int mc_samples, std::uint64_t seed) {
  if (gaussian.dim() != dataset.feature_count()) {
    throw ConfigError("gaussian dimension does not match dataset feature count");
  }
  ValueSampler sampler(SamplerKind::Conditional, std::move(dataset), mc_samples, seed);
  sampler.gaussian_ = std::move(gaussian);
  return sampler;
}

ValueSampler ValueSampler::conditional(BackgroundDataset dataset, int mc_samples,
                                       std::uint64_t seed) {
  GaussianModel gaussian = fit_gaussian(dataset.rows);
  return conditional(std::move(dataset), std::move(gaussian), mc_samples, seed);
}

ValueSampler ValueSampler::causal(BackgroundDataset dataset, GaussianModel gaussian,
                                  CausalOrdering ordering, int mc_samples, std::uint64_t seed) {
  if (gaussian.dim() != dataset.feature_count()) {
    throw ConfigError("gaussian dimension does not match dataset feature count");
  }
  int covered = 0;
  for (const auto& component : ordering.components) covered += static_cast<int>(component.size());
  if (covered != dataset.feature_count()) {
    throw ConfigError("causal ordering does not cover the dataset's feature space");
  }
  ValueSampler sampler(SamplerKind::Causal, std::move(dataset), mc_samples, seed);
  sampler.gaussian_ = std::move(gaussian);
  sampler.ordering_ = std::move(ordering);
  return sampler;
}

ValueSampler ValueSampler::causal(BackgroundDataset dataset, CausalOrdering ordering,
                                  int mc_samples, std::uint64_t seed) {
  GaussianModel gaussian = fit_gaussian(dataset.rows);
  return causal(std::move(dataset), std::move(gaussian), std::move(ordering), mc_samples, seed);
}

const GaussianModel& ValueSampler::gaussian() const {
  if (!gaussian_) throw ConfigError("sampler carries no gaussian model");
  return *gaussian_;
}

const CausalOrdering& ValueSampler::ordering() const {
  if (!ordering_) throw ConfigError("sampler carries no causal ordering");
  return *ordering_;
}

SampledValue ValueSampler::value(const PolicyModel& model, const Eigen::VectorXd& x_star,
                                 const Coalition& coalition) const {
  const int n = feature_count();
  check_instance(x_star, n);
  check_model(model, n);
  if (coalition.feature_count() != n) {
    throw ConfigError("coalition width does not match feature count");
  }

  // The full coalition leaves nothing to integrate: exact model output.
  if (coalition.is_full()) {
    SampledValue out;
    out.value = model.predict(x_star);
    out.sigma = Eigen::VectorXd::Zero(model.output_dim());
    return out;
  }

  switch (kind_) {
    case SamplerKind::Marginal: return marginal_value(model, x_star, coalition);
    case SamplerKind::Conditional: return conditional_value(model, x_star, coalition);
    case SamplerKind::Causal: return causal_value(model, x_star, coalition);
  }
  throw ConfigError("invalid sampler kind");
}

SampledValue ValueSampler::marginal_value(const PolicyModel& model, const Eigen::VectorXd& x_star,
                                          const Coalition& coalition) const {
  const int n = feature_count();
  const int rows = dataset_.row_count();
  MeanAccumulator acc(model.output_dim());
  Eigen::VectorXd x(n);

  const bool sweep = exhaustive_empty_ && coalition.is_empty();
  if (sweep) {
    for (int r = 0; r < rows; ++r) {
      const Eigen::VectorXd y = model.predict(dataset_.rows.row(r).transpose());
      acc.add(y);
    }
    SampledValue out = acc.finish();
    out.sigma.setZero();  // exact dataset mean, no sampling error
    return out;
  }

  Rng rng = Rng::for_coalition(seed_, coalition.bits());
  for (int m = 0; m < mc_samples_; ++m) {
    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(rows)));
    for (int i = 0; i < n; ++i) {
      x[i] = coalition.contains(i) ? x_star[i] : dataset_.rows(r, i);
    }
    acc.add(model.predict(x));
  }
  return acc.finish();
}

SampledValue ValueSampler::conditional_value(const PolicyModel& model,
                                             const Eigen::VectorXd& x_star,
                                             const Coalition& coalition) const {
  const int n = feature_count();
  const std::vector<int> present = coalition.members();
  const std::vector<int> absent = coalition.absent();
  const ConditionalGaussian transform(*gaussian_, present, absent);

  Eigen::VectorXd present_values(present.size());
  for (std::size_t i = 0; i < present.size(); ++i) {
    present_values[static_cast<Eigen::Index>(i)] = x_star[present[i]];
  }

  Rng rng = Rng::for_coalition(seed_, coalition.bits());
  MeanAccumulator acc(model.output_dim());
  Eigen::VectorXd x(n);
  for (int i : present) x[i] = x_star[i];
  for (int m = 0; m < mc_samples_; ++m) {
    const Eigen::VectorXd draw = transform.sample(present_values, rng);
    for (std::size_t i = 0; i < absent.size(); ++i) x[absent[i]] = draw[static_cast<Eigen::Index>(i)];
    acc.add(model.predict(x));
  }
  return acc.finish();
}

SampledValue ValueSampler::causal_value(const PolicyModel& model, const Eigen::VectorXd& x_star,
                                        const Coalition& coalition) const {
  const int n = feature_count();
  const CausalOrdering& ordering = *ordering_;

  // Per-component draw plans, fixed for this coalition. Component j's absent
  // members are drawn conditionally on every feature of earlier components
  // (interventions at x*, absent features at their sampled values) plus, for
  // mutually-interacting components, the intervened members of component j
  // itself. Confounded components exclude their own intervened members: a
  // hidden common cause means the intervention says nothing about the peers.
  struct ComponentPlan {
    std::vector<int> absent;
    std::vector<int> conditioning;
    std::optional<ConditionalGaussian> transform;
  };
  std::vector<ComponentPlan> plans;
  std::vector<int> upstream;  // all features in components before j
  for (int j = 0; j < ordering.component_count(); ++j) {
    const std::vector<int>& component = ordering.components[static_cast<std::size_t>(j)];
    ComponentPlan plan;
    std::vector<int> intervened;
    for (int i : component) {
      if (coalition.contains(i)) {
        intervened.push_back(i);
      } else {
        plan.absent.push_back(i);
      }
    }
    if (!plan.absent.empty()) {
      plan.conditioning = upstream;
      if (!ordering.confounded[static_cast<std::size_t>(j)]) {
        plan.conditioning.insert(plan.conditioning.end(), intervened.begin(), intervened.end());
      }
      plan.transform.emplace(*gaussian_, plan.conditioning, plan.absent);
      plans.push_back(std::move(plan));
    }
    upstream.insert(upstream.end(), component.begin(), component.end());
  }

  Rng rng = Rng::for_coalition(seed_, coalition.bits());
  MeanAccumulator acc(model.output_dim());
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = coalition.contains(i) ? x_star[i] : 0.0;
  for (int m = 0; m < mc_samples_; ++m) {
    for (const ComponentPlan& plan : plans) {
      Eigen::VectorXd given(plan.conditioning.size());
      for (std::size_t i = 0; i < plan.conditioning.size(); ++i) {
        given[static_cast<Eigen::Index>(i)] = x[plan.conditioning[i]];
      }
      const Eigen::VectorXd draw = plan.transform->sample(given, rng);
      for (std::size_t i = 0; i < plan.absent.size(); ++i) {
        x[plan.absent[i]] = draw[static_cast<Eigen::Index>(i)];
      }
    }
    acc.add(model.predict(x));
  }
  return acc.finish();
}

SampledValue marginal_value(const ValueSampler& sampler, const PolicyModel& model,
                            const Eigen::VectorXd& x_star, const Coalition& coalition) {
  if (sampler.kind() != SamplerKind::Marginal) {
    throw ConfigError("marginal_value requires a marginal sampler");
  }
  return sampler.value(model, x_star, coalition);
}

SampledValue conditional_value(const ValueSampler& sampler, const PolicyModel& model,
                               const Eigen::VectorXd& x_star, const Coalition& coalition) {
  if (sampler.kind() != SamplerKind::Conditional) {
    throw ConfigError("conditional_value requires a conditional sampler");
  }
  return sampler.value(model, x_star, coalition);
}

SampledValue causal_value(const ValueSampler& sampler, const PolicyModel& model,
                          const Eigen::VectorXd& x_star, const Coalition& coalition) {
  if (sampler.kind() != SamplerKind::Causal) {
    throw ConfigError("causal_value requires a causal sampler");
  }
  return sampler.value(model, x_star, coalition);
}

}  // namespace levershap
