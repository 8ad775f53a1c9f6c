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

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace levershap {

/// A deterministic map from feature vectors to action vectors. Models are
/// immutable after construction and safe for concurrent evaluation; the same
/// input always yields the bit-identical output.
class PolicyModel {
 public:
  virtual ~PolicyModel() = default;

  virtual int input_dim() const = 0;
  virtual int output_dim() const = 0;
  virtual Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const = 0;

  /// evaluate() with input-dimension and output-finiteness checks.
  Eigen::VectorXd predict(const Eigen::VectorXd& x) const;
};

/// f(x) = W x + b. The workhorse of the analytic test fixtures.
class LinearModel : public PolicyModel {
 public:
  LinearModel(Eigen::MatrixXd weight, Eigen::VectorXd bias);

  /// Single-output convenience: f(x) = w . x.
  explicit LinearModel(const Eigen::VectorXd& w);

  int input_dim() const override { return static_cast<int>(weight_.cols()); }
  int output_dim() const override { return static_cast<int>(weight_.rows()); }
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const override { return weight_ * x + bias_; }

  const Eigen::MatrixXd& weight() const { return weight_; }
  const Eigen::VectorXd& bias() const { return bias_; }

 private:
  Eigen::MatrixXd weight_;
  Eigen::VectorXd bias_;
};

/// Wraps an arbitrary deterministic function; used for synthetic games.
class FunctionModel : public PolicyModel {
 public:
  FunctionModel(int input_dim, int output_dim,
                std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn)
      : input_dim_(input_dim), output_dim_(output_dim), fn_(std::move(fn)) {}

  int input_dim() const override { return input_dim_; }
  int output_dim() const override { return output_dim_; }
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const override { return fn_(x); }

 private:
  int input_dim_;
  int output_dim_;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn_;
};

enum class Activation { Identity, Relu, Tanh };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation act);

struct MlpLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;
  Activation activation = Activation::Identity;
};

/// Fully connected feed-forward network evaluated in 64-bit floats. Layer
/// dimensions are validated at construction so a bad weights file fails
/// loudly, naming the offending layer.
class MlpModel : public PolicyModel {
 public:
  MlpModel(std::vector<MlpLayer> layers, int input_dim, int output_dim);

  int input_dim() const override { return input_dim_; }
  int output_dim() const override { return output_dim_; }
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const override;

  const std::vector<MlpLayer>& layers() const { return layers_; }

 private:
  std::vector<MlpLayer> layers_;
  int input_dim_;
  int output_dim_;
};

/// Weights file schema:
/// {"layers":[{"w":[[...]],"b":[...],"act":"tanh"}], "input": 8, "output": 4}
/// with matrices stored row-major.
std::shared_ptr<MlpModel> load_mlp(const std::filesystem::path& path);
void save_mlp(const MlpModel& model, const std::filesystem::path& path);
std::string mlp_to_json_text(const MlpModel& model);
std::shared_ptr<MlpModel> mlp_from_json_text(const std::string& text);

}  // namespace levershap
