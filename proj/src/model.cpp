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

#include "levershap/model.hpp"

#include <fstream>

#include <json.hpp>

#include "levershap/dataset.hpp"
#include "levershap/errors.hpp"

namespace levershap {

Eigen::VectorXd PolicyModel::predict(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim()) {
    throw ConfigError("model expects " + std::to_string(input_dim()) + " features, got " +
                      std::to_string(x.size()));
  }
  Eigen::VectorXd y = evaluate(x);
  if (y.size() != output_dim() || !y.allFinite()) {
    throw NumericError("model produced a non-finite or mis-sized output");
  }
  return y;
}

LinearModel::LinearModel(Eigen::MatrixXd weight, Eigen::VectorXd bias)
    : weight_(std::move(weight)), bias_(std::move(bias)) {
  if (weight_.rows() != bias_.size()) {
    throw ConfigError("linear model bias length must equal output count");
  }
}

LinearModel::LinearModel(const Eigen::VectorXd& w)
    : weight_(w.transpose()), bias_(Eigen::VectorXd::Zero(1)) {}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::Relu;
  if (name == "tanh") return Activation::Tanh;
  throw ConfigError("unknown activation '" + name + "'");
}

std::string activation_name(Activation act) {
  switch (act) {
    case Activation::Identity: return "identity";
    case Activation::Relu: return "relu";
    case Activation::Tanh: return "tanh";
  }
  throw ConfigError("invalid activation value");
}

MlpModel::MlpModel(std::vector<MlpLayer> layers, int input_dim, int output_dim)
    : layers_(std::move(layers)), input_dim_(input_dim), output_dim_(output_dim) {
  if (layers_.empty()) throw ConfigError("mlp needs at least one layer");
  Eigen::Index width = input_dim_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const MlpLayer& layer = layers_[i];
    if (layer.weight.cols() != width) {
      throw ConfigError("mlp layer " + std::to_string(i) + " expects input width " +
                        std::to_string(layer.weight.cols()) + " but receives " +
                        std::to_string(width));
    }
    if (layer.bias.size() != layer.weight.rows()) {
      throw ConfigError("mlp layer " + std::to_string(i) + " bias length " +
                        std::to_string(layer.bias.size()) + " does not match row count " +
                        std::to_string(layer.weight.rows()));
    }
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) {
      throw ConfigError("mlp layer " + std::to_string(i) + " contains non-finite weights");
    }
    width = layer.weight.rows();
  }
  if (width != output_dim_) {
    throw ConfigError("mlp final layer width " + std::to_string(width) +
                      " does not match declared output " + std::to_string(output_dim_));
  }
}

Eigen::VectorXd MlpModel::evaluate(const Eigen::VectorXd& x) const {
  Eigen::VectorXd h = x;
  for (const MlpLayer& layer : layers_) {
    h = layer.weight * h + layer.bias;
    switch (layer.activation) {
      case Activation::Identity: break;
      case Activation::Relu: h = h.cwiseMax(0.0); break;
      case Activation::Tanh: h = h.array().tanh().matrix(); break;
    }
  }
  return h;
}

namespace {

MlpLayer layer_from_json(const nlohmann::json& entry, std::size_t index) {
  if (!entry.is_object() || !entry.contains("w") || !entry.contains("b")) {
    throw ConfigError("mlp layer " + std::to_string(index) + " must contain 'w' and 'b'");
  }
  const auto& w = entry["w"];
  if (!w.is_array() || w.empty() || !w[0].is_array()) {
    throw ConfigError("mlp layer " + std::to_string(index) + ": 'w' must be a matrix");
  }
  const std::size_t out_dim = w.size();
  const std::size_t in_dim = w[0].size();
  MlpLayer layer;
  layer.weight.resize(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(in_dim));
  for (std::size_t r = 0; r < out_dim; ++r) {
    if (!w[r].is_array() || w[r].size() != in_dim) {
      throw ConfigError("mlp layer " + std::to_string(index) + ": ragged weight matrix at row " +
                        std::to_string(r));
    }
    for (std::size_t c = 0; c < in_dim; ++c) {
      if (!w[r][c].is_number()) {
        throw ConfigError("mlp layer " + std::to_string(index) + ": non-numeric weight");
      }
      layer.weight(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          w[r][c].get<double>();
    }
  }
  const auto& b = entry["b"];
  if (!b.is_array() || b.size() != out_dim) {
    throw ConfigError("mlp layer " + std::to_string(index) + ": 'b' length must match rows of 'w'");
  }
  layer.bias.resize(static_cast<Eigen::Index>(out_dim));
  for (std::size_t r = 0; r < out_dim; ++r) {
    if (!b[r].is_number()) {
      throw ConfigError("mlp layer " + std::to_string(index) + ": non-numeric bias");
    }
    layer.bias[static_cast<Eigen::Index>(r)] = b[r].get<double>();
  }
  layer.activation = activation_from_name(entry.value("act", "identity"));
  return layer;
}

}  // namespace

std::shared_ptr<MlpModel> mlp_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mlp weights file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("layers") || !doc["layers"].is_array() || doc["layers"].empty()) {
    throw ConfigError("mlp weights file must contain a non-empty 'layers' array");
  }
  if (!doc.contains("input") || !doc.contains("output")) {
    throw ConfigError("mlp weights file must declare 'input' and 'output' dims");
  }
  std::vector<MlpLayer> layers;
  for (std::size_t i = 0; i < doc["layers"].size(); ++i) {
    layers.push_back(layer_from_json(doc["layers"][i], i));
  }
  return std::make_shared<MlpModel>(std::move(layers), doc["input"].get<int>(),
                                    doc["output"].get<int>());
}

std::shared_ptr<MlpModel> load_mlp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weights file '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return mlp_from_json_text(text);
}

std::string mlp_to_json_text(const MlpModel& model) {
  nlohmann::ordered_json doc;
  doc["layers"] = nlohmann::ordered_json::array();
  for (const MlpLayer& layer : model.layers()) {
    nlohmann::ordered_json entry;
    entry["w"] = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) row.push_back(layer.weight(r, c));
      entry["w"].push_back(row);
    }
    entry["b"] = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) entry["b"].push_back(layer.bias[r]);
    entry["act"] = activation_name(layer.activation);
    doc["layers"].push_back(entry);
  }
  doc["input"] = model.input_dim();
  doc["output"] = model.output_dim();
  return doc.dump(2) + "\n";
}

void save_mlp(const MlpModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, mlp_to_json_text(model));
}

}  // namespace levershap
