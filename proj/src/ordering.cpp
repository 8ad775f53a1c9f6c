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

#include "levershap/ordering.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "levershap/errors.hpp"

namespace levershap {

CausalOrdering CausalOrdering::of(std::vector<std::vector<int>> components,
                                  std::vector<bool> confounded, int n_features) {
  if (components.size() != confounded.size()) {
    throw ConfigError("causal ordering needs one confounding flag per component");
  }
  std::set<int> seen;
  for (const auto& component : components) {
    if (component.empty()) throw ConfigError("causal ordering components must be non-empty");
    for (int i : component) {
      if (i < 0 || i >= n_features) throw ConfigError("causal ordering index out of range");
      if (!seen.insert(i).second) {
        throw ConfigError("feature index " + std::to_string(i) +
                          " appears twice in causal ordering");
      }
    }
  }
  if (static_cast<int>(seen.size()) != n_features) {
    throw ConfigError("causal ordering must cover every feature exactly once");
  }
  CausalOrdering ordering;
  ordering.components = std::move(components);
  ordering.confounded = std::move(confounded);
  return ordering;
}

CausalOrdering CausalOrdering::single_component(int n_features, bool confounded) {
  std::vector<int> all(n_features);
  for (int i = 0; i < n_features; ++i) all[i] = i;
  return of({all}, {confounded}, n_features);
}

CausalOrdering load_ordering_json(const std::filesystem::path& path, const FeatureSpace& space) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open ordering file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("ordering file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!doc.contains("ordering") || !doc["ordering"].is_array()) {
    throw ConfigError("ordering file must contain an 'ordering' array");
  }
  if (!doc.contains("confounding") || !doc["confounding"].is_array()) {
    throw ConfigError("ordering file must contain a 'confounding' array");
  }

  std::vector<std::vector<int>> components;
  for (const auto& group : doc["ordering"]) {
    if (!group.is_array()) throw ConfigError("ordering components must be arrays of names");
    std::vector<int> component;
    for (const auto& name : group) {
      if (!name.is_string()) throw ConfigError("ordering feature entries must be strings");
      component.push_back(space.index_of(name.get<std::string>()));
    }
    components.push_back(std::move(component));
  }
  std::vector<bool> confounded;
  for (const auto& flag : doc["confounding"]) {
    if (!flag.is_boolean()) throw ConfigError("confounding entries must be booleans");
    confounded.push_back(flag.get<bool>());
  }
  return CausalOrdering::of(std::move(components), std::move(confounded), space.size());
}

std::string ordering_to_json_text(const CausalOrdering& ordering, const FeatureSpace& space) {
  nlohmann::ordered_json doc;
  doc["ordering"] = nlohmann::ordered_json::array();
  for (const auto& component : ordering.components) {
    nlohmann::ordered_json group = nlohmann::ordered_json::array();
    for (int i : component) group.push_back(space.names[static_cast<std::size_t>(i)]);
    doc["ordering"].push_back(group);
  }
  doc["confounding"] = nlohmann::ordered_json::array();
  for (bool flag : ordering.confounded) doc["confounding"].push_back(flag);
  return doc.dump(2) + "\n";
}

CausalOrdering lever_default_ordering() {
  const FeatureSpace space = FeatureSpace::lever();
  return CausalOrdering::of(
      {{space.index_of("theta_target")},
       {space.index_of("q1"), space.index_of("q2"), space.index_of("q3")},
       {space.index_of("q4"), space.index_of("dx"), space.index_of("dz")},
       {space.index_of("theta_lever")}},
      {false, false, false, false}, space.size());
}

}  // namespace levershap
