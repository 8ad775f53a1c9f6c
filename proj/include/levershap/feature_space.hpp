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

#include <string>
#include <vector>

#include "levershap/errors.hpp"

namespace levershap {

/// Ordered, named feature schema. Names must be unique and non-empty; units
/// are optional annotations carried into reports.
struct FeatureSpace {
  std::vector<std::string> names;
  std::vector<std::string> units;

  int size() const { return static_cast<int>(names.size()); }

  /// Index of `name`, or -1 when absent.
  int find(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
      if (names[i] == name) return i;
    }
    return -1;
  }

  int index_of(const std::string& name) const {
    const int i = find(name);
    if (i < 0) throw ConfigError("unknown feature name '" + name + "'");
    return i;
  }

  static FeatureSpace of(std::vector<std::string> names, std::vector<std::string> units = {}) {
    if (names.empty()) throw ConfigError("feature space must contain at least one feature");
    if (units.empty()) units.assign(names.size(), "");
    if (units.size() != names.size()) {
      throw ConfigError("feature space units must match feature count");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) throw ConfigError("feature names must be non-empty");
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        if (names[i] == names[j]) {
          throw ConfigError("duplicate feature name '" + names[i] + "'");
        }
      }
    }
    FeatureSpace space;
    space.names = std::move(names);
    space.units = std::move(units);
    return space;
  }

  /// The eight-feature lever-manipulation schema used throughout the tooling.
  static FeatureSpace lever() {
    return of({"q1", "q2", "q3", "q4", "dx", "dz", "theta_lever", "theta_target"},
              {"rad", "rad", "rad", "m", "m", "m", "rad", "rad"});
  }
};

}  // namespace levershap
