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
#include <string>
#include <vector>

#include "levershap/feature_space.hpp"

namespace levershap {

/// Ordered partition of the features into chain components. Earlier
/// components causally precede later ones. A component whose internal
/// dependence stems from a hidden common cause carries confounded = true;
/// intervening on one member then does not move the others. With
/// confounded = false the members mutually interact, so intervened members
/// join the conditioning set of their component's absent members.
struct CausalOrdering {
  std::vector<std::vector<int>> components;
  std::vector<bool> confounded;

  int component_count() const { return static_cast<int>(components.size()); }

  /// Validates that components exactly partition {0..n-1}, none is empty,
  /// and the flag list matches.
  static CausalOrdering of(std::vector<std::vector<int>> components, std::vector<bool> confounded,
                           int n_features);

  /// All features in one component.
  static CausalOrdering single_component(int n_features, bool confounded = false);
};

/// Loads {"ordering": [[name, ...], ...], "confounding": [bool, ...]},
/// resolving feature names against `space`.
CausalOrdering load_ordering_json(const std::filesystem::path& path, const FeatureSpace& space);

std::string ordering_to_json_text(const CausalOrdering& ordering, const FeatureSpace& space);

/// The default lever-task ordering shipped with the CLI.
CausalOrdering lever_default_ordering();

}  // namespace levershap
