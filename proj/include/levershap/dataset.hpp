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

#include <Eigen/Core>

#include "levershap/feature_space.hpp"

namespace levershap {

/// Recorded feature vectors used for every expectation estimate. One row per
/// recorded state; columns follow the feature space order.
struct BackgroundDataset {
  Eigen::MatrixXd rows;
  FeatureSpace feature_space;
  std::vector<int> source_episodes;  // empty when provenance is unknown

  int row_count() const { return static_cast<int>(rows.rows()); }
  int feature_count() const { return feature_space.size(); }

  static BackgroundDataset of(Eigen::MatrixXd rows, FeatureSpace space,
                              std::vector<int> source_episodes = {});
};

BackgroundDataset load_dataset_csv(const std::filesystem::path& path);

/// Writes header + one row per state, 17 significant digits, atomically.
void save_dataset_csv(const BackgroundDataset& dataset, const std::filesystem::path& path);

/// Writes `content` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace levershap
