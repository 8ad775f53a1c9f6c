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

#include "levershap/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "levershap/errors.hpp"

namespace levershap {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t start = 0;
    while (start < field.size() && field[start] == ' ') ++start;
    fields.push_back(field.substr(start));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

BackgroundDataset BackgroundDataset::of(Eigen::MatrixXd rows, FeatureSpace space,
                                        std::vector<int> source_episodes) {
  if (rows.cols() != space.size()) {
    throw ConfigError("dataset column count does not match feature space");
  }
  if (rows.rows() < 2) throw DataError("background dataset needs at least two rows");
  if (!rows.allFinite()) throw DataError("background dataset contains non-finite entries");
  BackgroundDataset dataset;
  dataset.rows = std::move(rows);
  dataset.feature_space = std::move(space);
  dataset.source_episodes = std::move(source_episodes);
  return dataset;
}

BackgroundDataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("dataset file '" + path.string() + "' is empty");
  const std::vector<std::string> names = split_csv_line(line);
  FeatureSpace space = FeatureSpace::of(names);
  if (names.size() == FeatureSpace::lever().names.size() &&
      names == FeatureSpace::lever().names) {
    space = FeatureSpace::lever();
  }

  std::vector<std::vector<double>> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != space.size()) {
      throw DataError("dataset row " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(space.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      std::size_t consumed = 0;
      try {
        row[i] = std::stod(fields[i], &consumed);
      } catch (const std::exception&) {
        throw DataError("dataset row " + std::to_string(line_no) + ": cannot parse '" +
                        fields[i] + "'");
      }
      if (consumed != fields[i].size()) {
        throw DataError("dataset row " + std::to_string(line_no) + ": trailing characters in '" +
                        fields[i] + "'");
      }
    }
    values.push_back(std::move(row));
  }

  Eigen::MatrixXd rows(values.size(), space.size());
  for (std::size_t r = 0; r < values.size(); ++r) {
    for (int c = 0; c < space.size(); ++c) rows(static_cast<Eigen::Index>(r), c) = values[r][c];
  }
  return BackgroundDataset::of(std::move(rows), std::move(space));
}

void save_dataset_csv(const BackgroundDataset& dataset, const std::filesystem::path& path) {
  std::string out;
  for (int c = 0; c < dataset.feature_count(); ++c) {
    if (c > 0) out += ',';
    out += dataset.feature_space.names[c];
  }
  out += '\n';
  for (int r = 0; r < dataset.row_count(); ++r) {
    for (int c = 0; c < dataset.feature_count(); ++c) {
      if (c > 0) out += ',';
      out += format_value(dataset.rows(r, c));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
}

}  // namespace levershap
