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

#include <bit>
#include <cstdint>
#include <vector>

#include "levershap/errors.hpp"

namespace levershap {

/// A subset of features, encoded as a fixed-width bitmask over N features.
/// Bit i set means feature i is present (held at the explained instance).
class Coalition {
 public:
  Coalition(std::uint32_t bits, int n_features) : bits_(bits), n_(n_features) {
    if (n_features < 1 || n_features > 32) {
      throw ConfigError("coalition width must be in [1, 32]");
    }
    if (n_features < 32 && bits >= (std::uint32_t{1} << n_features)) {
      throw ConfigError("coalition mask exceeds feature count");
    }
  }

  static Coalition empty(int n_features) { return Coalition(0, n_features); }

  static Coalition full(int n_features) {
    const std::uint32_t all =
        n_features >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n_features) - 1;
    return Coalition(all, n_features);
  }

  std::uint32_t bits() const { return bits_; }
  int feature_count() const { return n_; }
  int size() const { return std::popcount(bits_); }

  bool contains(int i) const { return (bits_ >> i) & 1u; }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return size() == n_; }

  Coalition with(int i) const { return Coalition(bits_ | (std::uint32_t{1} << i), n_); }
  Coalition without(int i) const { return Coalition(bits_ & ~(std::uint32_t{1} << i), n_); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (int i = 0; i < n_; ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  std::vector<int> absent() const {
    std::vector<int> out;
    out.reserve(n_ - size());
    for (int i = 0; i < n_; ++i) {
      if (!contains(i)) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const Coalition& a, const Coalition& b) {
    return a.bits_ == b.bits_ && a.n_ == b.n_;
  }

 private:
  std::uint32_t bits_;
  int n_;
};

}  // namespace levershap
