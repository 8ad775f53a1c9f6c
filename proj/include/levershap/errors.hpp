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

#include <stdexcept>
#include <string>

namespace levershap {

/// Error categories map 1:1 onto CLI exit codes.
enum class ErrorKind : int {
  Config = 2,   // bad arguments, schema mismatches, unresolved names
  Data = 3,     // unusable input data (non-finite, empty, too small)
  Numeric = 4,  // singular matrices, domain violations, failed estimation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& message) : Error(ErrorKind::Config, message) {}
};

struct DataError : Error {
  explicit DataError(const std::string& message) : Error(ErrorKind::Data, message) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& message) : Error(ErrorKind::Numeric, message) {}
};

}  // namespace levershap
