// Copyright 2026 The Capscope Authors
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

#ifndef CAPSCOPE_ERROR_HPP_
#define CAPSCOPE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace capscope {

enum class ErrorCode {
  IndexMismatch,
  DimensionMismatch,
  UnresolvableScenario,
  InvariantViolated,
  InfeasibleBounds,
  UnboundedVariable,
  NodeLimitExceeded,
  TooManyObjectives,
  SearchSpaceTooLarge,
  SyntaxError,
  SchemaError,
  ValidationError,
  UnknownCitizen,
  UnknownScenario,
};

std::string_view code_name(ErrorCode code);

/// Every failure raised by the library. `path` points at the offending
/// element (e.g. "citizens[0].conversion.y11") and may be empty.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string path = {})
      : std::runtime_error(std::move(message)), code_(code), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace capscope

#endif  // CAPSCOPE_ERROR_HPP_
