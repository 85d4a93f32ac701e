// Copyright 2026 the creduq authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace creduq {

/// Error categories. The numeric values double as machine-readable codes:
/// the CLI uses them as process exit codes and the C API returns them as
/// status values, so they must stay stable.
enum class ErrorCode : int {
  parse = 2,           // unreadable file, malformed JSON/CSV, empty dataset
  shape = 3,           // inconsistent M/K, missing or duplicate rows
  simplex = 4,         // probability vector fails simplex validation
  capability = 5,      // operation unavailable at this K (Hartley cap)
  missing_labels = 6,  // true labels required but absent
  invalid_argument = 7,
  solver = 8,          // optimizer failed to certify its result
  internal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace creduq
