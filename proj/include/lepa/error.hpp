//
// Copyright 2026 The LEPA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef LEPA_ERROR_HPP_
#define LEPA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lepa {

enum class ErrorCode {
  kInvalidParameter,
  kInfeasible,
  kEmptyAggregation,
  kPrecondition,
  kSizeLimit,
  kDegenerateRatio,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported as lepa::Error. The C
// API translates the code into a status value at the boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace lepa

#endif  // LEPA_ERROR_HPP_
