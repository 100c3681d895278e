// Copyright 2026 The quadmilp Authors
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

#ifndef QUADMILP_ERRORS_H_
#define QUADMILP_ERRORS_H_

#include <optional>
#include <string>

#include "absl/status/status.h"

namespace quadmilp {

// Failure categories that callers (notably the CLI) need to tell apart. The
// kind travels as a payload on an ordinary absl::Status so that code which only
// cares about ok()/not-ok() keeps working.
enum class ErrorKind {
  kDimensionMismatch,
  kInvalidInstance,
  kInfeasibleInstance,
  kUnboundedFeasibleSet,
  kNoInteriorPoint,
  kNoDualBoundAvailable,
  kOracleLimit,
  kNumerical,
  kParse,
};

std::string ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, const std::string& message);

// Returns the kind attached by MakeError, if any.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

}  // namespace quadmilp

#endif  // QUADMILP_ERRORS_H_
