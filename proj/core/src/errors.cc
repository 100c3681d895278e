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

#include "quadmilp/errors.h"

#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"

namespace quadmilp {
namespace {

constexpr char kPayloadUrl[] = "quadmilp/error-kind";

constexpr ErrorKind kAllKinds[] = {
    ErrorKind::kDimensionMismatch,  ErrorKind::kInvalidInstance,
    ErrorKind::kInfeasibleInstance, ErrorKind::kUnboundedFeasibleSet,
    ErrorKind::kNoInteriorPoint,    ErrorKind::kNoDualBoundAvailable,
    ErrorKind::kOracleLimit,        ErrorKind::kNumerical,
    ErrorKind::kParse,
};

absl::StatusCode CodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kInvalidInstance:
    case ErrorKind::kParse:
      return absl::StatusCode::kInvalidArgument;
    case ErrorKind::kOracleLimit:
      return absl::StatusCode::kOutOfRange;
    case ErrorKind::kNumerical:
      return absl::StatusCode::kInternal;
    default:
      return absl::StatusCode::kFailedPrecondition;
  }
}

}  // namespace

std::string ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorKind::kInvalidInstance:
      return "InvalidInstance";
    case ErrorKind::kInfeasibleInstance:
      return "InfeasibleInstance";
    case ErrorKind::kUnboundedFeasibleSet:
      return "UnboundedFeasibleSet";
    case ErrorKind::kNoInteriorPoint:
      return "NoInteriorPoint";
    case ErrorKind::kNoDualBoundAvailable:
      return "NoDualBoundAvailable";
    case ErrorKind::kOracleLimit:
      return "OracleLimit";
    case ErrorKind::kNumerical:
      return "Numerical";
    case ErrorKind::kParse:
      return "Parse";
  }
  return "Unknown";
}

absl::Status MakeError(ErrorKind kind, const std::string& message) {
  absl::Status status(CodeFor(kind),
                      absl::StrCat(ErrorKindName(kind), ": ", message));
  status.SetPayload(kPayloadUrl, absl::Cord(ErrorKindName(kind)));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  const auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (ErrorKind kind : kAllKinds) {
    if (ErrorKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

}  // namespace quadmilp
