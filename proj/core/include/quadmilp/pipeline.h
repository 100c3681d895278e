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

#ifndef QUADMILP_PIPELINE_H_
#define QUADMILP_PIPELINE_H_

#include <string>

#include "absl/status/statusor.h"
#include "quadmilp/bnb.h"
#include "quadmilp/bounds.h"
#include "quadmilp/instances.h"
#include "quadmilp/milp.h"
#include "quadmilp/model.h"

namespace quadmilp {

// A standard-form instance together with the structure its source had.
struct Problem {
  std::string name;
  InstanceKind kind = InstanceKind::kStandard;
  StandardForm form;
  StructureKind structure = StructureKind::kGeneral;
};

absl::StatusOr<Problem> ToProblem(const InstanceFile& file);
absl::StatusOr<Problem> ToProblem(const SqpSpec& spec, std::string name = "");
absl::StatusOr<Problem> ToProblem(const BoxQpSpec& spec,
                                  std::string name = "");

struct BuiltModel {
  Bounds bounds;
  MilpModel model;
};

// Bounds and the complementarity MILP, without solving.
absl::StatusOr<BuiltModel> BuildModel(const Problem& problem);

struct PipelineResult {
  Bounds bounds;
  MilpModel model;
  SolveReport report;
};

absl::StatusOr<PipelineResult> SolveProblem(
    const Problem& problem, const SolveParams& params = {},
    const ProgressCallback& progress = {});

}  // namespace quadmilp

#endif  // QUADMILP_PIPELINE_H_
