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

#include "quadmilp/pipeline.h"

#include <string>
#include <utility>

namespace quadmilp {

absl::StatusOr<Problem> ToProblem(const InstanceFile& file) {
  switch (file.kind) {
    case InstanceKind::kSqp:
      return ToProblem(SqpSpec{file.H, file.f}, file.name);
    case InstanceKind::kBoxQp:
      return ToProblem(BoxQpSpec{file.H, file.f, file.l, file.u}, file.name);
    case InstanceKind::kStandard: {
      absl::StatusOr<QpInstance> inst = MakeQpInstance(
          file.H, file.f, file.A, file.b, file.obj_const, file.name);
      if (!inst.ok()) return inst.status();
      Problem problem;
      problem.name = file.name;
      problem.kind = file.kind;
      problem.form.map = StandardizeMap::Identity(inst->n);
      problem.form.instance = *std::move(inst);
      problem.structure = StructureKind::kGeneral;
      return problem;
    }
  }
  return absl::InternalError("unknown instance kind");
}

absl::StatusOr<Problem> ToProblem(const SqpSpec& spec, std::string name) {
  absl::StatusOr<StandardForm> form = FromSqp(spec);
  if (!form.ok()) return form.status();
  Problem problem;
  problem.name = std::move(name);
  problem.kind = InstanceKind::kSqp;
  problem.form = *std::move(form);
  if (!problem.name.empty()) problem.form.instance.label = problem.name;
  problem.structure = StructureKind::kSimplex;
  return problem;
}

absl::StatusOr<Problem> ToProblem(const BoxQpSpec& spec, std::string name) {
  absl::StatusOr<StandardForm> form = FromBox(spec);
  if (!form.ok()) return form.status();
  Problem problem;
  problem.name = std::move(name);
  problem.kind = InstanceKind::kBoxQp;
  problem.form = *std::move(form);
  if (!problem.name.empty()) problem.form.instance.label = problem.name;
  problem.structure = StructureKind::kBox;
  return problem;
}

absl::StatusOr<BuiltModel> BuildModel(const Problem& problem) {
  absl::StatusOr<Bounds> bounds =
      ComputeBounds(problem.form.instance, problem.structure);
  if (!bounds.ok()) return bounds.status();
  absl::StatusOr<MilpModel> model =
      BuildIqp(problem.form.instance, *bounds, problem.form.map);
  if (!model.ok()) return model.status();
  return BuiltModel{*std::move(bounds), *std::move(model)};
}

absl::StatusOr<PipelineResult> SolveProblem(const Problem& problem,
                                            const SolveParams& params,
                                            const ProgressCallback& progress) {
  absl::StatusOr<BuiltModel> built = BuildModel(problem);
  if (!built.ok()) return built.status();
  absl::StatusOr<SolveReport> report =
      SolveMilp(built->model, params, progress);
  if (!report.ok()) return report.status();
  return PipelineResult{std::move(built->bounds), std::move(built->model),
                        *std::move(report)};
}

}  // namespace quadmilp
