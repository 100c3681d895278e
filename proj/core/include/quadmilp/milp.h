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

#ifndef QUADMILP_MILP_H_
#define QUADMILP_MILP_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "quadmilp/bounds.h"
#include "quadmilp/lp.h"
#include "quadmilp/model.h"

namespace quadmilp {

struct MilpColumn {
  std::string name;
  double lo = 0.0;
  double hi = kInf;
  double cost = 0.0;
  bool binary = false;
};

enum class RowSense { kEqual, kLessEqual };

struct MilpRow {
  std::string name;
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
};

// Complementarity MILP for a standard-form QP:
//
//   min  ½(fᵀx − bᵀμ) + obj_const
//   s.t. Hx + Aᵀμ − λ = −f,   Ax = b,
//        x_j − U_j z_j ≤ 0,   λ_j + V_j z_j ≤ V_j,
//        0 ≤ x ≤ U,  μ free,  0 ≤ λ ≤ V,  z ∈ {0,1}ⁿ.
//
// Column order is x, μ, λ, z; row order is stationarity (S), feasibility (E),
// then the two big-M families (UX, UL).
struct MilpModel {
  int n = 0;
  int m = 0;
  std::string name;
  std::vector<MilpColumn> columns;
  std::vector<MilpRow> rows;
  double obj_const = 0.0;

  std::shared_ptr<const QpInstance> source;
  StandardizeMap map;
  Bounds bounds;

  int x_offset() const { return 0; }
  int mu_offset() const { return n; }
  int lambda_offset() const { return n + m; }
  int z_offset() const { return 2 * n + m; }

  int num_continuous() const { return 2 * n + m; }
  int num_binary() const { return n; }
  int num_equalities() const { return n + m; }
  int num_inequalities() const { return 2 * n; }

  // Linear objective including obj_const.
  double Objective(const Eigen::VectorXd& columns_value) const;
};

absl::StatusOr<MilpModel> BuildIqp(const QpInstance& inst,
                                   const Bounds& bounds);
absl::StatusOr<MilpModel> BuildIqp(const QpInstance& inst,
                                   const Bounds& bounds, StandardizeMap map);

// Equality-form relaxation: one nonnegative slack per ≤ row is appended after
// the model columns and binaries are relaxed to [0, 1]. obj_const is not
// included in the LP cost.
LpProblem ToLpRelaxation(const MilpModel& model);

// Fixed-format MPS. Numbers use 12 significant digits.
std::string ExportMps(const MilpModel& model);

}  // namespace quadmilp

#endif  // QUADMILP_MILP_H_
