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

#ifndef QUADMILP_BNB_H_
#define QUADMILP_BNB_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "quadmilp/lp.h"
#include "quadmilp/milp.h"
#include "quadmilp/verify.h"

namespace quadmilp {

struct SolveParams {
  double time_limit_s = 1e4;
  double gap_tol = 1e-6;
  std::optional<std::int64_t> node_limit;
  double integrality_tol = 1e-6;
  double prune_eps = 1e-9;
};

enum class SolveStatus { kOptimal, kTimeLimit, kNodeLimit, kInfeasible };

const char* SolveStatusName(SolveStatus status);

// One entry per processed node. Infinite incumbent means none found yet.
struct TracePoint {
  std::int64_t nodes = 0;
  double best_bound = -kInf;
  double incumbent = kInf;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_incumbent = false;
  Eigen::VectorXd x;      // original coordinates
  Eigen::VectorXd x_std;  // standard-form coordinates
  Eigen::VectorXd mu;
  Eigen::VectorXd lambda;
  Eigen::VectorXd z;
  double obj_quadratic = kInf;
  double obj_linearized = kInf;
  double best_bound = -kInf;
  double gap = kInf;
  std::int64_t nodes_explored = 0;
  std::int64_t lp_pivots = 0;
  double elapsed_s = 0.0;
  std::optional<KktReport> kkt;
  std::vector<TracePoint> trace;
};

// |bestnode − bestinteger| / (1e−10 + |bestinteger|).
double RelativeGap(double best_node, double best_integer);

// Index maximizing min(z_j, 1 − z_j) among entries farther than `tol` from
// {0, 1}; ties go to the lowest index. Returns −1 when z is integral.
int SelectBranchingVariable(const Eigen::VectorXd& z, double tol);

// Rounds z_j = 1 if x_j ≥ λ_j else 0 and solves the LP with z fixed. If
// that LP is infeasible, rounds again on x_j/U_j ≥ λ_j/V_j. An exactly
// integral relaxation is returned as is. `relaxation` holds at least
// the model columns; the result holds exactly the model columns.
std::optional<Eigen::VectorXd> HeuristicIncumbent(
    const MilpModel& model, const Eigen::VectorXd& relaxation);

using ProgressCallback = std::function<void(const TracePoint&)>;

// Best-bound branch-and-bound on z. Single worker; deterministic.
absl::StatusOr<SolveReport> SolveMilp(const MilpModel& model,
                                      const SolveParams& params = {},
                                      const ProgressCallback& progress = {});

}  // namespace quadmilp

#endif  // QUADMILP_BNB_H_
