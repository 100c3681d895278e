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

#include "quadmilp/bnb.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "quadmilp/errors.h"

namespace quadmilp {
namespace {

constexpr double kExactIntegral = 1e-9;
// Distances to {0, 1} closer than this count as ties.
constexpr double kTieTolerance = 1e-12;

struct Node {
  std::vector<std::int8_t> fixed;  // −1 free, 0 or 1 fixed
  double bound = -kInf;
  std::int64_t id = 0;
  std::shared_ptr<const LpBasis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Applies the z fixings and their implied bounds x_j ≤ 0 or λ_j ≤ 0.
void ApplyFixings(const MilpModel& model,
                  const std::vector<std::int8_t>& fixed, Eigen::VectorXd* lo,
                  Eigen::VectorXd* hi) {
  for (int j = 0; j < model.n; ++j) {
    if (fixed[j] < 0) continue;
    const int z = model.z_offset() + j;
    (*lo)(z) = (*hi)(z) = fixed[j];
    if (fixed[j] == 0) {
      (*hi)(model.x_offset() + j) = 0.0;
    } else {
      (*hi)(model.lambda_offset() + j) = 0.0;
    }
  }
}

bool ExactlyIntegral(const MilpModel& model, const Eigen::VectorXd& v) {
  for (int j = 0; j < model.n; ++j) {
    const double z = v(model.z_offset() + j);
    if (std::abs(z - std::round(z)) > kExactIntegral) return false;
  }
  return true;
}

std::optional<Eigen::VectorXd> Heuristic(const MilpModel& model,
                                         LpEngine& engine,
                                         const Eigen::VectorXd& relaxation,
                                         std::int64_t* pivots) {
  const int num_model_cols = static_cast<int>(model.columns.size());
  if (ExactlyIntegral(model, relaxation)) {
    Eigen::VectorXd out = relaxation.head(num_model_cols);
    for (int j = 0; j < model.n; ++j) {
      const int z = model.z_offset() + j;
      out(z) = std::round(out(z));
    }
    return out;
  }
  // First round on x_j ≥ λ_j; if that completion is infeasible, retry with
  // both sides measured against their big-M boxes.
  for (const bool relative : {false, true}) {
    std::vector<std::int8_t> fixed(model.n);
    for (int j = 0; j < model.n; ++j) {
      double x = relaxation(model.x_offset() + j);
      double lambda = relaxation(model.lambda_offset() + j);
      if (relative) {
        const double u = model.columns[model.x_offset() + j].hi;
        const double v = model.columns[model.lambda_offset() + j].hi;
        x = u > 0.0 ? x / u : 0.0;
        lambda = v > 0.0 ? lambda / v : 0.0;
      }
      fixed[j] = x >= lambda ? 1 : 0;
    }
    Eigen::VectorXd lo = engine.problem().lo;
    Eigen::VectorXd hi = engine.problem().hi;
    ApplyFixings(model, fixed, &lo, &hi);
    LpSolution sol = engine.Solve(lo, hi);
    if (pivots != nullptr) *pivots += sol.pivots;
    if (sol.status == LpStatus::kOptimal) {
      return Eigen::VectorXd(sol.x.head(num_model_cols));
    }
  }
  return std::nullopt;
}

}  // namespace

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kTimeLimit:
      return "TimeLimit";
    case SolveStatus::kNodeLimit:
      return "NodeLimit";
    case SolveStatus::kInfeasible:
      return "Infeasible";
  }
  return "Unknown";
}

double RelativeGap(double best_node, double best_integer) {
  if (!std::isfinite(best_integer)) return kInf;
  if (!std::isfinite(best_node)) return kInf;
  return std::abs(best_node - best_integer) / (1e-10 + std::abs(best_integer));
}

int SelectBranchingVariable(const Eigen::VectorXd& z, double tol) {
  int best = -1;
  double best_dist = tol;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double dist = std::min(z(j), 1.0 - z(j));
    if (dist > tol && (best < 0 || dist > best_dist + kTieTolerance)) {
      best = static_cast<int>(j);
      best_dist = dist;
    }
  }
  return best;
}

std::optional<Eigen::VectorXd> HeuristicIncumbent(
    const MilpModel& model, const Eigen::VectorXd& relaxation) {
  LpEngine engine(ToLpRelaxation(model));
  return Heuristic(model, engine, relaxation, nullptr);
}

absl::StatusOr<SolveReport> SolveMilp(const MilpModel& model,
                                      const SolveParams& params,
                                      const ProgressCallback& progress) {
  if (!(params.time_limit_s > 0.0) || !(params.gap_tol >= 0.0) ||
      (params.node_limit && *params.node_limit <= 0)) {
    return MakeError(ErrorKind::kInvalidInstance,
                     "solve limits must be positive");
  }
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  const LpProblem relaxation = ToLpRelaxation(model);
  if (absl::Status s = ValidateLp(relaxation); !s.ok()) return s;
  LpEngine engine(relaxation);

  SolveReport report;
  std::optional<Eigen::VectorXd> incumbent;
  double incumbent_obj = kInf;
  double best_bound = -kInf;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
  std::int64_t next_id = 0;
  queue.push(Node{std::vector<std::int8_t>(model.n, -1), -kInf, next_id++,
                  nullptr});

  auto record = [&] {
    const double frontier = queue.empty() ? incumbent_obj : queue.top().bound;
    const double bound = std::min(frontier, incumbent_obj);
    best_bound = std::max(best_bound, bound);
    TracePoint point{report.nodes_explored, best_bound, incumbent_obj};
    report.trace.push_back(point);
    if (progress) progress(point);
  };

  std::optional<SolveStatus> status;
  while (!queue.empty()) {
    if (incumbent &&
        RelativeGap(queue.top().bound, incumbent_obj) <= params.gap_tol) {
      status = SolveStatus::kOptimal;
      break;
    }
    if (params.node_limit && report.nodes_explored >= *params.node_limit) {
      status = SolveStatus::kNodeLimit;
      break;
    }
    if (elapsed() >= params.time_limit_s) {
      status = SolveStatus::kTimeLimit;
      break;
    }

    Node node = queue.top();
    queue.pop();
    if (node.bound >= incumbent_obj - params.prune_eps) continue;

    Eigen::VectorXd lo = relaxation.lo;
    Eigen::VectorXd hi = relaxation.hi;
    ApplyFixings(model, node.fixed, &lo, &hi);
    LpSolution sol = engine.Solve(lo, hi, node.basis.get());
    report.lp_pivots += sol.pivots;
    ++report.nodes_explored;

    if (sol.status == LpStatus::kInfeasible) {
      record();
      continue;
    }
    if (sol.status != LpStatus::kOptimal) {
      return MakeError(
          ErrorKind::kNumerical,
          absl::StrCat("node relaxation ended with status ",
                       LpStatusName(sol.status), " after ", sol.pivots,
                       " pivots"));
    }
    const double bound = std::max(sol.obj + model.obj_const, node.bound);
    if (bound >= incumbent_obj - params.prune_eps) {
      record();
      continue;
    }

    std::optional<Eigen::VectorXd> candidate =
        Heuristic(model, engine, sol.x, &report.lp_pivots);
    if (candidate) {
      const double obj = model.Objective(*candidate);
      if (obj < incumbent_obj) {
        incumbent_obj = obj;
        incumbent = std::move(candidate);
      }
    }
    if (bound >= incumbent_obj - params.prune_eps) {
      record();
      continue;
    }

    const Eigen::VectorXd z = sol.x.segment(model.z_offset(), model.n);
    int j = SelectBranchingVariable(z, params.integrality_tol);
    if (j < 0) {
      // Integral within tolerance, yet the rounded completion did not close
      // the node: keep splitting on the remaining nonzero distances.
      j = SelectBranchingVariable(z, 0.0);
    }
    if (j >= 0) {
      auto basis = std::make_shared<const LpBasis>(std::move(sol.basis));
      for (std::int8_t value : {0, 1}) {
        Node child{node.fixed, bound, next_id++, basis};
        child.fixed[j] = value;
        queue.push(std::move(child));
      }
    }
    record();
  }

  if (!status) {
    status = incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    if (incumbent) best_bound = std::max(best_bound, incumbent_obj);
  } else if (*status == SolveStatus::kOptimal) {
    best_bound = std::max(best_bound, queue.top().bound);
    best_bound = std::min(best_bound, incumbent_obj);
  }

  report.status = *status;
  report.best_bound = best_bound;
  report.elapsed_s = elapsed();
  if (incumbent) {
    const Eigen::VectorXd& v = *incumbent;
    report.has_incumbent = true;
    report.x_std = v.segment(model.x_offset(), model.n);
    report.mu = v.segment(model.mu_offset(), model.m);
    report.lambda = v.segment(model.lambda_offset(), model.n);
    report.z = v.segment(model.z_offset(), model.n);
    report.x = model.map.Recover(report.x_std);
    report.obj_linearized = model.Objective(v);
    if (model.source) {
      absl::StatusOr<double> q = EvalObjective(*model.source, report.x_std);
      if (!q.ok()) return q.status();
      report.obj_quadratic = *q;
      absl::StatusOr<KktReport> kkt = KktResidual(
          *model.source, KktPoint{report.x_std, report.mu, report.lambda});
      if (!kkt.ok()) return kkt.status();
      report.kkt = *kkt;
    } else {
      report.obj_quadratic = report.obj_linearized;
    }
    report.gap = RelativeGap(best_bound, incumbent_obj);
  }
  return report;
}

}  // namespace quadmilp
