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

#ifndef QUADMILP_LP_H_
#define QUADMILP_LP_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "Eigen/LU"
#include "Eigen/SparseCore"
#include "absl/status/statusor.h"

namespace quadmilp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Bounds at or beyond this magnitude are treated as infinite.
inline constexpr double kInfinityThreshold = 1e30;

// min cᵀx  s.t.  Aeq·x = beq,  lo ≤ x ≤ hi.
struct LpProblem {
  Eigen::VectorXd c;
  Eigen::SparseMatrix<double> Aeq;  // column major
  Eigen::VectorXd beq;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int num_rows() const { return static_cast<int>(Aeq.rows()); }
  int num_cols() const { return static_cast<int>(Aeq.cols()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* LpStatusName(LpStatus status);

enum class VarStatus : std::uint8_t {
  kBasic,
  kAtLower,
  kAtUpper,
  kFree,   // nonbasic, no finite bound
  kFixed,  // nonbasic, lo == hi
};

// Basis over the N structural columns followed by one artificial column per
// row. Artificial columns are fixed at zero, so a basis that still contains
// them is an ordinary (degenerate) basis of the original problem.
struct LpBasis {
  std::vector<int> basic;  // size M, column indices in [0, N + M)
  std::vector<VarStatus> status;  // size N + M

  bool empty() const { return basic.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::VectorXd x;
  double obj = 0.0;
  // Row duals y and reduced costs d = c − Aᵀy at the final basis.
  Eigen::VectorXd duals;
  Eigen::VectorXd reduced_costs;
  LpBasis basis;
  // kUnbounded: Aeq·ray = 0, cᵀray < 0, and ray points into the bounds.
  Eigen::VectorXd ray;
  // kInfeasible: max over the bound box of (Aeqᵀy)ᵀx is < yᵀbeq.
  Eigen::VectorXd farkas;
  std::int64_t pivots = 0;
};

struct LpOptions {
  std::int64_t pivot_limit = 1'000'000;
  int refactor_interval = 100;
  double feasibility_tol = 1e-9;  // absolute, on bounds
  double row_tol = 1e-8;          // relative, on Aeq·x = beq
  double optimality_tol = 1e-9;   // on reduced costs
  double pivot_tol = 1e-9;
};

// Pins variable `var` to `value` (lo = hi = value).
struct Fixing {
  int var;
  double value;
};

// Bounded-variable primal simplex, revised form. The engine keeps a scaled
// copy of the constraint matrix and can be re-solved with different variable
// bounds and an optional starting basis. One engine is single-owner; separate
// engines may share nothing and run concurrently.
class LpEngine {
 public:
  explicit LpEngine(const LpProblem& problem, LpOptions options = {});

  LpSolution Solve(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                   const LpBasis* warm_start = nullptr);
  LpSolution Solve() { return Solve(problem_.lo, problem_.hi); }

  // Replaces the cost vector; the scaled constraint data is kept.
  void set_objective(const Eigen::VectorXd& c) { problem_.c = c; }

  const LpProblem& problem() const { return problem_; }

 private:
  struct Eta {
    int row;
    Eigen::VectorXd column;
  };

  double ColumnDot(int j, const Eigen::VectorXd& y) const;
  Eigen::VectorXd DenseColumn(int j) const;
  bool Factor();
  void Ftran(Eigen::VectorXd& v) const;
  void Btran(Eigen::VectorXd& v) const;
  void ComputeBasicValues();
  void ColdStart();
  bool WarmStart(const LpBasis& basis);
  void NormalizeNonbasic(int j);
  bool BasicInfeasible(int i) const;
  LpSolution Finish(LpStatus status);

  LpProblem problem_;
  LpOptions options_;
  int rows_ = 0;
  int cols_ = 0;  // structural
  Eigen::SparseMatrix<double> scaled_;
  Eigen::VectorXd row_scale_;
  Eigen::VectorXd scaled_rhs_;

  // Per-solve state.
  Eigen::VectorXd lo_, hi_, x_;
  std::vector<VarStatus> status_;
  std::vector<int> basic_;
  Eigen::VectorXd basic_values_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  std::vector<Eta> etas_;
  Eigen::VectorXd y_;
  Eigen::VectorXd ray_;
  std::int64_t pivots_ = 0;
};

absl::Status ValidateLp(const LpProblem& problem);

absl::StatusOr<LpSolution> SolveLp(const LpProblem& problem,
                                   const LpOptions& options = {});

// Same as SolveLp on the problem with lo = hi = value for every fixing.
absl::StatusOr<LpSolution> SolveLpFixed(const LpProblem& problem,
                                        std::span<const Fixing> fixings,
                                        const LpOptions& options = {});

// Convenience for tests and small callers.
Eigen::SparseMatrix<double> ToSparse(const Eigen::MatrixXd& dense);

}  // namespace quadmilp

#endif  // QUADMILP_LP_H_
