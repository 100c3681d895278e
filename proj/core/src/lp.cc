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

#include "quadmilp/lp.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"
#include "quadmilp/errors.h"

namespace quadmilp {
namespace {

constexpr double kDegenerateStep = 1e-12;
constexpr double kRatioTieTol = 1e-12;
constexpr double kSingularPivot = 1e-11;
// Fresh refactorizations allowed when the final check finds drift.
constexpr int kMaxCleanups = 5;

double Clean(double bound, bool lower) {
  if (lower && bound <= -kInfinityThreshold) return -kInf;
  if (!lower && bound >= kInfinityThreshold) return kInf;
  return bound;
}

}  // namespace

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
    case LpStatus::kIterationLimit:
      return "IterationLimit";
  }
  return "Unknown";
}

Eigen::SparseMatrix<double> ToSparse(const Eigen::MatrixXd& dense) {
  return dense.sparseView(0.0, 0.0);
}

LpEngine::LpEngine(const LpProblem& problem, LpOptions options)
    : problem_(problem), options_(options) {
  rows_ = problem_.num_rows();
  cols_ = problem_.num_cols();
  problem_.Aeq.makeCompressed();
  Eigen::VectorXd row_max = Eigen::VectorXd::Zero(rows_);
  for (int j = 0; j < cols_; ++j) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(problem_.Aeq, j); it;
         ++it) {
      row_max[it.row()] = std::max(row_max[it.row()], std::abs(it.value()));
    }
  }
  row_scale_.resize(rows_);
  for (int i = 0; i < rows_; ++i) {
    row_scale_[i] = row_max[i] > 0.0 ? 1.0 / row_max[i] : 1.0;
  }
  scaled_ = row_scale_.asDiagonal() * problem_.Aeq;
  scaled_.makeCompressed();
  scaled_rhs_ = row_scale_.cwiseProduct(problem_.beq);
}

double LpEngine::ColumnDot(int j, const Eigen::VectorXd& y) const {
  if (j >= cols_) return y[j - cols_];
  double s = 0.0;
  for (Eigen::SparseMatrix<double>::InnerIterator it(scaled_, j); it; ++it) {
    s += it.value() * y[it.row()];
  }
  return s;
}

Eigen::VectorXd LpEngine::DenseColumn(int j) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(rows_);
  if (j >= cols_) {
    v[j - cols_] = 1.0;
    return v;
  }
  for (Eigen::SparseMatrix<double>::InnerIterator it(scaled_, j); it; ++it) {
    v[it.row()] = it.value();
  }
  return v;
}

bool LpEngine::Factor() {
  etas_.clear();
  if (rows_ == 0) return true;
  Eigen::MatrixXd B(rows_, rows_);
  for (int i = 0; i < rows_; ++i) B.col(i) = DenseColumn(basic_[i]);
  lu_.compute(B);
  const Eigen::VectorXd diag = lu_.matrixLU().diagonal().cwiseAbs();
  return diag.minCoeff() > kSingularPivot * std::max(1.0, diag.maxCoeff());
}

void LpEngine::Ftran(Eigen::VectorXd& v) const {
  if (rows_ == 0) return;
  v = lu_.solve(v);
  for (const Eta& eta : etas_) {
    const double pivot = v[eta.row] / eta.column[eta.row];
    if (pivot != 0.0) v -= pivot * eta.column;
    v[eta.row] = pivot;
  }
}

void LpEngine::Btran(Eigen::VectorXd& v) const {
  if (rows_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    const int r = it->row;
    const double alpha_r = it->column[r];
    double s = v[r];
    for (int i = 0; i < rows_; ++i) {
      if (i != r) s -= it->column[i] * v[i];
    }
    v[r] = s / alpha_r;
  }
  v = lu_.transpose().solve(v);
}

void LpEngine::ComputeBasicValues() {
  Eigen::VectorXd rhs = scaled_rhs_;
  for (int j = 0; j < cols_ + rows_; ++j) {
    if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
    if (j >= cols_) {
      rhs[j - cols_] -= x_[j];
    } else {
      for (Eigen::SparseMatrix<double>::InnerIterator it(scaled_, j); it; ++it) {
        rhs[it.row()] -= it.value() * x_[j];
      }
    }
  }
  Ftran(rhs);
  basic_values_ = std::move(rhs);
  for (int i = 0; i < rows_; ++i) x_[basic_[i]] = basic_values_[i];
}

void LpEngine::NormalizeNonbasic(int j) {
  const bool lo_finite = std::isfinite(lo_[j]);
  const bool hi_finite = std::isfinite(hi_[j]);
  VarStatus& s = status_[j];
  if (lo_finite && hi_finite && lo_[j] == hi_[j]) {
    s = VarStatus::kFixed;
  } else if (s == VarStatus::kAtUpper && hi_finite) {
    // keep
  } else if (s == VarStatus::kAtLower && lo_finite) {
    // keep
  } else if (lo_finite) {
    s = VarStatus::kAtLower;
  } else if (hi_finite) {
    s = VarStatus::kAtUpper;
  } else {
    s = VarStatus::kFree;
  }
  switch (s) {
    case VarStatus::kAtLower:
    case VarStatus::kFixed:
      x_[j] = lo_[j];
      break;
    case VarStatus::kAtUpper:
      x_[j] = hi_[j];
      break;
    case VarStatus::kFree:
      x_[j] = 0.0;
      break;
    case VarStatus::kBasic:
      break;
  }
}

void LpEngine::ColdStart() {
  const int total = cols_ + rows_;
  status_.assign(total, VarStatus::kAtLower);
  basic_.resize(rows_);
  for (int j = 0; j < cols_; ++j) NormalizeNonbasic(j);
  for (int i = 0; i < rows_; ++i) {
    basic_[i] = cols_ + i;
    status_[cols_ + i] = VarStatus::kBasic;
  }
  Factor();
  ComputeBasicValues();
}

bool LpEngine::WarmStart(const LpBasis& basis) {
  const int total = cols_ + rows_;
  if (static_cast<int>(basis.basic.size()) != rows_ ||
      static_cast<int>(basis.status.size()) != total) {
    return false;
  }
  status_ = basis.status;
  basic_ = basis.basic;
  int basic_count = 0;
  for (int j = 0; j < total; ++j) {
    if (status_[j] == VarStatus::kBasic) ++basic_count;
  }
  if (basic_count != rows_) return false;
  for (int i = 0; i < rows_; ++i) {
    if (basic_[i] < 0 || basic_[i] >= total ||
        status_[basic_[i]] != VarStatus::kBasic) {
      return false;
    }
  }
  for (int j = 0; j < total; ++j) {
    if (status_[j] != VarStatus::kBasic) NormalizeNonbasic(j);
  }
  if (!Factor()) return false;
  ComputeBasicValues();
  return true;
}

bool LpEngine::BasicInfeasible(int i) const {
  const int j = basic_[i];
  const double v = basic_values_[i];
  return v < lo_[j] - options_.feasibility_tol ||
         v > hi_[j] + options_.feasibility_tol;
}

LpSolution LpEngine::Solve(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                           const LpBasis* warm_start) {
  const int total = cols_ + rows_;
  lo_.resize(total);
  hi_.resize(total);
  for (int j = 0; j < cols_; ++j) {
    lo_[j] = Clean(lo[j], true);
    hi_[j] = Clean(hi[j], false);
  }
  lo_.tail(rows_).setZero();
  hi_.tail(rows_).setZero();
  x_ = Eigen::VectorXd::Zero(total);
  pivots_ = 0;
  ray_.resize(0);

  if (warm_start == nullptr || warm_start->empty() || !WarmStart(*warm_start)) {
    ColdStart();
  }

  const std::int64_t bland_trigger = 5 * static_cast<std::int64_t>(cols_);
  std::int64_t degenerate_run = 0;
  int cleanups = 0;
  Eigen::VectorXd cost_b(rows_);

  while (true) {
    if (pivots_ >= options_.pivot_limit) {
      return Finish(LpStatus::kIterationLimit);
    }
    if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
      if (!Factor()) return Finish(LpStatus::kIterationLimit);
      ComputeBasicValues();
    }

    bool phase1 = false;
    for (int i = 0; i < rows_; ++i) {
      const int j = basic_[i];
      if (basic_values_[i] < lo_[j] - options_.feasibility_tol) {
        cost_b[i] = -1.0;
        phase1 = true;
      } else if (basic_values_[i] > hi_[j] + options_.feasibility_tol) {
        cost_b[i] = 1.0;
        phase1 = true;
      } else {
        cost_b[i] = 0.0;
      }
    }
    if (!phase1) {
      for (int i = 0; i < rows_; ++i) {
        cost_b[i] = basic_[i] < cols_ ? problem_.c[basic_[i]] : 0.0;
      }
    }
    y_ = cost_b;
    Btran(y_);

    // Pricing: Dantzig (largest violation, lowest index on ties) or Bland
    // (lowest eligible index) after a long degenerate run.
    const bool bland = degenerate_run > bland_trigger;
    int entering = -1;
    double best = 0.0;
    double entering_d = 0.0;
    for (int j = 0; j < total; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || s == VarStatus::kFixed) continue;
      const double cj = (!phase1 && j < cols_) ? problem_.c[j] : 0.0;
      const double d = cj - ColumnDot(j, y_);
      double violation = 0.0;
      if (s == VarStatus::kAtLower && d < -options_.optimality_tol) {
        violation = -d;
      } else if (s == VarStatus::kAtUpper && d > options_.optimality_tol) {
        violation = d;
      } else if (s == VarStatus::kFree &&
                 std::abs(d) > options_.optimality_tol) {
        violation = std::abs(d);
      }
      if (violation > best) {
        best = violation;
        entering = j;
        entering_d = d;
        if (bland) break;
      }
    }

    if (entering < 0) {
      // Confirm on a fresh factorization before declaring a result.
      if (!etas_.empty() && cleanups < kMaxCleanups) {
        ++cleanups;
        if (!Factor()) return Finish(LpStatus::kIterationLimit);
        ComputeBasicValues();
        continue;
      }
      return Finish(phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal);
    }

    Eigen::VectorXd alpha = DenseColumn(entering);
    Ftran(alpha);
    const double dir = entering_d < 0.0 ? 1.0 : -1.0;

    // Ratio test. Basic variable i moves at rate delta_i = −dir·alpha_i.
    double theta = kInf;
    int leave_pos = -1;
    bool leave_to_upper = false;
    const double range = hi_[entering] - lo_[entering];
    for (int i = 0; i < rows_; ++i) {
      if (std::abs(alpha[i]) <= options_.pivot_tol) continue;
      const int j = basic_[i];
      const double v = basic_values_[i];
      const double delta = -dir * alpha[i];
      double limit = kInf;
      bool to_upper = false;
      if (delta < 0.0) {
        if (phase1 && v > hi_[j] + options_.feasibility_tol) {
          limit = (v - hi_[j]) / -delta;
          to_upper = true;
        } else if (v < lo_[j] - options_.feasibility_tol) {
          continue;
        } else if (std::isfinite(lo_[j])) {
          limit = std::max(0.0, v - lo_[j]) / -delta;
        }
      } else {
        if (phase1 && v < lo_[j] - options_.feasibility_tol) {
          limit = (lo_[j] - v) / delta;
        } else if (v > hi_[j] + options_.feasibility_tol) {
          continue;
        } else if (std::isfinite(hi_[j])) {
          limit = std::max(0.0, hi_[j] - v) / delta;
          to_upper = true;
        }
      }
      if (!std::isfinite(limit)) continue;
      const bool tie =
          leave_pos >= 0 &&
          std::abs(limit - theta) <= kRatioTieTol * std::max(1.0, theta);
      if ((leave_pos < 0 || limit < theta) && !tie) {
        theta = limit;
        leave_pos = i;
        leave_to_upper = to_upper;
      } else if (tie && j < basic_[leave_pos]) {
        theta = std::min(theta, limit);
        leave_pos = i;
        leave_to_upper = to_upper;
      }
    }

    const bool bound_flip = std::isfinite(range) && range <= theta;
    if (bound_flip) {
      theta = range;
      leave_pos = -1;
    }

    if (!std::isfinite(theta)) {
      if (phase1) return Finish(LpStatus::kIterationLimit);
      ray_ = Eigen::VectorXd::Zero(total);
      ray_[entering] = dir;
      for (int i = 0; i < rows_; ++i) ray_[basic_[i]] = -dir * alpha[i];
      return Finish(LpStatus::kUnbounded);
    }

    ++pivots_;
    degenerate_run = theta <= kDegenerateStep ? degenerate_run + 1 : 0;

    const double step = dir * theta;
    basic_values_ -= step * alpha;
    x_[entering] += step;

    if (bound_flip) {
      status_[entering] =
          dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[entering] = dir > 0 ? hi_[entering] : lo_[entering];
      for (int i = 0; i < rows_; ++i) x_[basic_[i]] = basic_values_[i];
      continue;
    }

    const int leaving = basic_[leave_pos];
    if (lo_[leaving] == hi_[leaving]) {
      status_[leaving] = VarStatus::kFixed;
      x_[leaving] = lo_[leaving];
    } else if (leave_to_upper) {
      status_[leaving] = VarStatus::kAtUpper;
      x_[leaving] = hi_[leaving];
    } else {
      status_[leaving] = VarStatus::kAtLower;
      x_[leaving] = lo_[leaving];
    }
    status_[entering] = VarStatus::kBasic;
    basic_[leave_pos] = entering;
    basic_values_[leave_pos] = x_[entering];
    etas_.push_back({leave_pos, std::move(alpha)});
    for (int i = 0; i < rows_; ++i) x_[basic_[i]] = basic_values_[i];
  }
}

LpSolution LpEngine::Finish(LpStatus status) {
  LpSolution sol;
  sol.status = status;
  sol.pivots = pivots_;
  sol.x = x_.head(cols_);
  for (int j = 0; j < cols_; ++j) {
    // Snap values that sit within tolerance of a bound.
    if (std::isfinite(lo_[j]) && sol.x[j] < lo_[j] &&
        sol.x[j] >= lo_[j] - options_.feasibility_tol) {
      sol.x[j] = lo_[j];
    }
    if (std::isfinite(hi_[j]) && sol.x[j] > hi_[j] &&
        sol.x[j] <= hi_[j] + options_.feasibility_tol) {
      sol.x[j] = hi_[j];
    }
  }
  sol.basis.basic = basic_;
  sol.basis.status = status_;
  sol.obj = problem_.c.dot(sol.x);
  if (status == LpStatus::kOptimal || status == LpStatus::kInfeasible ||
      status == LpStatus::kUnbounded) {
    // y_ is in scaled row space: y = R·y'.
    const Eigen::VectorXd y = row_scale_.cwiseProduct(y_);
    if (status == LpStatus::kInfeasible) {
      sol.farkas = y;
    } else {
      sol.duals = y;
      sol.reduced_costs = problem_.c - problem_.Aeq.transpose() * y;
    }
  }
  if (status == LpStatus::kUnbounded) sol.ray = ray_.head(cols_);
  return sol;
}

absl::Status ValidateLp(const LpProblem& p) {
  const int n = p.num_cols();
  const int m = p.num_rows();
  if (p.c.size() != n || p.lo.size() != n || p.hi.size() != n ||
      p.beq.size() != m) {
    return MakeError(
        ErrorKind::kDimensionMismatch,
        absl::StrFormat("LP dimensions inconsistent: Aeq %dx%d, c %d, lo %d, "
                        "hi %d, beq %d",
                        m, n, p.c.size(), p.lo.size(), p.hi.size(),
                        p.beq.size()));
  }
  for (int j = 0; j < n; ++j) {
    if (std::isnan(p.lo[j]) || std::isnan(p.hi[j]) || p.lo[j] > p.hi[j]) {
      return MakeError(ErrorKind::kInvalidInstance,
                       absl::StrFormat("bad bounds on column %d: [%g, %g]", j,
                                       p.lo[j], p.hi[j]));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<LpSolution> SolveLp(const LpProblem& problem,
                                   const LpOptions& options) {
  if (absl::Status s = ValidateLp(problem); !s.ok()) return s;
  LpEngine engine(problem, options);
  return engine.Solve();
}

absl::StatusOr<LpSolution> SolveLpFixed(const LpProblem& problem,
                                        std::span<const Fixing> fixings,
                                        const LpOptions& options) {
  if (absl::Status s = ValidateLp(problem); !s.ok()) return s;
  Eigen::VectorXd lo = problem.lo;
  Eigen::VectorXd hi = problem.hi;
  for (const Fixing& fix : fixings) {
    if (fix.var < 0 || fix.var >= problem.num_cols()) {
      return MakeError(ErrorKind::kDimensionMismatch,
                       absl::StrFormat("fixing refers to column %d of %d",
                                       fix.var, problem.num_cols()));
    }
    lo[fix.var] = fix.value;
    hi[fix.var] = fix.value;
  }
  LpEngine engine(problem, options);
  return engine.Solve(lo, hi);
}

}  // namespace quadmilp
