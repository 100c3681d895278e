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

#include "quadmilp/verify.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "Eigen/LU"
#include "Eigen/QR"
#include "absl/strings/str_format.h"
#include "quadmilp/errors.h"

namespace quadmilp {
namespace {

constexpr double kOracleSignTol = 1e-9;
constexpr double kOracleResidualTol = 1e-8;
constexpr double kOracleTieTol = 1e-7;

double MaxAbs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double DataScale(const QpInstance& inst) {
  return 1.0 + std::max({MaxAbs(inst.H), MaxAbs(inst.f), MaxAbs(inst.A),
                         MaxAbs(inst.b)});
}

void Search(const std::vector<std::uint32_t>& neighbors, std::uint32_t cand,
            int size, int& best) {
  if (cand == 0) {
    best = std::max(best, size);
    return;
  }
  if (size + std::popcount(cand) <= best) return;
  const int v = std::countr_zero(cand);
  const std::uint32_t bit = 1u << v;
  Search(neighbors, cand & ~bit & ~neighbors[v], size + 1, best);
  Search(neighbors, cand & ~bit, size, best);
}

}  // namespace

bool KktReport::Passes(double tol) const {
  const double limit = tol * scale;
  return stationarity_inf <= limit && complementarity <= limit &&
         feasibility_inf <= limit && -min_x <= limit && -min_lambda <= limit;
}

absl::StatusOr<KktReport> KktResidual(const QpInstance& inst,
                                      const KktPoint& p) {
  if (p.x.size() != inst.n || p.lambda.size() != inst.n ||
      p.mu.size() != inst.m) {
    return MakeError(
        ErrorKind::kDimensionMismatch,
        absl::StrFormat("KKT point has |x|=%d |mu|=%d |lambda|=%d for n=%d m=%d",
                        p.x.size(), p.mu.size(), p.lambda.size(), inst.n,
                        inst.m));
  }
  KktReport r;
  const Eigen::VectorXd stationarity =
      inst.H * p.x + inst.f + inst.A.transpose() * p.mu - p.lambda;
  r.stationarity_inf = stationarity.lpNorm<Eigen::Infinity>();
  r.complementarity = std::abs(p.x.dot(p.lambda));
  r.feasibility_inf =
      inst.m == 0 ? 0.0 : (inst.A * p.x - inst.b).lpNorm<Eigen::Infinity>();
  r.min_x = p.x.minCoeff();
  r.min_lambda = p.lambda.minCoeff();
  r.scale = DataScale(inst);
  r.is_kkt = r.Passes(kKktTolerance);
  return r;
}

double LinearizationGap(const QpInstance& inst, const KktPoint& p) {
  const double quadratic = 0.5 * p.x.dot(inst.H * p.x) + inst.f.dot(p.x);
  const double linear = 0.5 * (inst.f.dot(p.x) - inst.b.dot(p.mu));
  return std::abs(quadratic - linear);
}

absl::StatusOr<OracleResult> OracleQp(const QpInstance& inst) {
  const int n = inst.n;
  const int m = inst.m;
  if (n > kOracleMaxVariables) {
    return MakeError(ErrorKind::kOracleLimit,
                     absl::StrFormat("oracle supports n <= %d, got %d",
                                     kOracleMaxVariables, n));
  }
  const int dim = n + m;
  Eigen::VectorXd rhs(dim);
  rhs.head(n) = -inst.f;
  rhs.tail(m) = inst.b;
  const double rhs_scale = 1.0 + MaxAbs(rhs);

  // Unknown layout per pattern: slot i < n is x_i (i ∉ S) or λ_i (i ∈ S),
  // slots n.. are μ.
  Eigen::MatrixXd K(dim, dim);
  struct Candidate {
    double value;
    KktPoint point;
  };
  std::vector<Candidate> accepted;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    K.setZero();
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        K(i, i) = -1.0;  // −λ_i in stationarity row i
      } else {
        K.block(0, i, n, 1) = inst.H.col(i);
        if (m > 0) K.block(n, i, m, 1) = inst.A.col(i);
      }
    }
    if (m > 0) K.block(0, n, n, m) = inst.A.transpose();

    Eigen::VectorXd sol;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    if (lu.rcond() > 1e-12) {
      sol = lu.solve(rhs);
    } else {
      sol = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(K).solve(
          rhs);
    }
    if ((K * sol - rhs).lpNorm<Eigen::Infinity>() >
        kOracleResidualTol * rhs_scale) {
      continue;
    }
    KktPoint p;
    p.x = Eigen::VectorXd::Zero(n);
    p.lambda = Eigen::VectorXd::Zero(n);
    p.mu = sol.tail(m);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if ((mask >> i) & 1u) {
        p.lambda[i] = sol[i];
      } else {
        p.x[i] = sol[i];
      }
      ok = sol[i] >= -kOracleSignTol;
    }
    if (!ok) continue;
    const double value =
        0.5 * p.x.dot(inst.H * p.x) + inst.f.dot(p.x) + inst.obj_const;
    accepted.push_back({value, std::move(p)});
  }
  if (accepted.empty()) {
    return MakeError(ErrorKind::kNumerical,
                     "no KKT candidate accepted (degenerate instance?)");
  }
  OracleResult out;
  out.accepted = static_cast<std::int64_t>(accepted.size());
  out.value = std::numeric_limits<double>::infinity();
  for (const Candidate& c : accepted) {
    if (c.value < out.value) {
      out.value = c.value;
      out.argmin = c.point.x;
    }
  }
  const double tie = kOracleTieTol * (1.0 + std::abs(out.value));
  for (Candidate& c : accepted) {
    if (c.value <= out.value + tie) out.optimal.push_back(std::move(c.point));
  }
  return out;
}

absl::StatusOr<int> StabilityNumber(const Eigen::MatrixXd& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n) {
    return MakeError(ErrorKind::kDimensionMismatch, "adjacency must be square");
  }
  if (n > kStabilityOracleMaxVertices) {
    return MakeError(ErrorKind::kOracleLimit,
                     absl::StrFormat("stability oracle supports <= %d vertices",
                                     kStabilityOracleMaxVertices));
  }
  std::vector<std::uint32_t> neighbors(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = adjacency(i, j);
      if ((a != 0.0 && a != 1.0) || a != adjacency(j, i) ||
          (i == j && a != 0.0)) {
        return MakeError(ErrorKind::kInvalidInstance,
                         absl::StrFormat("adjacency entry (%d, %d) is not a "
                                         "symmetric 0/1 off-diagonal entry",
                                         i, j));
      }
      if (a != 0.0) neighbors[i] |= 1u << j;
    }
  }
  int best = 0;
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1u;
  Search(neighbors, all, 0, best);
  return best;
}

}  // namespace quadmilp
