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

#ifndef QUADMILP_VERIFY_H_
#define QUADMILP_VERIFY_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "quadmilp/model.h"

namespace quadmilp {

// (x, μ, λ) for Ax = b, x ≥ 0 with multipliers μ (equalities) and λ (x ≥ 0).
struct KktPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd mu;
  Eigen::VectorXd lambda;
};

inline constexpr double kKktTolerance = 1e-8;

struct KktReport {
  double stationarity_inf = 0.0;  // ‖Hx + f + Aᵀμ − λ‖∞
  double complementarity = 0.0;   // |xᵀλ|
  double feasibility_inf = 0.0;   // ‖Ax − b‖∞
  double min_x = 0.0;             // most negative entry (or smallest entry)
  double min_lambda = 0.0;
  double scale = 1.0;             // 1 + largest data magnitude
  bool is_kkt = false;            // Passes(kKktTolerance)

  // Every residual measure is ≤ tol·scale.
  bool Passes(double tol) const;
};

absl::StatusOr<KktReport> KktResidual(const QpInstance& inst,
                                      const KktPoint& p);

// |(½xᵀHx + fᵀx) − ½(fᵀx − bᵀμ)|. Zero at every KKT point.
double LinearizationGap(const QpInstance& inst, const KktPoint& p);

inline constexpr int kOracleMaxVariables = 16;

struct OracleResult {
  double value = 0.0;
  Eigen::VectorXd argmin;
  // KKT points attaining `value` (within 1e−7 relative), in pattern order.
  std::vector<KktPoint> optimal;
  std::int64_t accepted = 0;
};

// Global minimum by enumerating the 2ⁿ complementarity supports. For each
// support S, x_S = 0 and λ outside S is 0, and the square system of
// stationarity plus Ax = b is solved (least squares when singular).
// Candidates with a residual above 1e−8 are dropped, which can miss points
// on degenerate faces.
absl::StatusOr<OracleResult> OracleQp(const QpInstance& inst);

inline constexpr int kStabilityOracleMaxVertices = 24;

// α(G) by exhaustive branching over vertex subsets. `adjacency` is a 0/1
// symmetric matrix with zero diagonal.
absl::StatusOr<int> StabilityNumber(const Eigen::MatrixXd& adjacency);

}  // namespace quadmilp

#endif  // QUADMILP_VERIFY_H_
