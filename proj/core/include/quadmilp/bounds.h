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

#ifndef QUADMILP_BOUNDS_H_
#define QUADMILP_BOUNDS_H_

#include <optional>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "quadmilp/model.h"

namespace quadmilp {

enum class BoundMethod {
  kSimplexClosedForm,
  kBoxClosedForm,
  kGeneralLp,
  kHoffmanOracle,
};

const char* BoundMethodName(BoundMethod method);

// Which closed forms an instance admits. kSimplex expects A = eᵀ, b = 1;
// kBox expects the standardized box layout A = [I I], b = u − l.
enum class StructureKind { kGeneral, kSimplex, kBox };

// Primal box 0 ≤ x ≤ U and dual box 0 ≤ λ ≤ V such that some globally optimal
// KKT point lies inside both.
struct Bounds {
  Eigen::VectorXd U;
  Eigen::VectorXd V;
  std::optional<double> hoffman;
  double u_inf = 0.0;  // max_j U_j, bounds ‖x‖∞ over the feasible set
  std::optional<double> big_m;
  BoundMethod method = BoundMethod::kGeneralLp;
};

// Extreme point of {(μ, λ) : ‖Aᵀμ − λ‖₁ ≤ 1, λ ≥ 0}.
struct SigmaExtremePoint {
  Eigen::VectorXd mu;
  Eigen::VectorXd lambda;
  double l1_norm = 0.0;
};

// Σᵢⱼ |Hᵢⱼ|. Used wherever a bound needs |aᵀHb| ≤ ‖H‖·‖a‖∞·‖b‖∞.
double EntrywiseL1(const Eigen::MatrixXd& H);

// U_j = max{x_j : Ax = b, x ≥ 0}, one LP per coordinate.
absl::StatusOr<Eigen::VectorXd> PrimalBounds(const QpInstance& inst);

// Error-bound constant for {x ≥ 0 : eᵀx = 1}: n − 1.
double HoffmanSimplex(int n);

// Error-bound constant for {(x, s) ≥ 0 : x + s = u}: 1.
double HoffmanBox();

// Largest number of unknowns (m + n) EnumerateSigmaExtremePoints accepts.
inline constexpr int kHoffmanOracleMaxDim = 14;

// Enumerates the extreme points by solving every square system built from
// active constraints: w_j = 0 on a zero set Q, Σ s_j w_j = 1 for a sign
// pattern s off Q, and λ_j = 0 on a set Z, where w = Aᵀμ − λ.
absl::StatusOr<std::vector<SigmaExtremePoint>> EnumerateSigmaExtremePoints(
    const Eigen::MatrixXd& A);

// Maximum ℓ₁ norm over the extreme points above. Only used as an upper bound
// for the error-bound constant; it is not tight in general (A = [1 1] gives 2
// while the simplex constant is 1).
absl::StatusOr<double> HoffmanOracle(const Eigen::MatrixXd& A);

// V = ((n² − 1)/2)·‖H‖₁₁ + (n − 1)·‖f‖₁ for the standard simplex.
double DualBoundSqp(const Eigen::MatrixXd& H, const Eigen::VectorXd& f);

// V = (‖u − l‖∞ + 1)·‖H‖₁₁ + ‖Hl + f‖₁ for the box l ≤ x ≤ u. H and f are the
// original box data; the shift by l is applied here.
double DualBoundBox(const Eigen::MatrixXd& H, const Eigen::VectorXd& f,
                    const Eigen::VectorXd& l, const Eigen::VectorXd& u);

// V_j = max λ_j over the linearized KKT system of the QP with x ≤ U. Requires a
// strictly positive feasible point; fails with kNoInteriorPoint otherwise and
// with kNoDualBoundAvailable if some V_j is unbounded.
absl::StatusOr<Eigen::VectorXd> DualBoundGeneral(const QpInstance& inst,
                                                 const Eigen::VectorXd& U);

// M = B·(1 + 1e−3) + 1e−3 with
// B = (½‖H‖₁₁(2·u_inf + hoffman) + ‖f‖₁)·hoffman. Some optimal KKT point has
// eᵀλ ≤ M.
double PerturbationBigM(const Eigen::MatrixXd& H, const Eigen::VectorXd& f,
                        double hoffman, double u_inf);

// t* = max{t : Ax = b, x ≥ t·e}. t* > 0 certifies a strictly positive point.
absl::StatusOr<double> InteriorMargin(const QpInstance& inst);

absl::StatusOr<Bounds> ComputeBounds(const QpInstance& inst,
                                     StructureKind structure);

}  // namespace quadmilp

#endif  // QUADMILP_BOUNDS_H_
