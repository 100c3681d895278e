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

#ifndef QUADMILP_MODEL_H_
#define QUADMILP_MODEL_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace quadmilp {

// min ½xᵀHx + fᵀx + obj_const  s.t.  Ax = b, x ≥ 0.
//
// Instances are plain values and are treated as immutable once built; use
// MakeQpInstance() to get a symmetrized, dimension-checked instance. The
// struct stays an aggregate so that Validate() can diagnose raw data.
struct QpInstance {
  int n = 0;
  int m = 0;
  Eigen::MatrixXd H;
  Eigen::VectorXd f;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double obj_const = 0.0;
  std::string label;
};

// min ½xᵀHx + fᵀx  s.t.  l ≤ x ≤ u.
struct BoxQpSpec {
  Eigen::MatrixXd H;
  Eigen::VectorXd f;
  Eigen::VectorXd l;
  Eigen::VectorXd u;
};

// min ½xᵀHx + fᵀx over the standard simplex {x ≥ 0, Σxᵢ = 1}.
struct SqpSpec {
  Eigen::MatrixXd H;
  Eigen::VectorXd f;
};

// Recovers original coordinates from a standard-form point:
//   x_orig[i] = x_std[selector[i]] + shift[i].
struct StandardizeMap {
  std::vector<int> selector;
  Eigen::VectorXd shift;
  int slack_count = 0;

  static StandardizeMap Identity(int n);
  int original_size() const { return static_cast<int>(selector.size()); }
  Eigen::VectorXd Recover(const Eigen::VectorXd& x_std) const;
};

struct StandardForm {
  QpInstance instance;
  StandardizeMap map;
};

enum class DiagnosticKind { kAsymmetry, kNonFinite, kDimension };

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

// Asymmetry above this (max |H - Hᵀ|) is reported when symmetrizing.
inline constexpr double kSymmetryTolerance = 1e-12;

// Builds a standard-form instance. H is replaced by (H + Hᵀ)/2; if the input
// asymmetry exceeded kSymmetryTolerance a diagnostic is appended to `notes`
// (when non-null). Fails with kDimensionMismatch on inconsistent shapes.
absl::StatusOr<QpInstance> MakeQpInstance(
    Eigen::MatrixXd H, Eigen::VectorXd f, Eigen::MatrixXd A, Eigen::VectorXd b,
    double obj_const = 0.0, std::string label = "",
    std::vector<Diagnostic>* notes = nullptr);

absl::StatusOr<StandardForm> FromSqp(const SqpSpec& spec);

// Shifts x ← x − l and appends slacks s with x + s = u − l. The constant
// ½lᵀHl + fᵀl is carried in obj_const so optimal values stay in original
// coordinates.
absl::StatusOr<StandardForm> FromBox(const BoxQpSpec& spec);

// ½xᵀHx + fᵀx + obj_const.
absl::StatusOr<double> EvalObjective(const QpInstance& inst,
                                     const Eigen::VectorXd& x);
double EvalObjective(const BoxQpSpec& spec, const Eigen::VectorXd& x);
double EvalObjective(const SqpSpec& spec, const Eigen::VectorXd& x);

// Empty result means the instance is well formed.
std::vector<Diagnostic> Validate(const QpInstance& inst);

}  // namespace quadmilp

#endif  // QUADMILP_MODEL_H_
