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

#include "quadmilp/model.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"
#include "quadmilp/errors.h"

namespace quadmilp {
namespace {

bool AllFinite(const Eigen::MatrixXd& m) { return m.allFinite(); }

double MaxAsymmetry(const Eigen::MatrixXd& H) {
  if (H.rows() != H.cols() || H.size() == 0) return 0.0;
  return (H - H.transpose()).cwiseAbs().maxCoeff();
}

absl::Status CheckSquareObjective(const Eigen::MatrixXd& H,
                                  const Eigen::VectorXd& f) {
  if (H.rows() != H.cols()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrFormat("H is %dx%d, expected square", H.rows(),
                                     H.cols()));
  }
  if (f.size() != H.rows()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrFormat("f has length %d, H has %d rows",
                                     f.size(), H.rows()));
  }
  if (H.rows() < 1) {
    return MakeError(ErrorKind::kDimensionMismatch, "need at least one variable");
  }
  return absl::OkStatus();
}

}  // namespace

StandardizeMap StandardizeMap::Identity(int n) {
  StandardizeMap map;
  map.selector.resize(n);
  for (int i = 0; i < n; ++i) map.selector[i] = i;
  map.shift = Eigen::VectorXd::Zero(n);
  return map;
}

Eigen::VectorXd StandardizeMap::Recover(const Eigen::VectorXd& x_std) const {
  Eigen::VectorXd x(original_size());
  for (int i = 0; i < original_size(); ++i) {
    x[i] = x_std[selector[i]] + shift[i];
  }
  return x;
}

absl::StatusOr<QpInstance> MakeQpInstance(Eigen::MatrixXd H, Eigen::VectorXd f,
                                          Eigen::MatrixXd A, Eigen::VectorXd b,
                                          double obj_const, std::string label,
                                          std::vector<Diagnostic>* notes) {
  if (absl::Status s = CheckSquareObjective(H, f); !s.ok()) return s;
  const int n = static_cast<int>(H.rows());
  // An empty A may arrive as 0x0; normalize to 0xn.
  if (A.rows() == 0) A.resize(0, n);
  if (A.cols() != n || A.rows() != b.size()) {
    return MakeError(
        ErrorKind::kDimensionMismatch,
        absl::StrFormat("A is %dx%d and b has length %d for n=%d", A.rows(),
                        A.cols(), b.size(), n));
  }
  const double asym = MaxAsymmetry(H);
  if (asym > kSymmetryTolerance && notes != nullptr) {
    notes->push_back({DiagnosticKind::kAsymmetry,
                      absl::StrFormat("H symmetrized (max |H-H'| = %g)", asym)});
  }
  Eigen::MatrixXd sym = 0.5 * (H + H.transpose());
  QpInstance inst;
  inst.n = n;
  inst.m = static_cast<int>(A.rows());
  inst.H = std::move(sym);
  inst.f = std::move(f);
  inst.A = std::move(A);
  inst.b = std::move(b);
  inst.obj_const = obj_const;
  inst.label = std::move(label);
  return inst;
}

absl::StatusOr<StandardForm> FromSqp(const SqpSpec& spec) {
  if (absl::Status s = CheckSquareObjective(spec.H, spec.f); !s.ok()) return s;
  const int n = static_cast<int>(spec.H.rows());
  absl::StatusOr<QpInstance> inst =
      MakeQpInstance(spec.H, spec.f, Eigen::MatrixXd::Ones(1, n),
                     Eigen::VectorXd::Ones(1), 0.0, "sqp");
  if (!inst.ok()) return inst.status();
  return StandardForm{*std::move(inst), StandardizeMap::Identity(n)};
}

absl::StatusOr<StandardForm> FromBox(const BoxQpSpec& spec) {
  if (absl::Status s = CheckSquareObjective(spec.H, spec.f); !s.ok()) return s;
  const int n = static_cast<int>(spec.H.rows());
  if (spec.l.size() != n || spec.u.size() != n) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrFormat("box bounds have lengths %d/%d, n=%d",
                                     spec.l.size(), spec.u.size(), n));
  }
  for (int i = 0; i < n; ++i) {
    if (!(spec.l[i] < spec.u[i])) {
      return MakeError(
          ErrorKind::kInvalidInstance,
          absl::StrFormat("box requires l < u, violated at index %d (%g >= %g)",
                          i, spec.l[i], spec.u[i]));
    }
  }
  const Eigen::MatrixXd Hs = 0.5 * (spec.H + spec.H.transpose());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  H.topLeftCorner(n, n) = Hs;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(2 * n);
  f.head(n) = Hs * spec.l + spec.f;
  Eigen::MatrixXd A(n, 2 * n);
  A << Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd b = spec.u - spec.l;
  const double obj_const = 0.5 * spec.l.dot(Hs * spec.l) + spec.f.dot(spec.l);

  absl::StatusOr<QpInstance> inst =
      MakeQpInstance(std::move(H), std::move(f), std::move(A), b, obj_const,
                     "boxqp");
  if (!inst.ok()) return inst.status();
  StandardizeMap map = StandardizeMap::Identity(n);
  map.shift = spec.l;
  map.slack_count = n;
  return StandardForm{*std::move(inst), std::move(map)};
}

absl::StatusOr<double> EvalObjective(const QpInstance& inst,
                                     const Eigen::VectorXd& x) {
  if (x.size() != inst.n) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrFormat("point has length %d, instance has n=%d",
                                     x.size(), inst.n));
  }
  return 0.5 * x.dot(inst.H * x) + inst.f.dot(x) + inst.obj_const;
}

double EvalObjective(const BoxQpSpec& spec, const Eigen::VectorXd& x) {
  return 0.5 * x.dot(spec.H * x) + spec.f.dot(x);
}

double EvalObjective(const SqpSpec& spec, const Eigen::VectorXd& x) {
  return 0.5 * x.dot(spec.H * x) + spec.f.dot(x);
}

std::vector<Diagnostic> Validate(const QpInstance& inst) {
  std::vector<Diagnostic> out;
  auto dim = [&](std::string msg) {
    out.push_back({DiagnosticKind::kDimension, std::move(msg)});
  };
  if (inst.n < 1) dim(absl::StrFormat("n must be >= 1, got %d", inst.n));
  if (inst.m < 0) dim(absl::StrFormat("m must be >= 0, got %d", inst.m));
  if (inst.H.rows() != inst.n || inst.H.cols() != inst.n) {
    dim(absl::StrFormat("H is %dx%d, expected %dx%d", inst.H.rows(),
                        inst.H.cols(), inst.n, inst.n));
  }
  if (inst.f.size() != inst.n) {
    dim(absl::StrFormat("f has length %d, expected %d", inst.f.size(), inst.n));
  }
  if (inst.A.rows() != inst.m || inst.A.cols() != inst.n) {
    dim(absl::StrFormat("A is %dx%d, expected %dx%d", inst.A.rows(),
                        inst.A.cols(), inst.m, inst.n));
  }
  if (inst.b.size() != inst.m) {
    dim(absl::StrFormat("b has length %d, expected %d", inst.b.size(), inst.m));
  }
  const bool finite = AllFinite(inst.H) && AllFinite(inst.f) &&
                      AllFinite(inst.A) && AllFinite(inst.b) &&
                      std::isfinite(inst.obj_const);
  if (!finite) {
    out.push_back({DiagnosticKind::kNonFinite, "NaN or Inf entry in data"});
  }
  if (inst.H.rows() == inst.H.cols() && finite) {
    const double asym = MaxAsymmetry(inst.H);
    if (asym != 0.0) {
      out.push_back({DiagnosticKind::kAsymmetry,
                     absl::StrFormat("H not symmetric (max |H-H'| = %g)", asym)});
    }
  }
  return out;
}

}  // namespace quadmilp
