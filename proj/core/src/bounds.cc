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

#include "quadmilp/bounds.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "Eigen/LU"
#include "absl/strings/str_format.h"
#include "quadmilp/errors.h"
#include "quadmilp/lp.h"

namespace quadmilp {
namespace {

constexpr double kInteriorTol = 1e-9;
constexpr double kBigMRelMargin = 1e-3;
constexpr double kBigMAbsMargin = 1e-3;
constexpr double kSigmaTol = 1e-9;

LpProblem FeasibleSetLp(const QpInstance& inst) {
  LpProblem p;
  p.Aeq = ToSparse(inst.A);
  p.beq = inst.b;
  p.c = Eigen::VectorXd::Zero(inst.n);
  p.lo = Eigen::VectorXd::Zero(inst.n);
  p.hi = Eigen::VectorXd::Constant(inst.n, kInf);
  return p;
}

bool IsSimplexLayout(const QpInstance& inst) {
  return inst.m == 1 && (inst.A.array() == 1.0).all() && inst.b[0] == 1.0;
}

bool IsBoxLayout(const QpInstance& inst) {
  if (inst.n != 2 * inst.m) return false;
  const int k = inst.m;
  Eigen::MatrixXd expected(k, 2 * k);
  expected << Eigen::MatrixXd::Identity(k, k), Eigen::MatrixXd::Identity(k, k);
  if (inst.A != expected || (inst.b.array() < 0.0).any()) return false;
  // Slack columns carry no objective.
  return inst.H.rightCols(k).isZero(0.0) && inst.f.tail(k).isZero(0.0);
}

}  // namespace

const char* BoundMethodName(BoundMethod method) {
  switch (method) {
    case BoundMethod::kSimplexClosedForm:
      return "SimplexClosedForm";
    case BoundMethod::kBoxClosedForm:
      return "BoxClosedForm";
    case BoundMethod::kGeneralLp:
      return "GeneralLp";
    case BoundMethod::kHoffmanOracle:
      return "HoffmanOracle";
  }
  return "Unknown";
}

double EntrywiseL1(const Eigen::MatrixXd& H) { return H.cwiseAbs().sum(); }

absl::StatusOr<Eigen::VectorXd> PrimalBounds(const QpInstance& inst) {
  LpProblem p = FeasibleSetLp(inst);
  LpEngine engine(p);
  Eigen::VectorXd U(inst.n);
  LpBasis basis;
  for (int j = 0; j < inst.n; ++j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(inst.n);
    c[j] = -1.0;
    engine.set_objective(c);
    const LpSolution s = engine.Solve(p.lo, p.hi, &basis);
    switch (s.status) {
      case LpStatus::kOptimal:
        U[j] = std::max(0.0, -s.obj);
        basis = s.basis;
        break;
      case LpStatus::kInfeasible:
        return MakeError(ErrorKind::kInfeasibleInstance,
                         "no x >= 0 satisfies Ax = b");
      case LpStatus::kUnbounded:
        return MakeError(
            ErrorKind::kUnboundedFeasibleSet,
            absl::StrFormat("x_%d is unbounded over the feasible set", j));
      case LpStatus::kIterationLimit:
        return MakeError(ErrorKind::kNumerical,
                         absl::StrFormat("pivot limit bounding x_%d", j));
    }
  }
  return U;
}

double HoffmanSimplex(int n) { return static_cast<double>(n - 1); }

double HoffmanBox() { return 1.0; }

absl::StatusOr<std::vector<SigmaExtremePoint>> EnumerateSigmaExtremePoints(
    const Eigen::MatrixXd& A) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int dim = m + n;
  if (m < 1 || n < 1 || A.isZero(0.0)) {
    return MakeError(ErrorKind::kInvalidInstance,
                     "extreme-point enumeration needs a nonzero A with m >= 1");
  }
  if (dim > kHoffmanOracleMaxDim) {
    return MakeError(ErrorKind::kOracleLimit,
                     absl::StrFormat("m + n = %d exceeds the enumeration limit "
                                     "%d",
                                     dim, kHoffmanOracleMaxDim));
  }
  Eigen::FullPivLU<Eigen::MatrixXd> rank_check(A);
  if (rank_check.rank() < m) {
    return MakeError(ErrorKind::kInvalidInstance,
                     "A has linearly dependent rows; the set has no vertices");
  }

  // Row j of `w_rows` is the gradient of w_j = (Aᵀμ − λ)_j in (μ, λ).
  Eigen::MatrixXd w_rows = Eigen::MatrixXd::Zero(n, dim);
  w_rows.leftCols(m) = A.transpose();
  w_rows.rightCols(n) = -Eigen::MatrixXd::Identity(n, n);

  std::vector<std::vector<unsigned>> masks_by_size(n + 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    masks_by_size[std::popcount(mask)].push_back(mask);
  }

  std::vector<SigmaExtremePoint> points;
  Eigen::MatrixXd system(dim, dim);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  rhs[0] = 1.0;
  for (unsigned zero_set = 0; zero_set < (1u << n); ++zero_set) {
    const int q = std::popcount(zero_set);
    const int z_count = dim - 1 - q;
    if (z_count < 0 || z_count > n) continue;
    std::vector<int> free_coords;
    for (int j = 0; j < n; ++j) {
      if (!((zero_set >> j) & 1u)) free_coords.push_back(j);
    }
    if (free_coords.empty()) continue;
    const int k = static_cast<int>(free_coords.size());
    for (unsigned signs = 0; signs < (1u << k); ++signs) {
      Eigen::RowVectorXd sign_row = Eigen::RowVectorXd::Zero(dim);
      for (int t = 0; t < k; ++t) {
        sign_row += ((signs >> t) & 1u ? -1.0 : 1.0) * w_rows.row(free_coords[t]);
      }
      for (unsigned lambda_zero : masks_by_size[z_count]) {
        system.row(0) = sign_row;
        int r = 1;
        for (int j = 0; j < n; ++j) {
          if ((zero_set >> j) & 1u) system.row(r++) = w_rows.row(j);
        }
        for (int j = 0; j < n; ++j) {
          if ((lambda_zero >> j) & 1u) {
            system.row(r).setZero();
            system(r++, m + j) = 1.0;
          }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd p = lu.solve(rhs);
        const Eigen::VectorXd lambda = p.tail(n);
        if ((lambda.array() < -kSigmaTol).any()) continue;
        const Eigen::VectorXd w = w_rows * p;
        if (w.lpNorm<1>() > 1.0 + kSigmaTol) continue;
        bool seen = false;
        for (const SigmaExtremePoint& e : points) {
          if ((e.mu - p.head(m)).cwiseAbs().maxCoeff() <= 1e-9 &&
              (e.lambda - lambda).cwiseAbs().maxCoeff() <= 1e-9) {
            seen = true;
            break;
          }
        }
        if (seen) continue;
        SigmaExtremePoint e;
        e.mu = p.head(m);
        e.lambda = lambda.cwiseMax(0.0);
        e.l1_norm = e.mu.lpNorm<1>() + e.lambda.lpNorm<1>();
        points.push_back(std::move(e));
      }
    }
  }
  if (points.empty()) {
    return MakeError(ErrorKind::kNumerical, "no extreme point found");
  }
  return points;
}

absl::StatusOr<double> HoffmanOracle(const Eigen::MatrixXd& A) {
  absl::StatusOr<std::vector<SigmaExtremePoint>> points =
      EnumerateSigmaExtremePoints(A);
  if (!points.ok()) return points.status();
  double best = 0.0;
  for (const SigmaExtremePoint& e : *points) best = std::max(best, e.l1_norm);
  return best;
}

double DualBoundSqp(const Eigen::MatrixXd& H, const Eigen::VectorXd& f) {
  const double n = static_cast<double>(H.rows());
  return (n * n - 1.0) / 2.0 * EntrywiseL1(H) + (n - 1.0) * f.lpNorm<1>();
}

double DualBoundBox(const Eigen::MatrixXd& H, const Eigen::VectorXd& f,
                    const Eigen::VectorXd& l, const Eigen::VectorXd& u) {
  const Eigen::VectorXd f_std = H * l + f;
  const double width = (u - l).lpNorm<Eigen::Infinity>();
  return (width + 1.0) * EntrywiseL1(H) + f_std.lpNorm<1>();
}

absl::StatusOr<Eigen::VectorXd> DualBoundGeneral(const QpInstance& inst,
                                                 const Eigen::VectorXd& U) {
  const int n = inst.n;
  const int m = inst.m;
  if (U.size() != n || !U.allFinite()) {
    return MakeError(ErrorKind::kInvalidInstance,
                     "primal bounds must be finite with length n");
  }
  absl::StatusOr<double> margin = InteriorMargin(inst);
  if (!margin.ok()) return margin.status();
  if (*margin <= kInteriorTol) {
    return MakeError(ErrorKind::kNoInteriorPoint,
                     "no strictly positive feasible point (t* = 0)");
  }

  // Columns: x (n) | X upper triangle (n(n+1)/2) | μ (m) | λ (n) | ρ (n).
  const int tri = n * (n + 1) / 2;
  const int x0 = 0, big_x0 = n, mu0 = n + tri, lam0 = mu0 + m, rho0 = lam0 + n;
  const int cols = rho0 + n;
  std::vector<Eigen::Triplet<double>> triplets;
  // Hx + Aᵀμ − λ + ρ = −f.
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (inst.H(i, k) != 0.0) triplets.emplace_back(i, x0 + k, inst.H(i, k));
    }
    for (int r = 0; r < m; ++r) {
      if (inst.A(r, i) != 0.0) triplets.emplace_back(i, mu0 + r, inst.A(r, i));
    }
    triplets.emplace_back(i, lam0 + i, -1.0);
    triplets.emplace_back(i, rho0 + i, 1.0);
  }
  // H∙X + fᵀx + bᵀμ + Uᵀρ = 0.
  const int last = n;
  Eigen::VectorXd lo(cols), hi(cols);
  int t = big_x0;
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k, ++t) {
      const double h = i == k ? inst.H(i, i) : 2.0 * inst.H(i, k);
      if (h != 0.0) triplets.emplace_back(last, t, h);
      lo[t] = 0.0;
      hi[t] = U[i] * U[k];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (inst.f[i] != 0.0) triplets.emplace_back(last, x0 + i, inst.f[i]);
    if (U[i] != 0.0) triplets.emplace_back(last, rho0 + i, U[i]);
    lo[x0 + i] = 0.0;
    hi[x0 + i] = U[i];
    lo[lam0 + i] = 0.0;
    hi[lam0 + i] = kInf;
    lo[rho0 + i] = 0.0;
    hi[rho0 + i] = kInf;
  }
  for (int r = 0; r < m; ++r) {
    if (inst.b[r] != 0.0) triplets.emplace_back(last, mu0 + r, inst.b[r]);
    lo[mu0 + r] = -kInf;
    hi[mu0 + r] = kInf;
  }

  LpProblem p;
  p.Aeq.resize(n + 1, cols);
  p.Aeq.setFromTriplets(triplets.begin(), triplets.end());
  p.beq = Eigen::VectorXd::Zero(n + 1);
  p.beq.head(n) = -inst.f;
  p.lo = lo;
  p.hi = hi;
  p.c = Eigen::VectorXd::Zero(cols);

  LpEngine engine(p);
  Eigen::VectorXd V(n);
  LpBasis basis;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
    c[lam0 + j] = -1.0;
    engine.set_objective(c);
    const LpSolution s = engine.Solve(lo, hi, &basis);
    switch (s.status) {
      case LpStatus::kOptimal:
        V[j] = std::max(0.0, -s.obj);
        basis = s.basis;
        break;
      case LpStatus::kUnbounded:
        return MakeError(
            ErrorKind::kNoDualBoundAvailable,
            absl::StrFormat("V_%d = +inf: the interiority assumption failed or "
                            "the primal bounds are too weak",
                            j));
      case LpStatus::kInfeasible:
        return MakeError(ErrorKind::kNumerical,
                         absl::StrFormat("dual-bound LP for V_%d infeasible", j));
      case LpStatus::kIterationLimit:
        return MakeError(ErrorKind::kNumerical,
                         absl::StrFormat("pivot limit bounding V_%d", j));
    }
  }
  return V;
}

double PerturbationBigM(const Eigen::MatrixXd& H, const Eigen::VectorXd& f,
                        double hoffman, double u_inf) {
  const double base =
      (0.5 * EntrywiseL1(H) * (2.0 * u_inf + hoffman) + f.lpNorm<1>()) *
      hoffman;
  return base * (1.0 + kBigMRelMargin) + kBigMAbsMargin;
}

absl::StatusOr<double> InteriorMargin(const QpInstance& inst) {
  // x = y + t·e with y ≥ 0: A·y + t·(A·e) = b, maximize t ≥ 0.
  const int n = inst.n;
  Eigen::MatrixXd A(inst.m, n + 1);
  A.leftCols(n) = inst.A;
  A.col(n) = inst.A.rowwise().sum();
  LpProblem p;
  p.Aeq = ToSparse(A);
  p.beq = inst.b;
  p.c = Eigen::VectorXd::Zero(n + 1);
  p.c[n] = -1.0;
  p.lo = Eigen::VectorXd::Zero(n + 1);
  p.hi = Eigen::VectorXd::Constant(n + 1, kInf);
  absl::StatusOr<LpSolution> s = SolveLp(p);
  if (!s.ok()) return s.status();
  switch (s->status) {
    case LpStatus::kOptimal:
      return std::max(0.0, s->x[n]);
    case LpStatus::kInfeasible:
      return MakeError(ErrorKind::kInfeasibleInstance,
                       "no x >= 0 satisfies Ax = b");
    case LpStatus::kUnbounded:
      return MakeError(ErrorKind::kUnboundedFeasibleSet,
                       "feasible set is unbounded");
    case LpStatus::kIterationLimit:
      break;
  }
  return MakeError(ErrorKind::kNumerical, "pivot limit in interiority LP");
}

absl::StatusOr<Bounds> ComputeBounds(const QpInstance& inst,
                                     StructureKind structure) {
  Bounds out;
  const int n = inst.n;
  switch (structure) {
    case StructureKind::kSimplex: {
      if (!IsSimplexLayout(inst)) {
        return MakeError(ErrorKind::kInvalidInstance,
                         "simplex structure requires A = e', b = 1");
      }
      out.method = BoundMethod::kSimplexClosedForm;
      out.U = Eigen::VectorXd::Ones(n);
      out.u_inf = 1.0;
      out.hoffman = HoffmanSimplex(n);
      out.V = Eigen::VectorXd::Constant(n, DualBoundSqp(inst.H, inst.f));
      out.big_m = PerturbationBigM(inst.H, inst.f, *out.hoffman, out.u_inf);
      return out;
    }
    case StructureKind::kBox: {
      if (!IsBoxLayout(inst)) {
        return MakeError(ErrorKind::kInvalidInstance,
                         "box structure requires A = [I I], b = u - l >= 0 and "
                         "objective-free slacks");
      }
      const int k = inst.m;
      const Eigen::MatrixXd Hx = inst.H.topLeftCorner(k, k);
      const Eigen::VectorXd fx = inst.f.head(k);
      out.method = BoundMethod::kBoxClosedForm;
      out.U.resize(n);
      out.U << inst.b, inst.b;
      out.u_inf = inst.b.maxCoeff();
      out.hoffman = HoffmanBox();
      out.V = Eigen::VectorXd::Constant(
          n, DualBoundBox(Hx, fx, Eigen::VectorXd::Zero(k), inst.b));
      out.big_m = PerturbationBigM(inst.H, inst.f, *out.hoffman, out.u_inf);
      return out;
    }
    case StructureKind::kGeneral:
      break;
  }

  absl::StatusOr<Eigen::VectorXd> U = PrimalBounds(inst);
  if (!U.ok()) return U.status();
  out.U = *std::move(U);
  out.u_inf = out.U.maxCoeff();
  absl::StatusOr<double> margin = InteriorMargin(inst);
  if (!margin.ok()) return margin.status();
  if (*margin > kInteriorTol) {
    absl::StatusOr<Eigen::VectorXd> V = DualBoundGeneral(inst, out.U);
    if (!V.ok()) return V.status();
    out.V = *std::move(V);
    out.method = BoundMethod::kGeneralLp;
    return out;
  }
  if (inst.m + n <= kHoffmanOracleMaxDim && inst.m >= 1) {
    absl::StatusOr<double> h = HoffmanOracle(inst.A);
    if (!h.ok()) return h.status();
    out.hoffman = *h;
    out.big_m = PerturbationBigM(inst.H, inst.f, *h, out.u_inf);
    out.V = Eigen::VectorXd::Constant(n, *out.big_m);
    out.method = BoundMethod::kHoffmanOracle;
    return out;
  }
  return MakeError(
      ErrorKind::kNoDualBoundAvailable,
      absl::StrFormat("no strictly positive feasible point and m + n = %d is "
                      "beyond the extreme-point enumeration limit %d",
                      inst.m + n, kHoffmanOracleMaxDim));
}

}  // namespace quadmilp
