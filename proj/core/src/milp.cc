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

#include "quadmilp/milp.h"

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "Eigen/SparseCore"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "quadmilp/errors.h"

namespace quadmilp {
namespace {

absl::Status CheckBoundVector(const Eigen::VectorXd& v, int n,
                              const char* what) {
  if (v.size() != n) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat(what, " has length ", v.size(),
                                  ", expected ", n));
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(v(j)) || v(j) < 0.0) {
      return MakeError(ErrorKind::kInvalidInstance,
                       absl::StrCat(what, "[", j, "] = ", v(j),
                                    " is not finite and nonnegative"));
    }
  }
  return absl::OkStatus();
}

std::string FormatNumber(double v) {
  if (v == 0.0) return "0";
  return absl::StrFormat("%.12g", v);
}

// Fixed MPS fields start at columns 2, 5, 15, 25, 40, 50.
std::string DataLine(const std::string& f2, const std::string& f3,
                     const std::string& f4) {
  std::string line = absl::StrFormat("    %-8s  %-8s  %12s", f2, f3, f4);
  return line;
}

std::string TrimRight(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

double MilpModel::Objective(const Eigen::VectorXd& value) const {
  double obj = obj_const;
  for (size_t j = 0; j < columns.size(); ++j) {
    obj += columns[j].cost * value(static_cast<Eigen::Index>(j));
  }
  return obj;
}

absl::StatusOr<MilpModel> BuildIqp(const QpInstance& inst,
                                   const Bounds& bounds) {
  return BuildIqp(inst, bounds, StandardizeMap::Identity(inst.n));
}

absl::StatusOr<MilpModel> BuildIqp(const QpInstance& inst,
                                   const Bounds& bounds, StandardizeMap map) {
  const int n = inst.n;
  const int m = inst.m;
  if (absl::Status s = CheckBoundVector(bounds.U, n, "U"); !s.ok()) return s;
  if (absl::Status s = CheckBoundVector(bounds.V, n, "V"); !s.ok()) return s;

  MilpModel model;
  model.n = n;
  model.m = m;
  model.name = inst.label.empty() ? "QUADMILP" : inst.label;
  model.obj_const = inst.obj_const;
  model.source = std::make_shared<const QpInstance>(inst);
  model.map = std::move(map);
  model.bounds = bounds;

  model.columns.resize(3 * n + m);
  for (int j = 0; j < n; ++j) {
    MilpColumn& x = model.columns[model.x_offset() + j];
    x.name = absl::StrCat("X", j + 1);
    x.hi = bounds.U(j);
    x.cost = 0.5 * inst.f(j);

    MilpColumn& lambda = model.columns[model.lambda_offset() + j];
    lambda.name = absl::StrCat("L", j + 1);
    lambda.hi = bounds.V(j);

    MilpColumn& z = model.columns[model.z_offset() + j];
    z.name = absl::StrCat("Z", j + 1);
    z.hi = 1.0;
    z.binary = true;
  }
  for (int i = 0; i < m; ++i) {
    MilpColumn& mu = model.columns[model.mu_offset() + i];
    mu.name = absl::StrCat("MU", i + 1);
    mu.lo = -kInf;
    mu.cost = -0.5 * inst.b(i);
  }

  // Stationarity: Hx + Aᵀμ − λ = −f.
  for (int j = 0; j < n; ++j) {
    MilpRow row{absl::StrCat("S", j + 1), RowSense::kEqual, -inst.f(j), {}};
    for (int k = 0; k < n; ++k) {
      if (inst.H(j, k) != 0.0) {
        row.terms.push_back({model.x_offset() + k, inst.H(j, k)});
      }
    }
    for (int i = 0; i < m; ++i) {
      if (inst.A(i, j) != 0.0) {
        row.terms.push_back({model.mu_offset() + i, inst.A(i, j)});
      }
    }
    row.terms.push_back({model.lambda_offset() + j, -1.0});
    model.rows.push_back(std::move(row));
  }
  // Feasibility: Ax = b.
  for (int i = 0; i < m; ++i) {
    MilpRow row{absl::StrCat("E", i + 1), RowSense::kEqual, inst.b(i), {}};
    for (int j = 0; j < n; ++j) {
      if (inst.A(i, j) != 0.0) {
        row.terms.push_back({model.x_offset() + j, inst.A(i, j)});
      }
    }
    model.rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    MilpRow row{absl::StrCat("UX", j + 1), RowSense::kLessEqual, 0.0, {}};
    row.terms.push_back({model.x_offset() + j, 1.0});
    if (bounds.U(j) != 0.0) {
      row.terms.push_back({model.z_offset() + j, -bounds.U(j)});
    }
    model.rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    MilpRow row{absl::StrCat("UL", j + 1), RowSense::kLessEqual, bounds.V(j),
                {}};
    row.terms.push_back({model.lambda_offset() + j, 1.0});
    if (bounds.V(j) != 0.0) {
      row.terms.push_back({model.z_offset() + j, bounds.V(j)});
    }
    model.rows.push_back(std::move(row));
  }
  return model;
}

LpProblem ToLpRelaxation(const MilpModel& model) {
  const int num_model_cols = static_cast<int>(model.columns.size());
  int num_slacks = 0;
  for (const MilpRow& row : model.rows) {
    if (row.sense == RowSense::kLessEqual) ++num_slacks;
  }
  const int num_cols = num_model_cols + num_slacks;
  const int num_rows = static_cast<int>(model.rows.size());

  LpProblem lp;
  lp.c = Eigen::VectorXd::Zero(num_cols);
  lp.lo = Eigen::VectorXd::Zero(num_cols);
  lp.hi = Eigen::VectorXd::Constant(num_cols, kInf);
  lp.beq.resize(num_rows);
  for (int j = 0; j < num_model_cols; ++j) {
    const MilpColumn& col = model.columns[j];
    lp.c(j) = col.cost;
    lp.lo(j) = col.lo;
    lp.hi(j) = col.hi;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  int slack = num_model_cols;
  for (int i = 0; i < num_rows; ++i) {
    const MilpRow& row = model.rows[i];
    lp.beq(i) = row.rhs;
    for (const auto& [col, coef] : row.terms) {
      triplets.emplace_back(i, col, coef);
    }
    if (row.sense == RowSense::kLessEqual) {
      triplets.emplace_back(i, slack++, 1.0);
    }
  }
  lp.Aeq.resize(num_rows, num_cols);
  lp.Aeq.setFromTriplets(triplets.begin(), triplets.end());
  lp.Aeq.makeCompressed();
  return lp;
}

std::string ExportMps(const MilpModel& model) {
  const int num_cols = static_cast<int>(model.columns.size());
  std::vector<std::vector<std::pair<int, double>>> by_column(num_cols);
  for (size_t i = 0; i < model.rows.size(); ++i) {
    for (const auto& [col, coef] : model.rows[i].terms) {
      if (coef != 0.0) by_column[col].push_back({static_cast<int>(i), coef});
    }
  }

  std::string out;
  absl::StrAppend(&out, TrimRight(absl::StrFormat("NAME          %s",
                                                  model.name)),
                  "\n");
  absl::StrAppend(&out, "ROWS\n", " N  OBJ\n");
  for (const MilpRow& row : model.rows) {
    absl::StrAppend(&out, row.sense == RowSense::kEqual ? " E  " : " L  ",
                    row.name, "\n");
  }

  absl::StrAppend(&out, "COLUMNS\n");
  bool in_integer_block = false;
  for (int j = 0; j < num_cols; ++j) {
    const MilpColumn& col = model.columns[j];
    if (col.binary != in_integer_block) {
      absl::StrAppend(
          &out,
          TrimRight(absl::StrFormat("    %-8s  %-8s                 %s",
                                    "MARKER", "'MARKER'",
                                    col.binary ? "'INTORG'" : "'INTEND'")),
          "\n");
      in_integer_block = col.binary;
    }
    const bool has_cost = col.cost != 0.0;
    if (has_cost || by_column[j].empty()) {
      absl::StrAppend(&out, DataLine(col.name, "OBJ", FormatNumber(col.cost)),
                      "\n");
    }
    for (const auto& [row, coef] : by_column[j]) {
      absl::StrAppend(
          &out, DataLine(col.name, model.rows[row].name, FormatNumber(coef)),
          "\n");
    }
  }
  if (in_integer_block) {
    absl::StrAppend(
        &out,
        TrimRight(absl::StrFormat("    %-8s  %-8s                 %s",
                                  "MARKER", "'MARKER'", "'INTEND'")),
        "\n");
  }

  absl::StrAppend(&out, "RHS\n");
  if (model.obj_const != 0.0) {
    absl::StrAppend(&out,
                    DataLine("RHS", "OBJ", FormatNumber(-model.obj_const)),
                    "\n");
  }
  for (const MilpRow& row : model.rows) {
    if (row.rhs == 0.0) continue;
    absl::StrAppend(&out, DataLine("RHS", row.name, FormatNumber(row.rhs)),
                    "\n");
  }

  absl::StrAppend(&out, "BOUNDS\n");
  for (const MilpColumn& col : model.columns) {
    if (col.binary) {
      absl::StrAppend(&out, TrimRight(absl::StrFormat(" BV BND       %s",
                                                      col.name)),
                      "\n");
    } else if (col.lo == -kInf && col.hi == kInf) {
      absl::StrAppend(&out, TrimRight(absl::StrFormat(" FR BND       %s",
                                                      col.name)),
                      "\n");
    } else {
      if (col.lo != 0.0) {
        absl::StrAppend(&out,
                        absl::StrFormat(" LO BND       %-8s  %12s", col.name,
                                        FormatNumber(col.lo)),
                        "\n");
      }
      if (col.hi != kInf) {
        absl::StrAppend(&out,
                        absl::StrFormat(" UP BND       %-8s  %12s", col.name,
                                        FormatNumber(col.hi)),
                        "\n");
      }
    }
  }
  absl::StrAppend(&out, "ENDATA\n");
  return out;
}

}  // namespace quadmilp
