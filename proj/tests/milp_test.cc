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
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "gtest/gtest.h"
#include "quadmilp/bnb.h"
#include "quadmilp/errors.h"
#include "quadmilp/instances.h"
#include "quadmilp/pipeline.h"
#include "test_util.h"

namespace quadmilp {
namespace {

using ::quadmilp::testing::C5Spec;
using ::quadmilp::testing::Example1;
using ::quadmilp::testing::Vec;

MilpModel Example1Model() {
  const QpInstance inst = Example1();
  auto bounds = ComputeBounds(inst, StructureKind::kGeneral);
  EXPECT_TRUE(bounds.ok());
  auto model = BuildIqp(inst, *bounds);
  EXPECT_TRUE(model.ok());
  return *std::move(model);
}

MilpModel SimplexModel(int n) {
  auto problem = ToProblem(
      SqpSpec{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)});
  auto built = BuildModel(*problem);
  EXPECT_TRUE(built.ok());
  return std::move(built->model);
}

TEST(BuildIqpTest, Example1Counts) {
  const MilpModel model = Example1Model();
  int continuous = 0, binary = 0, equalities = 0, inequalities = 0;
  for (const MilpColumn& c : model.columns) (c.binary ? binary : continuous)++;
  for (const MilpRow& r : model.rows) {
    (r.sense == RowSense::kEqual ? equalities : inequalities)++;
  }
  EXPECT_EQ(continuous, 8);
  EXPECT_EQ(binary, 3);
  EXPECT_EQ(equalities, 5);
  EXPECT_EQ(inequalities, 6);
  EXPECT_EQ(model.num_continuous(), 8);
  EXPECT_EQ(model.num_binary(), 3);
  EXPECT_EQ(model.num_equalities(), 5);
  EXPECT_EQ(model.num_inequalities(), 6);
}

TEST(BuildIqpTest, ZeroPrimalBoundPinsVariable) {
  const MilpModel model = Example1Model();
  const MilpColumn& x1 = model.columns[model.x_offset()];
  EXPECT_EQ(x1.hi, 0.0);
  for (const MilpRow& row : model.rows) {
    if (row.name != "UX1") continue;
    ASSERT_EQ(row.terms.size(), 1u);
    EXPECT_EQ(row.terms[0].first, model.x_offset());
  }
}

TEST(BuildIqpTest, ObjectiveIsLinearized) {
  const MilpModel model = Example1Model();
  EXPECT_EQ(model.columns[0].cost, 1.0);    // ½f₁
  EXPECT_EQ(model.columns[3].cost, -1.0);   // −½b₁
  EXPECT_EQ(model.columns[4].cost, -0.5);   // −½b₂
  EXPECT_EQ(model.columns[5].cost, 0.0);    // λ
}

TEST(BuildIqpTest, BigMCoefficientsAreFiniteAndNonnegative) {
  const MilpModel model = Example1Model();
  for (const MilpRow& row : model.rows) {
    if (row.sense != RowSense::kLessEqual) continue;
    EXPECT_TRUE(std::isfinite(row.rhs));
    EXPECT_GE(row.rhs, 0.0);
    for (const auto& [col, coef] : row.terms) {
      if (col >= model.z_offset()) {
        EXPECT_TRUE(std::isfinite(coef));
      }
    }
  }
}

TEST(BuildIqpTest, RejectsBadBounds) {
  const QpInstance inst = Example1();
  Bounds bounds;
  bounds.U = Vec({0, 1, 1});
  bounds.V = Vec({1, kInf, 1});
  auto model = BuildIqp(inst, bounds);
  ASSERT_FALSE(model.ok());
  bounds.V = Vec({1, -1, 1});
  EXPECT_FALSE(BuildIqp(inst, bounds).ok());
  bounds.V = Vec({1, 1});
  model = BuildIqp(inst, bounds);
  ASSERT_FALSE(model.ok());
  EXPECT_EQ(GetErrorKind(model.status()), ErrorKind::kDimensionMismatch);
}

TEST(BuildIqpTest, TrivialSimplexHasZeroValue) {
  auto report = SolveMilp(SimplexModel(1));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->status, SolveStatus::kOptimal);
  EXPECT_NEAR(report->obj_linearized, 0.0, 1e-12);
}

// Any point satisfying the big-M rows is complementary, whatever z is.
TEST(BuildIqpTest, BigMRowsEnforceComplementarity) {
  const MilpModel model = Example1Model();
  const int n = model.n;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int feasible = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(model.columns.size());
    for (int j = 0; j < n; ++j) {
      const MilpColumn& x = model.columns[model.x_offset() + j];
      const MilpColumn& l = model.columns[model.lambda_offset() + j];
      v(model.x_offset() + j) = unit(rng) < 0.5 ? 0.0 : x.hi * unit(rng);
      v(model.lambda_offset() + j) = unit(rng) < 0.5 ? 0.0 : l.hi * unit(rng);
      v(model.z_offset() + j) = unit(rng) < 0.5 ? 0.0 : 1.0;
    }
    bool ok = true;
    for (const MilpRow& row : model.rows) {
      if (row.sense != RowSense::kLessEqual) continue;
      double lhs = 0;
      for (const auto& [col, coef] : row.terms) lhs += coef * v(col);
      ok &= lhs <= row.rhs;
    }
    if (!ok) continue;
    ++feasible;
    for (int j = 0; j < n; ++j) {
      EXPECT_EQ(v(model.x_offset() + j) * v(model.lambda_offset() + j), 0.0);
    }
  }
  EXPECT_GT(feasible, 100);
}

TEST(ToLpRelaxationTest, Shape) {
  const MilpModel model = Example1Model();
  const LpProblem lp = ToLpRelaxation(model);
  EXPECT_EQ(lp.num_rows(), 11);
  EXPECT_EQ(lp.num_cols(), 11 + 6);
  for (int j = 0; j < model.n; ++j) {
    EXPECT_EQ(lp.lo(model.z_offset() + j), 0.0);
    EXPECT_EQ(lp.hi(model.z_offset() + j), 1.0);
  }
  EXPECT_EQ(lp.lo(model.mu_offset()), -kInf);
  EXPECT_TRUE(ValidateLp(lp).ok());
}

// Minimal MPS reader for the subset the exporter writes.
struct ParsedMps {
  std::string name;
  std::map<std::string, char> row_sense;
  std::map<std::pair<std::string, std::string>, double> coef;
  std::map<std::string, double> rhs;
  std::map<std::string, std::string> bound_type;
  std::map<std::string, double> upper;
  std::vector<std::string> integer_columns;
  int markers = 0;
};

ParsedMps ReadMps(const std::string& text) {
  ParsedMps mps;
  std::string section;
  bool integer = false;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    const std::string line(raw);
    if (line.empty()) continue;
    std::vector<std::string> tok =
        absl::StrSplit(line, ' ', absl::SkipEmpty());
    if (line[0] != ' ') {
      section = tok[0];
      if (section == "NAME" && tok.size() > 1) mps.name = tok[1];
      continue;
    }
    if (section == "ROWS") {
      mps.row_sense[tok[1]] = tok[0][0];
    } else if (section == "COLUMNS") {
      if (tok.size() >= 3 && tok[1] == "'MARKER'") {
        ++mps.markers;
        integer = tok[2] == "'INTORG'";
        continue;
      }
      if (integer && (mps.integer_columns.empty() ||
                      mps.integer_columns.back() != tok[0])) {
        mps.integer_columns.push_back(tok[0]);
      }
      for (size_t k = 1; k + 1 < tok.size(); k += 2) {
        mps.coef[{tok[0], tok[k]}] = std::stod(tok[k + 1]);
      }
    } else if (section == "RHS") {
      for (size_t k = 1; k + 1 < tok.size(); k += 2) {
        mps.rhs[tok[k]] = std::stod(tok[k + 1]);
      }
    } else if (section == "BOUNDS") {
      mps.bound_type[tok[2]] += tok[0];
      if (tok[0] == "UP") mps.upper[tok[2]] = std::stod(tok[3]);
    }
  }
  return mps;
}

double At12Digits(double v) {
  return std::stod(absl::StrFormat("%.12g", v));
}

void ExpectRoundTrip(const MilpModel& model) {
  const ParsedMps mps = ReadMps(ExportMps(model));
  EXPECT_EQ(mps.row_sense.size(), model.rows.size() + 1);
  std::map<std::pair<std::string, std::string>, double> expected;
  for (const MilpColumn& col : model.columns) {
    if (col.cost != 0.0) expected[{col.name, "OBJ"}] = At12Digits(col.cost);
  }
  for (const MilpRow& row : model.rows) {
    EXPECT_EQ(mps.row_sense.at(row.name),
              row.sense == RowSense::kEqual ? 'E' : 'L');
    for (const auto& [col, coef] : row.terms) {
      expected[{model.columns[col].name, row.name}] = At12Digits(coef);
    }
    const auto it = mps.rhs.find(row.name);
    EXPECT_EQ(it == mps.rhs.end() ? 0.0 : it->second, At12Digits(row.rhs));
  }
  auto parsed = mps.coef;
  for (auto it = parsed.begin(); it != parsed.end();) {
    it = it->second == 0.0 && it->first.second == "OBJ" ? parsed.erase(it)
                                                        : std::next(it);
  }
  EXPECT_EQ(parsed, expected);
  const auto obj_rhs = mps.rhs.find("OBJ");
  EXPECT_EQ(obj_rhs == mps.rhs.end() ? 0.0 : -obj_rhs->second,
            At12Digits(model.obj_const));
  EXPECT_EQ(mps.integer_columns.size(), static_cast<size_t>(model.n));
  for (const MilpColumn& col : model.columns) {
    if (col.binary) {
      EXPECT_EQ(mps.bound_type.at(col.name), "BV");
    } else if (col.lo == -kInf) {
      EXPECT_EQ(mps.bound_type.at(col.name), "FR");
    } else {
      EXPECT_EQ(mps.upper.at(col.name), At12Digits(col.hi));
    }
  }
}

TEST(ExportMpsTest, SingleVariableSimplex) {
  const std::string text = ExportMps(SimplexModel(1));
  const ParsedMps mps = ReadMps(text);
  EXPECT_EQ(mps.markers, 2);
  EXPECT_NE(text.find("'INTORG'"), std::string::npos);
  EXPECT_EQ(mps.integer_columns, std::vector<std::string>{"Z1"});
  EXPECT_EQ(mps.bound_type.at("Z1"), "BV");
  EXPECT_NE(text.find(" FR BND       MU1\n"), std::string::npos);
  EXPECT_EQ(text.rfind("ENDATA\n"), text.size() - 7);
}

TEST(ExportMpsTest, RoundTripsCoefficients) {
  ExpectRoundTrip(Example1Model());
  ExpectRoundTrip(SimplexModel(3));
  for (int seed = 0; seed < 5; ++seed) {
    auto problem = ToProblem(GenRandomBoxQp(4, 0.7, 70 + seed));
    auto built = BuildModel(*problem);
    ASSERT_TRUE(built.ok());
    ExpectRoundTrip(built->model);
  }
  // Non-integer data and an objective constant.
  BoxQpSpec spec{Eigen::MatrixXd::Identity(2, 2) * (1.0 / 3.0),
                 Vec({0.1, -2.0 / 7.0}), Vec({-1.5, 0.25}), Vec({2, 1})};
  auto built = BuildModel(*ToProblem(spec, "frac"));
  ASSERT_TRUE(built.ok());
  ASSERT_NE(built->model.obj_const, 0.0);
  ExpectRoundTrip(built->model);
}

TEST(ExportMpsTest, IsDeterministic) {
  const MilpModel model = Example1Model();
  EXPECT_EQ(ExportMps(model), ExportMps(Example1Model()));
}

std::string ReadGolden(const std::string& name) {
  std::ifstream in(std::string(QUADMILP_SOURCE_DIR) + "/tests/golden/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ExportMpsTest, MatchesGoldenFiles) {
  Problem ex1;
  ex1.name = "example1";
  ex1.form = StandardForm{Example1(), StandardizeMap::Identity(3)};
  EXPECT_EQ(ExportMps(BuildModel(ex1)->model), ReadGolden("example1.mps"));
  EXPECT_EQ(ExportMps(BuildModel(*ToProblem(C5Spec(), "c5"))->model),
            ReadGolden("c5.mps"));
}

}  // namespace
}  // namespace quadmilp
