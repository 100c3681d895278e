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

#include "quadmilp/pipeline.h"

#include <cmath>

#include "gtest/gtest.h"
#include "quadmilp/errors.h"
#include "quadmilp/verify.h"
#include "test_util.h"

namespace quadmilp {
namespace {

using ::quadmilp::testing::C5Spec;
using ::quadmilp::testing::Example1;
using ::quadmilp::testing::Vec;

Problem StandardProblem(const QpInstance& inst) {
  Problem p;
  p.name = inst.label;
  p.form = StandardForm{inst, StandardizeMap::Identity(inst.n)};
  return p;
}

TEST(PipelineTest, Example1SolvesToThreePointFive) {
  auto result = SolveProblem(StandardProblem(Example1()));
  ASSERT_TRUE(result.ok()) << result.status();
  const SolveReport& r = result->report;
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.obj_quadratic, 3.5, 1e-6);
  EXPECT_NEAR(r.obj_linearized, 3.5, 1e-6);
  EXPECT_NEAR(r.x(0), 0.0, 1e-9);
  EXPECT_NEAR(r.x(1) + r.x(2), 1.0, 1e-9);
  ASSERT_TRUE(r.kkt.has_value());
  EXPECT_TRUE(r.kkt->Passes(1e-6));
  EXPECT_EQ(result->bounds.method, BoundMethod::kHoffmanOracle);
}

TEST(PipelineTest, C5SolvesToOneHalf) {
  auto problem = ToProblem(C5Spec(), "c5");
  ASSERT_TRUE(problem.ok());
  auto result = SolveProblem(*problem);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->report.status, SolveStatus::kOptimal);
  EXPECT_NEAR(result->report.obj_quadratic, 0.5, 1e-6);
  EXPECT_NEAR(result->bounds.V(0), 360.0, 1e-12);
}

TEST(PipelineTest, OneDimensionalBox) {
  // min x² − 2x on [0, 1]: optimum −1 at x = 1.
  BoxQpSpec spec{Eigen::MatrixXd::Constant(1, 1, 2.0), Vec({-2}), Vec({0}),
                 Vec({1})};
  auto problem = ToProblem(spec, "box1");
  ASSERT_TRUE(problem.ok());
  auto result = SolveProblem(*problem);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->report.status, SolveStatus::kOptimal);
  EXPECT_NEAR(result->report.obj_quadratic, -1.0, 1e-9);
  ASSERT_EQ(result->report.x.size(), 1);
  EXPECT_NEAR(result->report.x(0), 1.0, 1e-9);
}

TEST(PipelineTest, InstanceFileRoutesByKind) {
  InstanceFile file = MakeSqpFile(C5Spec(), "c5");
  auto problem = ToProblem(file);
  ASSERT_TRUE(problem.ok());
  EXPECT_EQ(problem->structure, StructureKind::kSimplex);
  EXPECT_EQ(problem->form.instance.m, 1);

  file = MakeStandardFile(Example1(), "example1");
  problem = ToProblem(file);
  ASSERT_TRUE(problem.ok());
  EXPECT_EQ(problem->structure, StructureKind::kGeneral);
}

TEST(PipelineTest, NoDualBoundIsReported) {
  // No interior point and too large for the extreme-point enumeration:
  // x₀ = 0 is forced by the first row.
  const int n = 16;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, n);
  A.row(0).setOnes();
  A(1, 0) = 1.0;
  Eigen::VectorXd b = Vec({1, 0});
  auto inst = MakeQpInstance(Eigen::MatrixXd::Identity(n, n),
                             Eigen::VectorXd::Zero(n), A, b);
  ASSERT_TRUE(inst.ok());
  auto result = SolveProblem(StandardProblem(*inst));
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(GetErrorKind(result.status()), ErrorKind::kNoDualBoundAvailable);
}

}  // namespace
}  // namespace quadmilp
