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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "quadmilp/errors.h"
#include "quadmilp/instances.h"
#include "test_util.h"

namespace quadmilp {
namespace {

using ::quadmilp::testing::C5Spec;
using ::quadmilp::testing::CycleAdjacency;
using ::quadmilp::testing::Example1;
using ::quadmilp::testing::Vec;

TEST(KktResidualTest, Example1Point) {
  auto r = KktResidual(Example1(), KktPoint{Vec({0, 1, 0}), Vec({-1, -1}),
                                            Vec({0, 0, 0})});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->stationarity_inf, 0.0);
  EXPECT_EQ(r->complementarity, 0.0);
  EXPECT_EQ(r->feasibility_inf, 0.0);
  EXPECT_TRUE(r->is_kkt);
}

TEST(KktResidualTest, UnboundedMultiplierFamily) {
  for (double t : {0.0, 1.0, 7.0, 10.0, 1e3}) {
    auto r = KktResidual(Example1(),
                         KktPoint{Vec({0, 1, 0}), Vec({-1 - t, -1 + 2 * t}),
                                  Vec({t, 0, 0})});
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r->stationarity_inf, 0.0) << "t=" << t;
    EXPECT_TRUE(r->is_kkt) << "t=" << t;
  }
}

TEST(KktResidualTest, ZeroMultipliersAreNotKkt) {
  auto r = KktResidual(Example1(), KktPoint{Vec({0, 1, 0}), Vec({0, 0}),
                                            Vec({0, 0, 0})});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->stationarity_inf, 3.0);
  EXPECT_FALSE(r->is_kkt);
}

TEST(KktResidualTest, SignViolations) {
  auto r = KktResidual(Example1(), KktPoint{Vec({-0.5, 1.5, 0}), Vec({0, 0}),
                                            Vec({0, -2, 0})});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->min_x, -0.5);
  EXPECT_EQ(r->min_lambda, -2.0);
  EXPECT_FALSE(r->is_kkt);
}

TEST(KktResidualTest, RejectsWrongDimensions) {
  auto r = KktResidual(Example1(),
                       KktPoint{Vec({0, 1}), Vec({0, 0}), Vec({0, 0, 0})});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(GetErrorKind(r.status()), ErrorKind::kDimensionMismatch);
}

TEST(LinearizationGapTest, Values) {
  const QpInstance inst = Example1();
  EXPECT_NEAR(LinearizationGap(inst, KktPoint{Vec({0, 1, 0}), Vec({-1, -1}),
                                              Vec({0, 0, 0})}),
              0.0, 1e-15);
  EXPECT_NEAR(LinearizationGap(inst, KktPoint{Vec({0, 1, 0}), Vec({0, 0}),
                                              Vec({0, 0, 0})}),
              1.5, 1e-15);
  auto zero_rhs = MakeQpInstance(Eigen::MatrixXd::Identity(2, 2), Vec({1, 1}),
                                 Eigen::MatrixXd::Ones(1, 2), Vec({0}));
  EXPECT_EQ(LinearizationGap(*zero_rhs, KktPoint{Vec({0, 0}), Vec({5}),
                                                 Vec({1, 2})}),
            0.0);
}

TEST(OracleQpTest, KnownValues) {
  auto ex1 = OracleQp(Example1());
  ASSERT_TRUE(ex1.ok());
  EXPECT_NEAR(ex1->value, 3.5, 1e-12);

  auto c5 = OracleQp(FromSqp(C5Spec())->instance);
  ASSERT_TRUE(c5.ok());
  EXPECT_NEAR(c5->value, 0.5, 1e-12);
  for (const KktPoint& p : c5->optimal) {
    EXPECT_TRUE(KktResidual(FromSqp(C5Spec())->instance, p)->is_kkt);
  }

  auto single = OracleQp(*MakeQpInstance(Eigen::MatrixXd::Constant(1, 1, 2.0),
                                         Vec({0}), Eigen::MatrixXd::Ones(1, 1),
                                         Vec({1})));
  ASSERT_TRUE(single.ok());
  EXPECT_NEAR(single->value, 1.0, 1e-12);
  EXPECT_NEAR(single->argmin(0), 1.0, 1e-12);
}

TEST(OracleQpTest, RejectsLargeInstances) {
  const int n = kOracleMaxVariables + 1;
  auto r = OracleQp(FromSqp(SqpSpec{Eigen::MatrixXd::Identity(n, n),
                                    Eigen::VectorXd::Zero(n)})
                        ->instance);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(GetErrorKind(r.status()), ErrorKind::kOracleLimit);
}

// The oracle value must not exceed the objective at any feasible point.
TEST(OracleQpTest, LowerBoundsRandomFeasiblePoints) {
  std::mt19937_64 rng(99);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 9;
    const SqpSpec spec = GenRandomSqp(n, 0.2 + 0.016 * i, 4000 + i);
    auto oracle = OracleQp(FromSqp(spec)->instance);
    ASSERT_TRUE(oracle.ok());
    for (int s = 0; s < 200; ++s) {
      Eigen::VectorXd x(n);
      for (int k = 0; k < n; ++k) x(k) = expo(rng);
      x /= x.sum();
      EXPECT_LE(oracle->value, EvalObjective(spec, x) + 1e-9);
    }
  }
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 8;
    const BoxQpSpec spec = GenRandomBoxQp(n, 0.2 + 0.016 * i, 5000 + i);
    auto form = FromBox(spec);
    auto oracle = OracleQp(form->instance);
    ASSERT_TRUE(oracle.ok());
    EXPECT_NEAR(EvalObjective(spec, form->map.Recover(oracle->argmin)),
                oracle->value, 1e-9 * (1 + std::abs(oracle->value)));
    for (int s = 0; s < 200; ++s) {
      Eigen::VectorXd x(n);
      for (int k = 0; k < n; ++k) x(k) = unit(rng);
      EXPECT_LE(oracle->value, EvalObjective(spec, x) + 1e-9);
    }
  }
}

int BruteForceAlpha(const Eigen::MatrixXd& adj) {
  const int n = static_cast<int>(adj.rows());
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool independent = true;
    for (int i = 0; i < n && independent; ++i) {
      for (int j = i + 1; j < n && independent; ++j) {
        if ((mask >> i & 1) && (mask >> j & 1) && adj(i, j) != 0) {
          independent = false;
        }
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

TEST(StabilityNumberTest, KnownGraphs) {
  EXPECT_EQ(*StabilityNumber(CycleAdjacency(5)), 2);
  EXPECT_EQ(*StabilityNumber(Eigen::MatrixXd::Zero(6, 6)), 6);
  Eigen::MatrixXd k4 = Eigen::MatrixXd::Ones(4, 4);
  k4.diagonal().setZero();
  EXPECT_EQ(*StabilityNumber(k4), 1);
}

TEST(StabilityNumberTest, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution edge(0.4);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 12;
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (edge(rng)) adj(i, j) = adj(j, i) = 1;
      }
    }
    EXPECT_EQ(*StabilityNumber(adj), BruteForceAlpha(adj));
  }
}

TEST(StabilityNumberTest, RejectsBadInput) {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(3, 3);
  asym(0, 1) = 1;
  EXPECT_FALSE(StabilityNumber(asym).ok());
  const int n = kStabilityOracleMaxVertices + 1;
  EXPECT_FALSE(StabilityNumber(Eigen::MatrixXd::Zero(n, n)).ok());
}

}  // namespace
}  // namespace quadmilp
