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

#ifndef QUADMILP_TESTS_TEST_UTIL_H_
#define QUADMILP_TESTS_TEST_UTIL_H_

#include <utility>

#include "Eigen/Core"
#include "gtest/gtest.h"
#include "quadmilp/model.h"

namespace quadmilp::testing {

// min x₁² − ½x₂² + ½x₃² + 2x₁ + 4x₂ + 3x₃
// s.t. x₁ + 2x₂ + 2x₃ = 2, x₁ + x₂ + x₃ = 1, x ≥ 0.
// Feasible set is {(0, t, 1 − t)}; the objective is 3.5 on all of it.
inline QpInstance Example1() {
  Eigen::MatrixXd H = Eigen::Vector3d(2, -1, 1).asDiagonal();
  Eigen::VectorXd f = Eigen::Vector3d(2, 4, 3);
  Eigen::MatrixXd A(2, 3);
  A << 1, 2, 2, 1, 1, 1;
  Eigen::VectorXd b = Eigen::Vector2d(2, 1);
  auto inst = MakeQpInstance(H, f, A, b, 0.0, "example1");
  EXPECT_TRUE(inst.ok()) << inst.status();
  return *std::move(inst);
}

inline Eigen::MatrixXd CycleAdjacency(int n) {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    adj(i, (i + 1) % n) = 1;
    adj((i + 1) % n, i) = 1;
  }
  return adj;
}

// Motzkin–Straus data for C₅, built by hand.
inline SqpSpec C5Spec() {
  return SqpSpec{2.0 * (CycleAdjacency(5) + Eigen::MatrixXd::Identity(5, 5)),
                 Eigen::VectorXd::Zero(5)};
}

inline Eigen::VectorXd Vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace quadmilp::testing

#endif  // QUADMILP_TESTS_TEST_UTIL_H_
