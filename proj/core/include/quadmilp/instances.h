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

#ifndef QUADMILP_INSTANCES_H_
#define QUADMILP_INSTANCES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "quadmilp/model.h"

namespace quadmilp {

inline constexpr int kInstanceSchemaVersion = 1;

enum class InstanceKind { kSqp, kBoxQp, kStandard };

const char* InstanceKindName(InstanceKind kind);

// On-disk instance. Which arrays are meaningful depends on `kind`:
//   sqp:      H, f
//   boxqp:    H, f, l, u
//   standard: H, f, A, b, obj_const
struct InstanceFile {
  int schema_version = kInstanceSchemaVersion;
  InstanceKind kind = InstanceKind::kStandard;
  std::string name;
  std::optional<std::uint64_t> seed;
  std::optional<double> density;
  bool sparse_h = false;  // storage of H in the text form
  Eigen::MatrixXd H;
  Eigen::VectorXd f;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd l;
  Eigen::VectorXd u;
  double obj_const = 0.0;

  bool operator==(const InstanceFile& other) const;
};

absl::StatusOr<InstanceFile> ParseInstance(const std::string& text);

// Canonical text form; numbers use the shortest round-trip decimal.
std::string WriteInstance(const InstanceFile& file);

absl::StatusOr<InstanceFile> ReadInstanceFile(const std::string& path);
absl::Status WriteInstanceFile(const std::string& path,
                               const InstanceFile& file);

InstanceFile MakeSqpFile(const SqpSpec& spec, std::string name);
InstanceFile MakeBoxQpFile(const BoxQpSpec& spec, std::string name);
InstanceFile MakeStandardFile(const QpInstance& inst, std::string name);

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  Eigen::MatrixXd Adjacency() const;
  std::vector<int> Degrees() const;
};

Graph CycleGraph(int n);
Graph CompleteGraph(int n);
Graph EmptyGraph(int n);

// min xᵀ(A_G + I)x over the simplex, written as ½xᵀHx with H = 2(A_G + I).
// The optimal value is 1/α(G).
SqpSpec MotzkinStrausSpec(const Graph& graph);

// G_k: complete bipartite graph on {(i,−1), (i,1) : i = 0..k} where each edge
// {(i,−1), (i,1)}, i ≥ 1, is subdivided by a new vertex w_i. Vertex order is
// (0..k,−1), (0..k,1), w_1..w_k, so n = 3k + 2.
Graph StableQpGraph(int k);

struct StableQp {
  Graph graph;
  SqpSpec spec;
};

StableQp GenStableQp(int k);

// Random objective data, deterministic in `seed`. Draw order with
// std::mt19937_64(seed): for i = 0..n−1, H_ii ~ U{−50..50}, then for
// k = i+1..n−1 a Bernoulli(density) draw and, when it hits, H_ik = H_ki ~
// U{−50..50}∖{0}; finally f_i ~ U{−50..50} for i = 0..n−1. Integer draws use
// rejection sampling on the raw 64-bit output, Bernoulli compares the top 53
// bits scaled to [0, 1) against density.
SqpSpec GenRandomSqp(int n, double density, std::uint64_t seed);

// Same objective generator; box is [0, 1]ⁿ.
BoxQpSpec GenRandomBoxQp(int n, double density, std::uint64_t seed);

// Fraction of nonzero off-diagonal entries of H.
double OffDiagonalDensity(const Eigen::MatrixXd& H);

}  // namespace quadmilp

#endif  // QUADMILP_INSTANCES_H_
