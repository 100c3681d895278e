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

#include "quadmilp/instances.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "quadmilp/errors.h"

namespace quadmilp {
namespace {

constexpr char kMagic[] = "quadmilp-instance";

// ---------------------------------------------------------------------------
// Number formatting.

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

bool ParseDouble(const std::string& token, double* out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last && std::isfinite(*out);
}

template <typename Int>
bool ParseInt(const std::string& token, Int* out) {
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), *out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

void AppendVector(std::string* out, const char* key, const Eigen::VectorXd& v) {
  absl::StrAppend(out, key);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    absl::StrAppend(out, " ", FormatDouble(v(i)));
  }
  absl::StrAppend(out, "\n");
}

void AppendRows(std::string* out, const Eigen::MatrixXd& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      absl::StrAppend(out, j == 0 ? "" : " ", FormatDouble(M(i, j)));
    }
    absl::StrAppend(out, "\n");
  }
}

// ---------------------------------------------------------------------------
// Parsing.

struct Line {
  int number;
  std::vector<std::string> tokens;
  std::string rest;  // text after the first token
};

class Parser {
 public:
  explicit Parser(const std::string& text) {
    int number = 0;
    for (absl::string_view raw : absl::StrSplit(text, '\n')) {
      ++number;
      std::string s(raw);
      if (!s.empty() && s.back() == '\r') s.pop_back();
      std::vector<std::string> tokens =
          absl::StrSplit(s, absl::ByAnyChar(" \t"), absl::SkipEmpty());
      if (tokens.empty() || tokens[0][0] == '#') continue;
      Line line{number, tokens, ""};
      const size_t start = s.find(tokens[0]) + tokens[0].size();
      const size_t first = s.find_first_not_of(" \t", start);
      if (first != std::string::npos) {
        line.rest = s.substr(first);
        while (!line.rest.empty() &&
               (line.rest.back() == ' ' || line.rest.back() == '\t')) {
          line.rest.pop_back();
        }
      }
      lines_.push_back(std::move(line));
    }
    last_line_ = number;
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }
  int last_line() const { return last_line_; }

 private:
  std::vector<Line> lines_;
  size_t pos_ = 0;
  int last_line_ = 0;
};

absl::Status ParseError(int line, const std::string& field,
                        const std::string& what) {
  return MakeError(ErrorKind::kParse,
                   absl::StrCat("line ", line, ": field '", field, "': ", what));
}

absl::Status ReadNumbers(const Line& line, size_t first,
                         const std::string& field, Eigen::Index count,
                         double* out) {
  const Eigen::Index have =
      static_cast<Eigen::Index>(line.tokens.size()) - first;
  if (have != count) {
    return ParseError(line.number, field,
                      absl::StrCat("expected ", count, " numbers, got ", have));
  }
  for (Eigen::Index i = 0; i < count; ++i) {
    if (!ParseDouble(line.tokens[first + i], &out[i])) {
      return ParseError(line.number, field,
                        absl::StrCat("invalid number '",
                                     line.tokens[first + i], "'"));
    }
  }
  return absl::OkStatus();
}

absl::Status ReadMatrixRows(Parser& p, const Line& header,
                            const std::string& field, Eigen::MatrixXd* M) {
  std::vector<double> row(M->cols());
  for (Eigen::Index i = 0; i < M->rows(); ++i) {
    if (p.done()) {
      return ParseError(header.number, field,
                        absl::StrCat("expected ", M->rows(), " rows, got ", i));
    }
    const Line& line = p.next();
    absl::Status s = ReadNumbers(line, 0, field, M->cols(), row.data());
    if (!s.ok()) return s;
    for (Eigen::Index j = 0; j < M->cols(); ++j) (*M)(i, j) = row[j];
  }
  return absl::OkStatus();
}

absl::Status ReadSparseH(Parser& p, const Line& header, int n,
                         Eigen::MatrixXd* H) {
  if (header.tokens.size() != 3) {
    return ParseError(header.number, "H", "expected 'H sparse <count>'");
  }
  long long count = 0;
  if (!ParseInt(header.tokens[2], &count) || count < 0) {
    return ParseError(header.number, "H", "invalid entry count");
  }
  H->setZero(n, n);
  std::set<std::pair<int, int>> seen;
  for (long long e = 0; e < count; ++e) {
    if (p.done()) {
      return ParseError(header.number, "H",
                        absl::StrCat("expected ", count, " entries, got ", e));
    }
    const Line& line = p.next();
    int i = 0, j = 0;
    double v = 0;
    if (line.tokens.size() != 3 || !ParseInt(line.tokens[0], &i) ||
        !ParseInt(line.tokens[1], &j) || !ParseDouble(line.tokens[2], &v)) {
      return ParseError(line.number, "H", "expected 'row col value'");
    }
    if (i < 0 || j < 0 || i >= n || j >= n) {
      return ParseError(line.number, "H",
                        absl::StrCat("coordinate (", i, ", ", j,
                                     ") out of range"));
    }
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second) {
      return ParseError(line.number, "H",
                        absl::StrCat("duplicate entry (", i, ", ", j, ")"));
    }
    (*H)(i, j) = v;
    (*H)(j, i) = v;
  }
  return absl::OkStatus();
}

bool KindFromName(const std::string& name, InstanceKind* kind) {
  if (name == "sqp") {
    *kind = InstanceKind::kSqp;
  } else if (name == "boxqp") {
    *kind = InstanceKind::kBoxQp;
  } else if (name == "standard") {
    *kind = InstanceKind::kStandard;
  } else {
    return false;
  }
  return true;
}

std::vector<std::string> RequiredFields(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kSqp:
      return {"n", "H", "f"};
    case InstanceKind::kBoxQp:
      return {"n", "H", "f", "l", "u"};
    case InstanceKind::kStandard:
      return {"n", "m", "H", "f", "A", "b"};
  }
  return {};
}

bool AllowedField(InstanceKind kind, const std::string& field) {
  if (field == "name" || field == "seed" || field == "density" ||
      field == "n" || field == "H" || field == "f") {
    return true;
  }
  switch (kind) {
    case InstanceKind::kSqp:
      return false;
    case InstanceKind::kBoxQp:
      return field == "l" || field == "u";
    case InstanceKind::kStandard:
      return field == "m" || field == "A" || field == "b" ||
             field == "obj_const";
  }
  return false;
}

// ---------------------------------------------------------------------------
// Random generation.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [lo, hi] by rejection on the raw 64-bit output.
  int UniformInt(int lo, int hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<int>(r % range);
  }

  bool Bernoulli(double p) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return u < p;
  }

 private:
  std::mt19937_64 engine_;
};

constexpr int kCoefficientRange = 50;

void GenerateObjective(int n, double density, std::uint64_t seed,
                       Eigen::MatrixXd* H, Eigen::VectorXd* f) {
  Rng rng(seed);
  H->setZero(n, n);
  for (int i = 0; i < n; ++i) {
    (*H)(i, i) = rng.UniformInt(-kCoefficientRange, kCoefficientRange);
    for (int k = i + 1; k < n; ++k) {
      if (!rng.Bernoulli(density)) continue;
      int v = rng.UniformInt(-kCoefficientRange, kCoefficientRange - 1);
      if (v >= 0) ++v;  // skip zero
      (*H)(i, k) = v;
      (*H)(k, i) = v;
    }
  }
  f->resize(n);
  for (int i = 0; i < n; ++i) {
    (*f)(i) = rng.UniformInt(-kCoefficientRange, kCoefficientRange);
  }
}

}  // namespace

const char* InstanceKindName(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kSqp:
      return "sqp";
    case InstanceKind::kBoxQp:
      return "boxqp";
    case InstanceKind::kStandard:
      return "standard";
  }
  return "unknown";
}

bool InstanceFile::operator==(const InstanceFile& o) const {
  auto same = [](const auto& a, const auto& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
  };
  return schema_version == o.schema_version && kind == o.kind &&
         name == o.name && seed == o.seed && density == o.density &&
         sparse_h == o.sparse_h && same(H, o.H) && same(f, o.f) &&
         same(A, o.A) && same(b, o.b) && same(l, o.l) && same(u, o.u) &&
         obj_const == o.obj_const;
}

absl::StatusOr<InstanceFile> ParseInstance(const std::string& text) {
  Parser p(text);
  InstanceFile file;
  if (p.done()) {
    return ParseError(1, "header", "empty document");
  }
  {
    const Line& header = p.next();
    if (header.tokens[0] != kMagic || header.tokens.size() != 2) {
      return ParseError(header.number, "header",
                        absl::StrCat("expected '", kMagic, " <version>'"));
    }
    if (!ParseInt(header.tokens[1], &file.schema_version) ||
        file.schema_version != kInstanceSchemaVersion) {
      return ParseError(header.number, "header",
                        absl::StrCat("unsupported schema version '",
                                     header.tokens[1], "'"));
    }
  }
  if (p.done() || p.peek().tokens[0] != "kind") {
    return ParseError(p.done() ? p.last_line() : p.peek().number, "kind",
                      "missing field (must follow the header)");
  }
  {
    const Line& line = p.next();
    if (line.tokens.size() != 2 || !KindFromName(line.tokens[1], &file.kind)) {
      return ParseError(line.number, "kind",
                        "expected one of sqp, boxqp, standard");
    }
  }

  std::set<std::string> seen;
  int n = -1;
  int m = -1;
  auto need_n = [&](const Line& line,
                    const std::string& field) -> absl::Status {
    if (n < 0) return ParseError(line.number, field, "must follow 'n'");
    return absl::OkStatus();
  };
  auto need_m = [&](const Line& line,
                    const std::string& field) -> absl::Status {
    if (m < 0) return ParseError(line.number, field, "must follow 'm'");
    return absl::OkStatus();
  };

  bool ended = false;
  while (!p.done()) {
    const Line& line = p.next();
    const std::string& key = line.tokens[0];
    if (key == "end") {
      if (line.tokens.size() != 1) {
        return ParseError(line.number, "end", "unexpected trailing text");
      }
      ended = true;
      break;
    }
    if (!AllowedField(file.kind, key)) {
      return ParseError(line.number, key,
                        absl::StrCat("unknown or not allowed for kind ",
                                     InstanceKindName(file.kind)));
    }
    if (!seen.insert(key).second) {
      return ParseError(line.number, key, "duplicate field");
    }
    absl::Status s;
    if (key == "name") {
      file.name = line.rest;
    } else if (key == "seed") {
      std::uint64_t seed = 0;
      if (line.tokens.size() != 2 || !ParseInt(line.tokens[1], &seed)) {
        return ParseError(line.number, key, "expected unsigned integer");
      }
      file.seed = seed;
    } else if (key == "density") {
      double d = 0;
      if (line.tokens.size() != 2 || !ParseDouble(line.tokens[1], &d)) {
        return ParseError(line.number, key, "expected number");
      }
      file.density = d;
    } else if (key == "n" || key == "m") {
      int v = 0;
      if (line.tokens.size() != 2 || !ParseInt(line.tokens[1], &v) ||
          v < (key == "n" ? 1 : 0)) {
        return ParseError(line.number, key, "expected non-negative count");
      }
      (key == "n" ? n : m) = v;
    } else if (key == "obj_const") {
      if (line.tokens.size() != 2 ||
          !ParseDouble(line.tokens[1], &file.obj_const)) {
        return ParseError(line.number, key, "expected number");
      }
    } else if (key == "H") {
      if (!(s = need_n(line, key)).ok()) return s;
      const std::string storage =
          line.tokens.size() >= 2 ? line.tokens[1] : "";
      if (storage == "dense" && line.tokens.size() == 2) {
        file.H.resize(n, n);
        s = ReadMatrixRows(p, line, key, &file.H);
      } else if (storage == "sparse") {
        file.sparse_h = true;
        s = ReadSparseH(p, line, n, &file.H);
      } else {
        return ParseError(line.number, key,
                          "expected 'H dense' or 'H sparse <count>'");
      }
    } else if (key == "A") {
      if (!(s = need_n(line, key)).ok()) return s;
      if (!(s = need_m(line, key)).ok()) return s;
      if (line.tokens.size() != 1) {
        return ParseError(line.number, key, "rows follow on separate lines");
      }
      file.A.resize(m, n);
      s = ReadMatrixRows(p, line, key, &file.A);
    } else {
      // Vector fields on one line: f, b, l, u.
      if (!(s = need_n(line, key)).ok()) return s;
      Eigen::VectorXd* v = key == "f"   ? &file.f
                           : key == "b" ? &file.b
                           : key == "l" ? &file.l
                                        : &file.u;
      int len = n;
      if (key == "b") {
        if (!(s = need_m(line, key)).ok()) return s;
        len = m;
      }
      v->resize(len);
      s = ReadNumbers(line, 1, key, len, v->data());
    }
    if (!s.ok()) return s;
  }
  if (!ended) {
    return ParseError(p.last_line(), "end", "missing field");
  }
  if (!p.done()) {
    return ParseError(p.peek().number, "end", "content after 'end'");
  }
  for (const std::string& field : RequiredFields(file.kind)) {
    if (!seen.count(field)) {
      return ParseError(p.last_line(), field, "missing field");
    }
  }
  return file;
}

std::string WriteInstance(const InstanceFile& file) {
  std::string out;
  absl::StrAppend(&out, kMagic, " ", file.schema_version, "\n");
  absl::StrAppend(&out, "kind ", InstanceKindName(file.kind), "\n");
  if (!file.name.empty()) absl::StrAppend(&out, "name ", file.name, "\n");
  if (file.seed) absl::StrAppend(&out, "seed ", *file.seed, "\n");
  if (file.density) {
    absl::StrAppend(&out, "density ", FormatDouble(*file.density), "\n");
  }
  const Eigen::Index n = file.H.rows();
  absl::StrAppend(&out, "n ", n, "\n");
  if (file.kind == InstanceKind::kStandard) {
    absl::StrAppend(&out, "m ", file.A.rows(), "\n");
    if (file.obj_const != 0.0) {
      absl::StrAppend(&out, "obj_const ", FormatDouble(file.obj_const), "\n");
    }
  }
  if (file.sparse_h) {
    std::string entries;
    int count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        if (file.H(i, j) == 0.0) continue;
        ++count;
        absl::StrAppend(&entries, i, " ", j, " ", FormatDouble(file.H(i, j)),
                        "\n");
      }
    }
    absl::StrAppend(&out, "H sparse ", count, "\n", entries);
  } else {
    absl::StrAppend(&out, "H dense\n");
    AppendRows(&out, file.H);
  }
  AppendVector(&out, "f", file.f);
  switch (file.kind) {
    case InstanceKind::kSqp:
      break;
    case InstanceKind::kBoxQp:
      AppendVector(&out, "l", file.l);
      AppendVector(&out, "u", file.u);
      break;
    case InstanceKind::kStandard:
      absl::StrAppend(&out, "A\n");
      AppendRows(&out, file.A);
      AppendVector(&out, "b", file.b);
      break;
  }
  absl::StrAppend(&out, "end\n");
  return out;
}

absl::StatusOr<InstanceFile> ReadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kParse, absl::StrCat("cannot open ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<InstanceFile> file = ParseInstance(buffer.str());
  if (!file.ok()) {
    absl::Status status(file.status().code(),
                        absl::StrCat(path, ": ", file.status().message()));
    file.status().ForEachPayload(
        [&](absl::string_view url, const absl::Cord& payload) {
          status.SetPayload(url, payload);
        });
    return status;
  }
  return file;
}

absl::Status WriteInstanceFile(const std::string& path,
                               const InstanceFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorKind::kParse, absl::StrCat("cannot write ", path));
  }
  out << WriteInstance(file);
  if (!out) {
    return MakeError(ErrorKind::kParse, absl::StrCat("write failed: ", path));
  }
  return absl::OkStatus();
}

InstanceFile MakeSqpFile(const SqpSpec& spec, std::string name) {
  InstanceFile file;
  file.kind = InstanceKind::kSqp;
  file.name = std::move(name);
  file.H = spec.H;
  file.f = spec.f;
  return file;
}

InstanceFile MakeBoxQpFile(const BoxQpSpec& spec, std::string name) {
  InstanceFile file;
  file.kind = InstanceKind::kBoxQp;
  file.name = std::move(name);
  file.H = spec.H;
  file.f = spec.f;
  file.l = spec.l;
  file.u = spec.u;
  return file;
}

InstanceFile MakeStandardFile(const QpInstance& inst, std::string name) {
  InstanceFile file;
  file.kind = InstanceKind::kStandard;
  file.name = std::move(name);
  file.H = inst.H;
  file.f = inst.f;
  file.A = inst.A;
  file.b = inst.b;
  file.obj_const = inst.obj_const;
  return file;
}

Eigen::MatrixXd Graph::Adjacency() const {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(num_vertices, num_vertices);
  for (const auto& [a, b] : edges) {
    adj(a, b) = 1.0;
    adj(b, a) = 1.0;
  }
  return adj;
}

std::vector<int> Graph::Degrees() const {
  std::vector<int> deg(num_vertices, 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

Graph CycleGraph(int n) {
  Graph g{n, {}};
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  return g;
}

Graph CompleteGraph(int n) {
  Graph g{n, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  }
  return g;
}

Graph EmptyGraph(int n) { return Graph{n, {}}; }

SqpSpec MotzkinStrausSpec(const Graph& graph) {
  const int n = graph.num_vertices;
  SqpSpec spec;
  spec.H = 2.0 * (graph.Adjacency() + Eigen::MatrixXd::Identity(n, n));
  spec.f = Eigen::VectorXd::Zero(n);
  return spec;
}

Graph StableQpGraph(int k) {
  // (i,−1) -> i, (i,1) -> k+1+i, w_i -> 2(k+1)+i−1.
  const int side = k + 1;
  Graph g{3 * k + 2, {}};
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) {
      if (i == j && i >= 1) continue;
      g.edges.push_back({i, side + j});
    }
  }
  for (int i = 1; i <= k; ++i) {
    const int w = 2 * side + i - 1;
    g.edges.push_back({i, w});
    g.edges.push_back({w, side + i});
  }
  return g;
}

StableQp GenStableQp(int k) {
  StableQp out;
  out.graph = StableQpGraph(k);
  out.spec = MotzkinStrausSpec(out.graph);
  return out;
}

SqpSpec GenRandomSqp(int n, double density, std::uint64_t seed) {
  SqpSpec spec;
  GenerateObjective(n, density, seed, &spec.H, &spec.f);
  return spec;
}

BoxQpSpec GenRandomBoxQp(int n, double density, std::uint64_t seed) {
  BoxQpSpec spec;
  GenerateObjective(n, density, seed, &spec.H, &spec.f);
  spec.l = Eigen::VectorXd::Zero(n);
  spec.u = Eigen::VectorXd::Ones(n);
  return spec;
}

double OffDiagonalDensity(const Eigen::MatrixXd& H) {
  const Eigen::Index n = H.rows();
  if (n < 2) return 0.0;
  Eigen::Index nonzero = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = i + 1; k < n; ++k) {
      if (H(i, k) != 0.0) ++nonzero;
    }
  }
  return static_cast<double>(nonzero) / (n * (n - 1) / 2);
}

}  // namespace quadmilp
