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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "quadmilp/bnb.h"
#include "quadmilp/bounds.h"
#include "quadmilp/errors.h"
#include "quadmilp/instances.h"
#include "quadmilp/milp.h"
#include "quadmilp/pipeline.h"
#include "quadmilp/verify.h"
#include "spdlog/sinks/ostream_sink.h"
#include "spdlog/spdlog.h"

namespace quadmilp::cli {
namespace {

using json = nlohmann::ordered_json;

std::shared_ptr<spdlog::logger> MakeLogger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("quadmilp", sink);
  logger->set_pattern("[%H:%M:%S.%e] [%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("QUADMILP_LOG"); env != nullptr) {
    level = spdlog::level::from_str(env);
  }
  logger->set_level(level);
  return logger;
}

std::string Describe(const absl::Status& status) {
  const std::optional<ErrorKind> kind = GetErrorKind(status);
  const std::string detail(status.message());
  if (!kind) return absl::StrCat("error: ", detail);
  switch (*kind) {
    case ErrorKind::kNoDualBoundAvailable:
      return absl::StrCat("error: no valid dual bound available (", detail,
                          ")");
    case ErrorKind::kNoInteriorPoint:
      return absl::StrCat("error: no interior point for the dual bound LP (",
                          detail, ")");
    case ErrorKind::kInfeasibleInstance:
      return absl::StrCat("error: instance is infeasible (", detail, ")");
    case ErrorKind::kUnboundedFeasibleSet:
      return absl::StrCat("error: feasible set is unbounded (", detail, ")");
    case ErrorKind::kParse:
      return absl::StrCat("error: malformed instance file (", detail, ")");
    default:
      return absl::StrCat("error: ", detail);
  }
}

absl::StatusOr<Problem> LoadProblem(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec) ||
      !std::ifstream(path).good()) {
    return absl::NotFoundError(
        absl::StrCat("cannot read instance file '", path, "'"));
  }
  absl::StatusOr<InstanceFile> file = ReadInstanceFile(path);
  if (!file.ok()) return file.status();
  if (file->name.empty()) {
    file->name = std::filesystem::path(path).stem().string();
  }
  return ToProblem(*file);
}

json Array(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json Number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json BoundsJson(const Bounds& b) {
  json out;
  out["method"] = BoundMethodName(b.method);
  out["U"] = Array(b.U);
  out["V"] = Array(b.V);
  out["u_inf"] = b.u_inf;
  out["hoffman"] = b.hoffman ? json(*b.hoffman) : json(nullptr);
  out["big_m"] = b.big_m ? json(*b.big_m) : json(nullptr);
  return out;
}

json KktJson(const std::optional<KktReport>& k) {
  if (!k) return nullptr;
  json out;
  out["stationarity_inf"] = k->stationarity_inf;
  out["complementarity"] = k->complementarity;
  out["feasibility_inf"] = k->feasibility_inf;
  out["min_x"] = k->min_x;
  out["min_lambda"] = k->min_lambda;
  out["is_kkt"] = k->is_kkt;
  return out;
}

std::string FormatVector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    absl::StrAppendFormat(&out, "%s%.10g", i == 0 ? "" : ", ", v(i));
  }
  return out + "]";
}

void PrintBoundsHuman(const Bounds& b, std::ostream& out) {
  out << absl::StrFormat("bounds method   %s\n", BoundMethodName(b.method));
  out << absl::StrFormat("U               %s\n", FormatVector(b.U));
  out << absl::StrFormat("V               %s\n", FormatVector(b.V));
  if (b.hoffman) out << absl::StrFormat("hoffman         %.10g\n", *b.hoffman);
  if (b.big_m) out << absl::StrFormat("big M           %.10g\n", *b.big_m);
}

absl::Status WriteText(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return absl::PermissionDeniedError("cannot write " + path);
  file << text;
  return file ? absl::OkStatus()
              : absl::DataLossError("write failed: " + path);
}

// Writes to config.output when set, else to `out`.
int Emit(const CliConfig& config, const std::string& text, std::ostream& out,
         std::ostream& err) {
  if (config.output.empty()) {
    out << text;
    return kExitOptimal;
  }
  if (absl::Status s = WriteText(config.output, text); !s.ok()) {
    err << "error: " << s.message() << "\n";
    return kExitError;
  }
  return kExitOptimal;
}

int RequireOneInput(const CliConfig& config, std::ostream& err) {
  if (config.inputs.size() != 1) {
    err << "error: expected exactly one instance path\n";
    return kExitError;
  }
  return kExitOptimal;
}

SolveParams ParamsFrom(const CliConfig& config) {
  SolveParams params;
  params.time_limit_s = config.time_limit_s;
  params.gap_tol = config.gap_tol;
  params.node_limit = config.node_limit;
  return params;
}

}  // namespace

int CmdSolve(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (RequireOneInput(config, err) != kExitOptimal) return kExitError;
  auto logger = MakeLogger(err);
  const std::string& path = config.inputs.front();

  absl::StatusOr<Problem> problem = LoadProblem(path);
  if (!problem.ok()) {
    err << Describe(problem.status()) << "\n";
    return kExitError;
  }
  logger->info("loaded {} (n={}, m={})", problem->name,
               problem->form.instance.n, problem->form.instance.m);
  absl::StatusOr<BuiltModel> built = BuildModel(*problem);
  if (!built.ok()) {
    err << Describe(built.status()) << "\n";
    return kExitError;
  }
  logger->info("bounds via {}", BoundMethodName(built->bounds.method));
  if (!config.export_mps.empty()) {
    if (absl::Status s = WriteText(config.export_mps, ExportMps(built->model));
        !s.ok()) {
      err << "error: " << s.message() << "\n";
      return kExitError;
    }
  }

  json doc;
  doc["instance"] = problem->name;
  if (config.bounds_only) {
    doc["bounds"] = BoundsJson(built->bounds);
    if (config.format == OutputFormat::kJson) {
      return Emit(config, doc.dump(2) + "\n", out, err);
    }
    std::ostringstream text;
    text << "instance        " << problem->name << "\n";
    PrintBoundsHuman(built->bounds, text);
    return Emit(config, text.str(), out, err);
  }

  absl::StatusOr<SolveReport> report =
      SolveMilp(built->model, ParamsFrom(config), [&](const TracePoint& p) {
        logger->debug("nodes {} bound {:.10g} incumbent {:.10g}", p.nodes,
                      p.best_bound, p.incumbent);
      });
  if (!report.ok()) {
    err << Describe(report.status()) << "\n";
    return kExitError;
  }
  if (report->status == SolveStatus::kInfeasible) {
    err << "error: instance is infeasible (no complementary point)\n";
    return kExitError;
  }

  doc["status"] = SolveStatusName(report->status);
  doc["objective"] = report->has_incumbent ? Number(report->obj_quadratic)
                                           : json(nullptr);
  doc["obj_linearized"] = report->has_incumbent
                              ? Number(report->obj_linearized)
                              : json(nullptr);
  doc["best_bound"] = Number(report->best_bound);
  doc["gap"] = Number(report->gap);
  doc["nodes"] = report->nodes_explored;
  doc["lp_pivots"] = report->lp_pivots;
  doc["elapsed_s"] = report->elapsed_s;
  doc["x"] = report->has_incumbent ? Array(report->x) : json(nullptr);
  doc["kkt"] = KktJson(report->kkt);
  doc["bounds"] = BoundsJson(built->bounds);

  const int code = report->status == SolveStatus::kOptimal ? kExitOptimal
                                                           : kExitLimit;
  if (config.format == OutputFormat::kJson) {
    const int emitted = Emit(config, doc.dump(2) + "\n", out, err);
    return emitted == kExitOptimal ? code : emitted;
  }
  std::ostringstream text;
  text << absl::StrFormat("instance        %s\n", problem->name);
  text << absl::StrFormat("status          %s\n",
                          SolveStatusName(report->status));
  if (report->has_incumbent) {
    text << absl::StrFormat("objective       %.12g\n", report->obj_quadratic);
    text << absl::StrFormat("linearized      %.12g\n", report->obj_linearized);
    text << absl::StrFormat("x               %s\n", FormatVector(report->x));
  }
  text << absl::StrFormat("best bound      %.12g\n", report->best_bound);
  text << absl::StrFormat("gap             %.3g\n", report->gap);
  text << absl::StrFormat("nodes           %d\n", report->nodes_explored);
  text << absl::StrFormat("time            %.3fs\n", report->elapsed_s);
  if (report->kkt) {
    text << absl::StrFormat(
        "kkt             stat %.2e  compl %.2e  feas %.2e  %s\n",
        report->kkt->stationarity_inf, report->kkt->complementarity,
        report->kkt->feasibility_inf, report->kkt->is_kkt ? "ok" : "FAILED");
  }
  PrintBoundsHuman(built->bounds, text);
  const int emitted = Emit(config, text.str(), out, err);
  return emitted == kExitOptimal ? code : emitted;
}

int CmdBounds(const CliConfig& config, std::ostream& out, std::ostream& err) {
  CliConfig bounds_config = config;
  bounds_config.bounds_only = true;
  return CmdSolve(bounds_config, out, err);
}

int CmdVerify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (RequireOneInput(config, err) != kExitOptimal) return kExitError;
  absl::StatusOr<Problem> problem = LoadProblem(config.inputs.front());
  if (!problem.ok()) {
    err << Describe(problem.status()) << "\n";
    return kExitError;
  }
  absl::StatusOr<OracleResult> oracle = OracleQp(problem->form.instance);
  if (!oracle.ok()) {
    err << Describe(oracle.status()) << "\n";
    return kExitError;
  }
  double min_sum = kInf;
  for (const KktPoint& p : oracle->optimal) {
    min_sum = std::min(min_sum, p.lambda.sum());
  }
  const Eigen::VectorXd argmin = problem->form.map.Recover(oracle->argmin);
  if (config.format == OutputFormat::kJson) {
    json doc;
    doc["instance"] = problem->name;
    doc["value"] = oracle->value;
    doc["argmin"] = Array(argmin);
    doc["kkt_candidates"] = oracle->accepted;
    doc["optimal_candidates"] = oracle->optimal.size();
    doc["min_lambda_sum"] = Number(min_sum);
    return Emit(config, doc.dump(2) + "\n", out, err);
  }
  std::ostringstream text;
  text << absl::StrFormat("instance        %s\n", problem->name);
  text << absl::StrFormat("oracle value    %.12g\n", oracle->value);
  text << absl::StrFormat("argmin          %s\n", FormatVector(argmin));
  text << absl::StrFormat("candidates      %d accepted, %d optimal\n",
                          oracle->accepted, oracle->optimal.size());
  text << absl::StrFormat("min sum lambda  %.10g\n", min_sum);
  return Emit(config, text.str(), out, err);
}

int CmdGen(const CliConfig& config, std::ostream& out, std::ostream& err) {
  InstanceFile file;
  if (config.family == "stableqp") {
    if (config.k < 1) {
      err << "error: --k must be at least 1\n";
      return kExitError;
    }
    file = MakeSqpFile(GenStableQp(config.k).spec,
                       config.name.empty()
                           ? absl::StrCat("stableqp_k", config.k)
                           : config.name);
    file.sparse_h = true;
  } else if (config.family == "sqp" || config.family == "boxqp") {
    if (config.n < 2 || !(config.density > 0.0 && config.density <= 1.0)) {
      err << "error: need --n >= 2 and --density in (0, 1]\n";
      return kExitError;
    }
    const std::string name =
        config.name.empty()
            ? absl::StrCat(config.family, "_n", config.n, "_s", config.seed)
            : config.name;
    file = config.family == "sqp"
               ? MakeSqpFile(GenRandomSqp(config.n, config.density,
                                          config.seed),
                             name)
               : MakeBoxQpFile(GenRandomBoxQp(config.n, config.density,
                                              config.seed),
                               name);
    file.seed = config.seed;
    file.density = config.density;
  } else {
    err << "error: unknown family '" << config.family << "'\n";
    return kExitError;
  }
  return Emit(config, WriteInstance(file), out, err);
}

int CmdExport(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (RequireOneInput(config, err) != kExitOptimal) return kExitError;
  absl::StatusOr<Problem> problem = LoadProblem(config.inputs.front());
  if (!problem.ok()) {
    err << Describe(problem.status()) << "\n";
    return kExitError;
  }
  absl::StatusOr<BuiltModel> built = BuildModel(*problem);
  if (!built.ok()) {
    err << Describe(built.status()) << "\n";
    return kExitError;
  }
  return Emit(config, ExportMps(built->model), out, err);
}

int CmdBench(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (RequireOneInput(config, err) != kExitOptimal) return kExitError;
  std::error_code ec;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry :
       std::filesystem::directory_iterator(config.inputs.front(), ec)) {
    if (entry.is_regular_file()) paths.push_back(entry.path());
  }
  if (ec) {
    err << "error: cannot list directory '" << config.inputs.front()
        << "'\n";
    return kExitError;
  }
  std::sort(paths.begin(), paths.end());
  auto logger = MakeLogger(err);

  std::string text;
  int code = kExitOptimal;
  for (const auto& path : paths) {
    json record;
    record["instance"] = path.filename().string();
    absl::StatusOr<Problem> problem = LoadProblem(path.string());
    absl::StatusOr<PipelineResult> result =
        problem.ok() ? SolveProblem(*problem, ParamsFrom(config))
                     : absl::StatusOr<PipelineResult>(problem.status());
    if (!result.ok()) {
      record["status"] = "Error";
      record["value"] = nullptr;
      record["nodes"] = nullptr;
      record["elapsed_s"] = nullptr;
      record["error"] = Describe(result.status());
      code = kExitError;
    } else {
      const SolveReport& r = result->report;
      record["status"] = SolveStatusName(r.status);
      record["value"] =
          r.has_incumbent ? Number(r.obj_quadratic) : json(nullptr);
      record["nodes"] = r.nodes_explored;
      record["elapsed_s"] = r.elapsed_s;
      record["error"] = nullptr;
      if (r.status != SolveStatus::kOptimal && code == kExitOptimal) {
        code = kExitLimit;
      }
    }
    logger->info("{}: {}", path.filename().string(),
                 record["status"].get<std::string>());
    if (config.format == OutputFormat::kJson) {
      text += record.dump() + "\n";
    } else {
      text += absl::StrFormat(
          "%-28s %-10s %18s %8s %10s\n", path.filename().string(),
          record["status"].get<std::string>(),
          record["value"].is_null()
              ? "-"
              : absl::StrFormat("%.10g", record["value"].get<double>()),
          record["nodes"].is_null() ? "-" : record["nodes"].dump(),
          record["elapsed_s"].is_null()
              ? "-"
              : absl::StrFormat("%.3fs", record["elapsed_s"].get<double>()));
    }
  }
  const int emitted = Emit(config, text, out, err);
  return emitted == kExitOptimal ? code : emitted;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Global solver for nonconvex quadratic programs via a "
               "complementarity MILP"};
  app.name("quadmilp");
  app.require_subcommand(1);
  CliConfig config;

  const std::map<std::string, OutputFormat> formats{
      {"human", OutputFormat::kHuman}, {"json", OutputFormat::kJson}};
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", config.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    cmd->add_option("-o,--output", config.output,
                    "Write output to this file instead of stdout");
  };
  auto add_solve_flags = [&](CLI::App* cmd) {
    cmd->add_option("--time-limit", config.time_limit_s,
                    "Time limit in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gap-tol", config.gap_tol, "Relative gap tolerance")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--node-limit", config.node_limit,
                    "Maximum number of branch-and-bound nodes")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", config.inputs, "Instance file")->required();
  add_solve_flags(solve);
  add_format(solve);
  solve->add_option("--export-mps", config.export_mps,
                    "Also write the MILP in MPS format to this path");
  solve->add_flag("--bounds-only", config.bounds_only,
                  "Compute bounds and stop");
  solve->add_option("--seed", config.seed, "Unused by solve; accepted for "
                                           "uniform invocation");

  CLI::App* bounds = app.add_subcommand("bounds", "Print U, V and big-M");
  bounds->add_option("instance", config.inputs, "Instance file")->required();
  add_format(bounds);

  CLI::App* verify =
      app.add_subcommand("verify", "Solve by support enumeration (small n)");
  verify->add_option("instance", config.inputs, "Instance file")->required();
  add_format(verify);

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("family", config.family, "stableqp, sqp or boxqp")
      ->required()
      ->check(CLI::IsMember({"stableqp", "sqp", "boxqp"}));
  gen->add_option("--k", config.k, "StableQP graph parameter");
  gen->add_option("--n", config.n, "Number of variables");
  gen->add_option("--density", config.density, "Off-diagonal density of H");
  gen->add_option("--seed", config.seed, "Generator seed");
  gen->add_option("--name", config.name, "Instance name");
  gen->add_option("-o,--output", config.output, "Output file");

  CLI::App* exp = app.add_subcommand("export", "Write the MILP as MPS");
  exp->add_option("instance", config.inputs, "Instance file")->required();
  exp->add_option("-o,--output", config.output, "Output file");

  CLI::App* bench =
      app.add_subcommand("bench", "Solve every instance in a directory");
  bench->add_option("directory", config.inputs, "Instance directory")
      ->required();
  add_solve_flags(bench);
  add_format(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOptimal : kExitError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  config.subcommand = chosen->get_name();
  if (chosen == solve) return CmdSolve(config, out, err);
  if (chosen == bounds) return CmdBounds(config, out, err);
  if (chosen == verify) return CmdVerify(config, out, err);
  if (chosen == gen) return CmdGen(config, out, err);
  if (chosen == exp) return CmdExport(config, out, err);
  return CmdBench(config, out, err);
}

}  // namespace quadmilp::cli
