// Copyright 2026 The dpdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line driver: workload construction, strategy selection, mechanism
// execution, record ingestion, and benchmark tables.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpdesign/analysis.h"
#include "dpdesign/baselines.h"
#include "dpdesign/domain.h"
#include "dpdesign/eigendesign.h"
#include "dpdesign/io.h"
#include "dpdesign/mechanism.h"
#include "dpdesign/reduction.h"
#include "dpdesign/spectral.h"

namespace dpdesign {
namespace {

constexpr const char* kToolVersion = "dpdesign 0.1.0";

namespace fs = std::filesystem;

struct CommonOpts {
  std::string out = ".";
  double eps = 1.0;
  double delta = 1e-6;
  std::uint64_t seed = 0;
};

std::string OutPath(const CommonOpts& opts, const std::string& name) {
  fs::create_directories(opts.out);
  return (fs::path(opts.out) / name).string();
}

Manifest BaseManifest(const std::string& command, const CommonOpts& opts) {
  Manifest m;
  m.Set("tool_version", std::string(kToolVersion));
  m.Set("command", command);
  m.Set("eps", opts.eps);
  m.Set("delta", opts.delta);
  m.Set("seed", static_cast<std::int64_t>(opts.seed));
  return m;
}

ReductionMode ParseReduction(const std::string& name) {
  if (name == "full") return ReductionMode::kFull;
  if (name == "sep") return ReductionMode::kSeparation;
  if (name == "principal") return ReductionMode::kPrincipal;
  throw ValidationError("unknown reduction mode '" + name + "'");
}

DomainShape ShapeForMatrix(const Matrix& w, const std::vector<int>& dims) {
  DomainShape shape = dims.empty()
                          ? DomainShape({static_cast<int>(w.cols())})
                          : DomainShape(dims);
  if (shape.cell_count() != w.cols())
    throw ValidationError("dims do not multiply to the workload column count");
  return shape;
}

Strategy SelectStrategy(const Matrix& w, const std::string& method,
                        const std::vector<int>& dims,
                        const ReductionConfig& reduction) {
  if (method == "eigen") return SelectEigenStrategy(w, reduction);
  if (method == "identity")
    return IdentityStrategy(static_cast<int>(w.cols()));
  if (method == "wavelet") return WaveletStrategy(ShapeForMatrix(w, dims));
  if (method == "hierarchy" || method == "hierarchical")
    return HierarchyStrategy(ShapeForMatrix(w, dims));
  throw ValidationError("unknown method '" + method + "'");
}

int CmdWorkload(const std::string& spec_path, const CommonOpts& opts) {
  DomainSpec spec = ReadDomainSpec(spec_path);
  Workload workload = BuildWorkloadFromSpec(spec);
  WriteMatrixCsv(OutPath(opts, "workload.csv"), workload.matrix);

  std::ostringstream rows;
  for (const std::string& d : workload.row_descriptions) rows << d << '\n';
  AtomicWriteFile(OutPath(opts, "rows.txt"), rows.str());

  Manifest m = BaseManifest("workload", opts);
  m.Set("spec", spec_path);
  m.Set("family", spec.family.family);
  m.Set("num_queries", static_cast<std::int64_t>(workload.num_queries()));
  m.Set("num_cells", static_cast<std::int64_t>(workload.num_cells()));
  m.Set("output", std::string("workload.csv"));
  m.WriteTo(OutPath(opts, "manifest.txt"));
  return 0;
}

int CmdSelect(const std::string& workload_path, const std::string& method,
              const std::vector<int>& dims, bool normalize,
              const std::string& reduction_name, int group_size,
              int principal_count, const CommonOpts& opts) {
  Matrix w = ReadMatrixCsv(workload_path);
  if (normalize) {
    Workload wl{w, ShapeForMatrix(w, dims), WorkloadFamily::kAdhoc, {}};
    w = NormalizeRows(wl).matrix;
  }
  ReductionConfig reduction;
  reduction.mode = ParseReduction(reduction_name);
  reduction.group_size = group_size;
  reduction.principal_count = principal_count;

  Strategy strategy = SelectStrategy(w, method, dims, reduction);
  PrivacyParams params(opts.eps, opts.delta);
  ErrorReport report = WorkloadError(w, strategy, params);

  WriteStrategyCsv(OutPath(opts, "strategy.csv"), strategy);
  AtomicWriteFile(OutPath(opts, "report.txt"), SerializeErrorReport(report));

  Manifest m = BaseManifest("select", opts);
  m.Set("workload", workload_path);
  m.Set("method", method);
  m.Set("reduction", reduction_name);
  m.Set("normalize", std::string(normalize ? "true" : "false"));
  m.Set("sensitivity", strategy.sensitivity);
  m.Set("workload_error", report.workload_error);
  m.Set("ratio_to_bound", report.ratio_to_bound);
  m.Set("output", std::string("strategy.csv"));
  m.WriteTo(OutPath(opts, "manifest.txt"));
  return 0;
}

int CmdRun(const std::string& workload_path, const std::string& strategy_path,
           const std::string& data_path, int trials, double sanity,
           const CommonOpts& opts) {
  Matrix w = ReadMatrixCsv(workload_path);
  Strategy strategy = ReadStrategyCsv(strategy_path);
  Vector x = ReadVectorCsv(data_path);
  PrivacyParams params(opts.eps, opts.delta);

  MechanismOutput output = MatrixMechanism(w, strategy, x, params, opts.seed);
  WriteVectorCsv(OutPath(opts, "answers.csv"), output.answers);

  ErrorReport analytic = WorkloadError(w, strategy, params);
  EmpiricalError empirical = MeasureEmpiricalError(w, strategy, x, params,
                                                   trials, opts.seed, sanity);

  std::ostringstream report;
  report << "trials=" << trials << '\n'
         << "analytic_error=" << FormatDouble(analytic.workload_error) << '\n'
         << "empirical_rmse=" << FormatDouble(empirical.workload_rmse) << '\n'
         << "empirical_to_analytic="
         << FormatDouble(empirical.workload_rmse / analytic.workload_error)
         << '\n'
         << "mean_relative_error=" << FormatDouble(empirical.mean_relative)
         << '\n';
  AtomicWriteFile(OutPath(opts, "empirical.txt"), report.str());

  Manifest m = BaseManifest("run", opts);
  m.Set("workload", workload_path);
  m.Set("strategy", strategy_path);
  m.Set("data", data_path);
  m.Set("trials", static_cast<std::int64_t>(trials));
  m.Set("sanity", sanity);
  m.Set("output", std::string("answers.csv"));
  m.WriteTo(OutPath(opts, "manifest.txt"));
  return 0;
}

int CmdIngest(const std::string& records_path, const std::string& spec_path,
              const CommonOpts& opts) {
  DomainSpec spec = ReadDomainSpec(spec_path);
  CellConditions conditions = spec.conditions();
  auto records = ReadRecordsCsv(records_path, spec.attributes);
  Vector x = BuildDataVector(records, conditions);
  WriteVectorCsv(OutPath(opts, "datavector.csv"), x);

  Manifest m = BaseManifest("ingest", opts);
  m.Set("records", records_path);
  m.Set("spec", spec_path);
  m.Set("num_records", static_cast<std::int64_t>(records.size()));
  m.Set("num_cells", static_cast<std::int64_t>(x.size()));
  m.Set("output", std::string("datavector.csv"));
  m.WriteTo(OutPath(opts, "manifest.txt"));
  return 0;
}

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string field;
  while (std::getline(is, field, ',')) out.push_back(field);
  return out;
}

int CmdBench(const std::string& family, const std::string& sizes_arg,
             const std::string& methods_arg, const std::string& workload_path,
             const std::string& reduction_name, const CommonOpts& opts) {
  PrivacyParams params(opts.eps, opts.delta);

  struct Case {
    std::string label;
    Matrix w;
    std::vector<int> dims;
  };
  std::vector<Case> cases;
  if (!workload_path.empty()) {
    Matrix w = ReadMatrixCsv(workload_path);
    cases.push_back({workload_path, std::move(w), {}});
  } else {
    for (const std::string& size : SplitComma(sizes_arg)) {
      int n = std::stoi(size);
      DomainShape shape({n});
      Workload wl = family == "cdf" ? CdfWorkload(shape)
                                    : AllRangeWorkload(shape);
      cases.push_back({family + " n=" + size, std::move(wl.matrix), {n}});
    }
  }

  ReductionConfig reduction;
  reduction.mode = ParseReduction(reduction_name);

  std::ostringstream table;
  table << "workload,n,method," << ErrorReportCsvHeader()
        << ",wall_ms,status\n";
  for (const Case& c : cases) {
    for (const std::string& method : SplitComma(methods_arg)) {
      table << c.label << ',' << c.w.cols() << ',' << method << ',';
      try {
        auto start = std::chrono::steady_clock::now();
        Strategy strategy = SelectStrategy(c.w, method, c.dims, reduction);
        double wall_ms =
            std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start)
                .count();
        ErrorReport report = WorkloadError(c.w, strategy, params);
        table << ErrorReportCsvRow(report) << ',' << FormatDouble(wall_ms)
              << ",ok\n";
      } catch (const std::exception& e) {
        table << ",,,,,,," << ',' << "error: " << e.what() << '\n';
      }
    }
  }
  AtomicWriteFile(OutPath(opts, "bench.csv"), table.str());

  Manifest m = BaseManifest("bench", opts);
  m.Set("family", family.empty() ? std::string("-") : family);
  m.Set("sizes", sizes_arg.empty() ? std::string("-") : sizes_arg);
  m.Set("methods", methods_arg);
  m.Set("reduction", reduction_name);
  m.Set("output", std::string("bench.csv"));
  m.WriteTo(OutPath(opts, "manifest.txt"));
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Workload-adaptive differentially private linear queries"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommonOpts opts;
  std::string spec_path, workload_path, strategy_path, data_path, records_path;
  std::string method = "eigen", reduction = "full";
  std::vector<int> dims;
  int trials = 1000, group_size = 0, principal_count = 0;
  bool normalize = false;
  double sanity = 1.0;
  std::string family = "all-range", sizes = "16", methods = "eigen";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--eps", opts.eps, "Privacy parameter epsilon");
    cmd->add_option("--delta", opts.delta, "Privacy parameter delta");
    cmd->add_option("--seed", opts.seed, "Base RNG seed");
  };

  CLI::App* cmd_workload =
      app.add_subcommand("workload", "Build a workload from a domain spec");
  cmd_workload->add_option("--spec", spec_path, "Domain spec file")
      ->required();
  add_common(cmd_workload);

  CLI::App* cmd_select =
      app.add_subcommand("select", "Select a strategy for a workload");
  cmd_select->add_option("--workload", workload_path, "Workload CSV")
      ->required();
  cmd_select->add_option("--method", method,
                         "eigen | identity | wavelet | hierarchy");
  cmd_select->add_option("--dims", dims, "Domain dimensions (default 1-D)");
  cmd_select->add_option("--reduction", reduction, "full | sep | principal");
  cmd_select->add_option("--group-size", group_size,
                         "Eigen-query group size for --reduction sep");
  cmd_select->add_option("--principal-count", principal_count,
                         "Individually weighted eigen-queries for "
                         "--reduction principal");
  cmd_select->add_flag("--normalize", normalize,
                       "Scale workload rows to unit L2 norm first");
  add_common(cmd_select);

  CLI::App* cmd_run =
      app.add_subcommand("run", "Run the mechanism on a data vector");
  cmd_run->add_option("--workload", workload_path, "Workload CSV")->required();
  cmd_run->add_option("--strategy", strategy_path, "Strategy CSV")->required();
  cmd_run->add_option("--data", data_path, "Data vector CSV")->required();
  cmd_run->add_option("--trials", trials, "Monte-Carlo trials");
  cmd_run->add_option("--sanity", sanity,
                      "Relative-error denominator floor");
  add_common(cmd_run);

  CLI::App* cmd_ingest =
      app.add_subcommand("ingest", "Count records into a data vector");
  cmd_ingest->add_option("--records", records_path, "Records CSV")->required();
  cmd_ingest->add_option("--spec", spec_path, "Domain spec file")->required();
  add_common(cmd_ingest);

  CLI::App* cmd_bench =
      app.add_subcommand("bench", "Emit a method-comparison table");
  cmd_bench->add_option("--family", family, "all-range | cdf");
  cmd_bench->add_option("--sizes", sizes, "Comma-separated domain sizes");
  cmd_bench->add_option("--methods", methods, "Comma-separated methods");
  cmd_bench->add_option("--workload", workload_path,
                        "Fixed workload CSV instead of a family");
  cmd_bench->add_option("--reduction", reduction, "full | sep | principal");
  add_common(cmd_bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_workload->parsed()) return CmdWorkload(spec_path, opts);
  if (cmd_select->parsed())
    return CmdSelect(workload_path, method, dims, normalize, reduction,
                     group_size, principal_count, opts);
  if (cmd_run->parsed())
    return CmdRun(workload_path, strategy_path, data_path, trials, sanity,
                  opts);
  if (cmd_ingest->parsed()) return CmdIngest(records_path, spec_path, opts);
  if (cmd_bench->parsed())
    return CmdBench(workload_path.empty() ? family : "", sizes, methods,
                    workload_path, reduction, opts);
  return 2;
}

}  // namespace
}  // namespace dpdesign

int main(int argc, char** argv) {
  try {
    return dpdesign::Main(argc, argv);
  } catch (const dpdesign::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const dpdesign::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
