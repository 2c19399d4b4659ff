// Copyright 2026 The kproj Authors
//
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

// The kproj command line: validate, coverage, generate.
//
// Exit codes: 0 success (generate: full coverage reached), 1 usage, parse or
// I/O error, 2 generation stopped by the budget before full coverage.

#ifndef KPROJ_TOOLS_CLI_HPP_
#define KPROJ_TOOLS_CLI_HPP_

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kproj/kproj.hpp"

namespace kproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBudgetExhausted = 2;

struct RunConfig {
  std::string model_path;
  std::string data_path;
  std::size_t k = 2;
  bool full = false;
  bool tables = false;
  std::optional<std::size_t> budget;
  std::string combine;
  std::string on_violation = "reject";
  std::uint64_t enum_limit = kDefaultEnumerationLimit;
  std::string out_path;
  std::string trace_out_path;
  std::string lp_out_path;
  bool json = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

inline void emit(const std::string& path, const std::string& content,
                 std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

inline CategorizationModel load_model(const RunConfig& cfg) {
  CategorizationModel model = [&] {
    try {
      return parse_model(read_file(cfg.model_path));
    } catch (const ParseError& e) {
      throw Error(cfg.model_path + ": " + e.what());
    }
  }();
  if (!cfg.combine.empty()) {
    auto op = parse_combine_op(cfg.combine);
    if (!op) throw Error("unknown combine operator '" + cfg.combine + "'");
    model = model.with_combine_op(*op);
  }
  return model;
}

inline DataSet load_data(const RunConfig& cfg, const CategorizationModel& model,
                         std::ostream& err) {
  if (cfg.data_path.empty()) return {};
  const ViolationPolicy policy = cfg.on_violation == "drop"
                                     ? ViolationPolicy::kDrop
                                     : ViolationPolicy::kReject;
  try {
    DataSetParseResult parsed =
        parse_dataset(read_file(cfg.data_path), model, policy);
    for (const std::string& w : parsed.warnings) {
      err << "warning: " << cfg.data_path << ": " << w << "\n";
    }
    if (parsed.dropped > 0) {
      err << "warning: " << cfg.data_path << ": accepted " << parsed.accepted
          << " rows, dropped " << parsed.dropped << "\n";
    }
    return std::move(parsed.data);
  } catch (const ParseError& e) {
    throw Error(cfg.data_path + ": " + e.what());
  }
}

}  // namespace detail

inline int cmd_validate(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  const CategorizationModel model = detail::load_model(cfg);
  const bool sat = satisfiable(model);
  if (cfg.json) {
    nlohmann::ordered_json j;
    j["categories"] = model.num_categories();
    j["domain_sizes"] = nlohmann::ordered_json::object();
    for (const Category& c : model.categories()) {
      j["domain_sizes"][c.name] = c.size();
    }
    j["clauses"] = model.constraints().size();
    j["combine"] = std::string(to_string(model.combine_op()));
    j["satisfiable"] = sat;
    detail::emit(cfg.out_path, j.dump(2) + "\n", out);
  } else {
    std::ostringstream s;
    s << "categories: " << model.num_categories() << "\n";
    for (const Category& c : model.categories()) {
      s << "  " << c.name << ": " << c.size() << " values\n";
    }
    s << "clauses: " << model.constraints().size() << "\n";
    s << "combine: " << to_string(model.combine_op()) << "\n";
    s << "satisfiable: " << (sat ? "true" : "false") << "\n";
    detail::emit(cfg.out_path, s.str(), out);
  }
  if (!sat) {
    err << "warning: constraint set unsatisfiable; all coverage vacuous\n";
  }
  return kExitOk;
}

inline int cmd_coverage(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  const CategorizationModel model = detail::load_model(cfg);
  const DataSet data = detail::load_data(cfg, model, err);
  CoverageOptions options;
  options.enumeration_limit = cfg.enum_limit;
  std::optional<ProjectionTables> tables;
  CoverageResult result;
  if (cfg.full) {
    result = full_coverage(model, data, options);
  } else {
    tables = build_tables(data, model, cfg.k);
    result = coverage_from_tables(model, *tables, options);
  }
  if (cfg.json) {
    nlohmann::ordered_json j = report_json(model, result);
    if (cfg.tables && tables) j["tables"] = tables_json(model, *tables);
    detail::emit(cfg.out_path, j.dump(2) + "\n", out);
  } else {
    std::string text = write_report(model, result);
    if (cfg.tables && tables) text += "\n" + write_tables(model, *tables);
    detail::emit(cfg.out_path, text, out);
  }
  return kExitOk;
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  const CategorizationModel model = detail::load_model(cfg);
  const DataSet data = detail::load_data(cfg, model, err);
  GenerationOptions options;
  options.budget = cfg.budget;
  options.one_projection_fast_path = true;
  options.coverage.enumeration_limit = cfg.enum_limit;
  if (!cfg.lp_out_path.empty()) {
    const ProjectionTables tables = build_tables(data, model, cfg.k);
    std::ostringstream lp;
    if (auto enc = encode_next_point(tables, model, options.coverage)) {
      write_lp(enc->problem, lp);
    } else {
      lp << "\\ coverage already full; no program\n";
    }
    detail::write_file(cfg.lp_out_path, lp.str());
  }
  const GenerationTrace trace = achieve_full_coverage(model, data, cfg.k, options);
  detail::emit(cfg.out_path, write_points(model, trace.points()), out);
  if (!cfg.trace_out_path.empty()) {
    detail::write_file(cfg.trace_out_path,
                       cfg.json ? trace_json(model, trace).dump(2) + "\n"
                                : write_trace(model, trace));
  }
  err << to_string(trace.reason) << ": " << trace.steps.size()
      << " points generated, coverage " << to_string(trace.final_ratio())
      << "\n";
  return trace.reason == TerminationReason::kFullCoverage
             ? kExitOk
             : kExitBudgetExhausted;
}

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"k-projection coverage and test point generation", "kproj"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model_path, "Model file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--combine", cfg.combine,
                    "Override the weight combine operator")
        ->check(CLI::IsMember({"sum", "product", "max"}));
    sub->add_option("--enum-limit", cfg.enum_limit,
                    "Largest space enumerated exactly")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "Output file (default stdout)");
    sub->add_flag("--json", cfg.json, "JSON output");
  };
  const auto add_data = [&](CLI::App* sub) {
    sub->add_option("--data", cfg.data_path, "Data set file (CSV)")
        ->check(CLI::ExistingFile);
    sub->add_option("--on-violation", cfg.on_violation,
                    "Rows violating the constraints: reject or drop")
        ->check(CLI::IsMember({"reject", "drop"}));
    sub->add_option("--k", cfg.k, "Projection size")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a model file");
  add_common(validate);

  CLI::App* coverage = app.add_subcommand("coverage", "Report coverage");
  add_common(coverage);
  add_data(coverage);
  CLI::Option* full = coverage->add_flag(
      "--full", cfg.full, "Full categorization coverage over all points");
  coverage->add_flag("--tables", cfg.tables, "Append per-plane tables")
      ->excludes(full);

  CLI::App* generate =
      app.add_subcommand("generate", "Generate points until full coverage");
  add_common(generate);
  add_data(generate);
  generate->add_option("--budget", cfg.budget, "Maximum points to generate")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--trace-out", cfg.trace_out_path,
                       "Trace file (CSV, or JSON with --json)");
  generate->add_option("--lp-out", cfg.lp_out_path,
                       "Dump the first next-point program in LP format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*validate) return cmd_validate(cfg, out, err);
    if (*coverage) return cmd_coverage(cfg, out, err);
    return cmd_generate(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace kproj::cli

#endif  // KPROJ_TOOLS_CLI_HPP_
