// SPDX-License-Identifier: Apache-2.0

#include "trapflow/trapflow.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct Common {
  std::string library = "none";
  std::string latencyConfig;
  std::vector<std::string> emit{"json", "dot", "svg", "lp"};
  std::uint64_t nodeBudget = 0;
  double timeBudget = 0;
  std::string out = "out";
};

struct NetlistDeleter {
  void operator()(tf_netlist* n) const { tf_netlist_free(n); }
};
struct ResultDeleter {
  void operator()(tf_result* r) const { tf_result_free(r); }
};
using NetlistPtr = std::unique_ptr<tf_netlist, NetlistDeleter>;
using ResultPtr = std::unique_ptr<tf_result, ResultDeleter>;

int report(tf_status status) {
  std::cerr << "error: " << tf_last_error() << '\n';
  return static_cast<int>(status);
}

void addCommon(CLI::App* cmd, Common& c, bool pipeline) {
  cmd->add_option("--library", c.library, "Toffoli expansion before scheduling")
      ->check(CLI::IsMember({"none", "cv", "ft"}));
  if (!pipeline) {
    return;
  }
  cmd->add_option("--latency-config", c.latencyConfig, "Latency model file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--emit", c.emit, "Artifact kinds: json, dot, svg, lp")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "dot", "svg", "lp"}));
  cmd->add_option("--node-budget", c.nodeBudget, "Branch-and-bound node limit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--time-budget", c.timeBudget, "Solver time limit in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "Output directory");
}

tf_library libraryOf(const std::string& name) {
  if (name == "cv") {
    return TF_LIBRARY_CV;
  }
  return name == "ft" ? TF_LIBRARY_FT : TF_LIBRARY_NONE;
}

unsigned emitMask(const std::vector<std::string>& kinds) {
  unsigned mask = 0;
  for (const auto& k : kinds) {
    mask |= k == "json" ? TF_EMIT_JSON : k == "dot" ? TF_EMIT_DOT : k == "svg" ? TF_EMIT_SVG : TF_EMIT_LP;
  }
  return mask;
}

int load(const std::string& path, NetlistPtr& out) {
  tf_netlist* raw = nullptr;
  const auto status = tf_netlist_load(path.c_str(), &raw);
  if (status != TF_OK) {
    return report(status);
  }
  out.reset(raw);
  return 0;
}

int runPipeline(const tf_netlist* netlist, const Common& c, tf_stage upTo) {
  tf_pipeline_options opts;
  tf_pipeline_options_init(&opts);
  opts.library = libraryOf(c.library);
  opts.up_to = upTo;
  if (c.nodeBudget > 0) {
    opts.node_budget = c.nodeBudget;
  }
  if (c.timeBudget > 0) {
    opts.time_budget_seconds = c.timeBudget;
  }
  if (!c.latencyConfig.empty()) {
    if (const auto s = tf_latency_model_load(c.latencyConfig.c_str(), &opts.model); s != TF_OK) {
      return report(s);
    }
  }
  tf_result* raw = nullptr;
  if (const auto s = tf_pipeline_run(netlist, &opts, &raw); s != TF_OK) {
    return report(s);
  }
  const ResultPtr result(raw);
  if (const auto s = tf_result_write(result.get(), c.out.c_str(), emitMask(c.emit)); s != TF_OK) {
    return report(s);
  }
  std::cout << "stages: " << tf_result_stage_count(result.get()) << '\n';
  std::cout << "lower bound: " << tf_result_lower_bound(result.get()) << '\n';
  if (upTo == TF_STAGE_LATENCY) {
    std::cout << "total latency: " << tf_result_total_latency(result.get()) << " us\n";
  }
  std::cout << "artifacts: " << c.out << '\n';
  return 0;
}

std::string slurp(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = static_cast<bool>(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ion-trap circuit compiler: schedule, lay out and time a gate netlist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tf_version()));

  Common common;
  std::string input;
  std::string scheduleFile;
  std::size_t catSize = 0;
  bool qasmOnly = false;

  auto* parse = app.add_subcommand("parse", "Print the netlist as JSON");
  parse->add_option("input", input, "QASM netlist")->required();
  addCommon(parse, common, false);

  auto* schedule = app.add_subcommand("schedule", "Schedule and write the stage table");
  auto* layout = app.add_subcommand("layout", "Run through the macroblock layout");
  auto* latency = app.add_subcommand("latency", "Run the full flow including timing");
  for (auto* cmd : {schedule, layout, latency}) {
    cmd->add_option("input", input, "QASM netlist")->required();
    addCommon(cmd, common, true);
  }

  auto* catGen = app.add_subcommand("cat-gen", "Generate a cat-state circuit and run the flow");
  catGen->add_option("n", catSize, "Number of chain qubits")->required()->check(CLI::Range(2, 1000));
  catGen->add_flag("--qasm-only", qasmOnly, "Print the netlist and stop");
  addCommon(catGen, common, true);

  auto* verify = app.add_subcommand("verify", "Check a schedule against a netlist");
  verify->add_option("netlist", input, "QASM netlist")->required();
  verify->add_option("schedule", scheduleFile, "Schedule JSON")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum stage count (small inputs)");
  oracle->add_option("netlist", input, "QASM netlist")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  NetlistPtr netlist;
  if (*catGen) {
    tf_netlist* raw = nullptr;
    if (const auto s = tf_netlist_cat(catSize, &raw); s != TF_OK) {
      return report(s);
    }
    netlist.reset(raw);
    char* qasm = nullptr;
    if (const auto s = tf_netlist_to_qasm(netlist.get(), &qasm); s != TF_OK) {
      return report(s);
    }
    std::cout << qasm;
    tf_string_free(qasm);
    if (qasmOnly) {
      return 0;
    }
    return runPipeline(netlist.get(), common, TF_STAGE_LATENCY);
  }

  if (const auto rc = load(input, netlist); rc != 0) {
    return rc;
  }

  if (*parse) {
    NetlistPtr expanded;
    tf_netlist* raw = nullptr;
    if (const auto s = tf_netlist_decompose(netlist.get(), libraryOf(common.library), &raw);
        s != TF_OK) {
      return report(s);
    }
    expanded.reset(raw);
    char* json = nullptr;
    if (const auto s = tf_netlist_to_json(expanded.get(), &json); s != TF_OK) {
      return report(s);
    }
    std::cout << json;
    tf_string_free(json);
    return 0;
  }
  if (*schedule) {
    return runPipeline(netlist.get(), common, TF_STAGE_SCHEDULE);
  }
  if (*layout) {
    return runPipeline(netlist.get(), common, TF_STAGE_LAYOUT);
  }
  if (*latency) {
    return runPipeline(netlist.get(), common, TF_STAGE_LATENCY);
  }
  if (*verify) {
    bool ok = false;
    const auto text = slurp(scheduleFile, ok);
    if (!ok) {
      std::cerr << "error: cannot read " << scheduleFile << '\n';
      return TF_ERR_IO;
    }
    std::size_t violations = 0;
    char* lines = nullptr;
    if (const auto s = tf_verify(netlist.get(), text.c_str(), &violations, &lines); s != TF_OK) {
      return report(s);
    }
    std::cout << (violations == 0 ? "OK" : "FAIL") << ", " << violations << " violations\n"
              << lines;
    tf_string_free(lines);
    return violations == 0 ? 0 : 1;
  }
  if (*oracle) {
    std::size_t stages = 0;
    if (const auto s = tf_oracle_min_stages(netlist.get(), &stages); s != TF_OK) {
      return report(s);
    }
    std::cout << stages << " stages\n";
    return 0;
  }
  return 1;
}
