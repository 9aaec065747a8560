// SPDX-License-Identifier: Apache-2.0

#include "trapflow/trapflow.h"

#include "trapflow/Pipeline.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

struct tf_netlist {
  trapflow::Netlist value;
};

struct tf_result {
  trapflow::PipelineResult value;
  tf_stage reached = TF_STAGE_SCHEDULE;
};

namespace {

thread_local std::string lastError;

tf_status fail(tf_status status, const std::string& message) {
  lastError = message;
  return status;
}

/// Maps exceptions from the core onto status codes.
template <typename F>
tf_status guarded(F&& body) {
  try {
    lastError.clear();
    return body();
  } catch (const trapflow::ParseError& e) {
    return fail(TF_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(TF_ERR_PARSE, e.what());
  } catch (const trapflow::SchedulingError& e) {
    return fail(TF_ERR_SCHEDULE, e.what());
  } catch (const trapflow::InvalidSchedule& e) {
    return fail(TF_ERR_SCHEDULE, e.what());
  } catch (const trapflow::InfeasibleHorizon& e) {
    return fail(TF_ERR_SCHEDULE, e.what());
  } catch (const trapflow::DrawingError& e) {
    return fail(TF_ERR_LAYOUT, e.what());
  } catch (const trapflow::LayoutError& e) {
    return fail(TF_ERR_LAYOUT, e.what());
  } catch (const trapflow::LatencyError& e) {
    return fail(TF_ERR_LAYOUT, e.what());
  } catch (const trapflow::ConfigError& e) {
    return fail(TF_ERR_PARSE, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(TF_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TF_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(TF_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(TF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TF_ERR_INTERNAL, "unknown error");
  }
}

char* copyString(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string readFile(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::filesystem::filesystem_error("cannot read input", path,
                                            std::make_error_code(std::errc::io_error));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

trapflow::LatencyModel toModel(const tf_latency_model& m) {
  trapflow::LatencyModel model;
  model.oneQubitGate = m.one_qubit_gate;
  model.twoQubitGate = m.two_qubit_gate;
  model.measurement = m.measurement;
  model.zeroPrepare = m.zero_prepare;
  model.straightMove = m.straight_move;
  model.turn = m.turn;
  for (const double v : {m.one_qubit_gate, m.two_qubit_gate, m.measurement, m.zero_prepare,
                         m.straight_move, m.turn}) {
    if (!(v > 0)) {
      throw std::invalid_argument("latency model values must be positive");
    }
  }
  return model;
}

tf_latency_model fromModel(const trapflow::LatencyModel& m) {
  return {m.oneQubitGate, m.twoQubitGate, m.measurement, m.zeroPrepare, m.straightMove, m.turn};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string layoutJson(const trapflow::PipelineResult& r) {
  auto j = r.tiled.layout.toJson();
  j["scale"] = r.tiled.scale;
  j["placement"] = trapflow::placementToJson(r.placement.placement);
  j["routes"] = trapflow::routesToJson(r.plan);
  nlohmann::json movers = nlohmann::json::array();
  for (const auto& [id, qs] : r.plan.movers) {
    movers.push_back({{"instruction", id}, {"qubits", qs}});
  }
  j["movers"] = std::move(movers);
  return dump(j);
}

std::string scheduleJson(const trapflow::PipelineResult& r) {
  auto j = r.outcome.schedule.toJson();
  j["stage_count"] = r.outcome.schedule.stageCount();
  j["lower_bound"] = r.outcome.lowerBound;
  j["horizons_tried"] = r.outcome.horizonsTried;
  j["nodes_explored"] = r.outcome.nodesExplored;
  return dump(j);
}

tf_stage requiredStage(tf_artifact kind) {
  switch (kind) {
  case TF_ARTIFACT_QFG_JSON:
  case TF_ARTIFACT_QFG_DOT:
  case TF_ARTIFACT_DRAWING_JSON:
  case TF_ARTIFACT_DRAWING_SVG:
  case TF_ARTIFACT_LAYOUT_JSON:
  case TF_ARTIFACT_LAYOUT_SVG:
  case TF_ARTIFACT_LAYOUT_TXT:
    return TF_STAGE_LAYOUT;
  case TF_ARTIFACT_LATENCY_JSON:
    return TF_STAGE_LATENCY;
  default:
    return TF_STAGE_SCHEDULE;
  }
}

std::string render(const tf_result& res, tf_artifact kind) {
  const auto& r = res.value;
  switch (kind) {
  case TF_ARTIFACT_NETLIST_JSON:
    return dump(trapflow::toJson(r.netlist));
  case TF_ARTIFACT_DATAFLOW_JSON:
    return dump(r.dataflow.toJson());
  case TF_ARTIFACT_DATAFLOW_DOT:
    return r.dataflow.toDot();
  case TF_ARTIFACT_SCHEDULE_JSON:
    return scheduleJson(r);
  case TF_ARTIFACT_SCHEDULE_LP:
    return r.ilp().toLpText();
  case TF_ARTIFACT_QFG_JSON:
    return dump(r.qfg.toJson());
  case TF_ARTIFACT_QFG_DOT:
    return r.qfg.toDot();
  case TF_ARTIFACT_DRAWING_JSON:
    return dump(r.drawing.toJson());
  case TF_ARTIFACT_DRAWING_SVG:
    return r.drawing.toSvg();
  case TF_ARTIFACT_LAYOUT_JSON:
    return layoutJson(r);
  case TF_ARTIFACT_LAYOUT_SVG:
    return r.tiled.layout.toSvg();
  case TF_ARTIFACT_LAYOUT_TXT:
    return r.tiled.layout.toText();
  case TF_ARTIFACT_LATENCY_JSON:
    return dump(r.latency.toJson());
  }
  throw std::invalid_argument("unknown artifact kind");
}

struct FileSpec {
  tf_artifact kind;
  unsigned emit;
  const char* name;
};

constexpr FileSpec kFiles[] = {
    {TF_ARTIFACT_NETLIST_JSON, TF_EMIT_JSON, "netlist.json"},
    {TF_ARTIFACT_DATAFLOW_JSON, TF_EMIT_JSON, "dataflow.json"},
    {TF_ARTIFACT_DATAFLOW_DOT, TF_EMIT_DOT, "dataflow.dot"},
    {TF_ARTIFACT_SCHEDULE_JSON, TF_EMIT_JSON, "schedule.json"},
    {TF_ARTIFACT_SCHEDULE_LP, TF_EMIT_LP, "schedule.lp"},
    {TF_ARTIFACT_QFG_JSON, TF_EMIT_JSON, "qfg.json"},
    {TF_ARTIFACT_QFG_DOT, TF_EMIT_DOT, "qfg.dot"},
    {TF_ARTIFACT_DRAWING_JSON, TF_EMIT_JSON, "drawing.json"},
    {TF_ARTIFACT_DRAWING_SVG, TF_EMIT_SVG, "drawing.svg"},
    {TF_ARTIFACT_LAYOUT_JSON, TF_EMIT_JSON, "layout.json"},
    {TF_ARTIFACT_LAYOUT_SVG, TF_EMIT_SVG, "layout.svg"},
    {TF_ARTIFACT_LAYOUT_TXT, TF_EMIT_SVG, "layout.txt"},
    {TF_ARTIFACT_LATENCY_JSON, TF_EMIT_JSON, "latency.json"},
};

} // namespace

extern "C" {

const char* tf_last_error(void) { return lastError.c_str(); }

const char* tf_version(void) { return "0.1.0"; }

void tf_string_free(char* s) { std::free(s); }

tf_status tf_netlist_parse(const char* text, tf_netlist** out) {
  return guarded([&] {
    if (text == nullptr || out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    auto n = trapflow::parseQasm(text);
    if (n.empty()) {
      return fail(TF_ERR_PARSE, "netlist has no instructions");
    }
    *out = new tf_netlist{std::move(n)};
    return TF_OK;
  });
}

tf_status tf_netlist_load(const char* path, tf_netlist** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    std::string text;
    try {
      text = readFile(path);
    } catch (const std::filesystem::filesystem_error&) {
      return fail(TF_ERR_IO, std::string("cannot read ") + path);
    }
    const auto status = tf_netlist_parse(text.c_str(), out);
    if (status != TF_OK) {
      lastError = std::string(path) + ": " + lastError;
    }
    return status;
  });
}

tf_status tf_netlist_cat(size_t n, tf_netlist** out) {
  return guarded([&] {
    if (out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    *out = new tf_netlist{trapflow::generateCatCircuit(n)};
    return TF_OK;
  });
}

tf_status tf_netlist_decompose(const tf_netlist* netlist, tf_library library, tf_netlist** out) {
  return guarded([&] {
    if (netlist == nullptr || out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    if (library == TF_LIBRARY_NONE) {
      *out = new tf_netlist{netlist->value};
      return TF_OK;
    }
    const auto lib = library == TF_LIBRARY_CV ? trapflow::GateLibrary::CV
                                              : trapflow::GateLibrary::FT;
    *out = new tf_netlist{trapflow::decompose(netlist->value, lib)};
    return TF_OK;
  });
}

size_t tf_netlist_size(const tf_netlist* netlist) {
  return netlist == nullptr ? 0 : netlist->value.size();
}

size_t tf_netlist_qubit_count(const tf_netlist* netlist) {
  return netlist == nullptr ? 0 : netlist->value.qubitCount();
}

tf_status tf_netlist_to_json(const tf_netlist* netlist, char** out) {
  return guarded([&] {
    if (netlist == nullptr || out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    *out = copyString(dump(trapflow::toJson(netlist->value)));
    return TF_OK;
  });
}

tf_status tf_netlist_to_qasm(const tf_netlist* netlist, char** out) {
  return guarded([&] {
    if (netlist == nullptr || out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    *out = copyString(trapflow::renderQasm(netlist->value));
    return TF_OK;
  });
}

void tf_netlist_free(tf_netlist* netlist) { delete netlist; }

void tf_latency_model_default(tf_latency_model* model) {
  if (model != nullptr) {
    *model = fromModel({});
  }
}

tf_status tf_latency_model_load(const char* path, tf_latency_model* model) {
  return guarded([&] {
    if (path == nullptr || model == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    if (!std::filesystem::exists(path)) {
      return fail(TF_ERR_IO, std::string("cannot read ") + path);
    }
    *model = fromModel(trapflow::loadLatencyModel(path));
    return TF_OK;
  });
}

void tf_pipeline_options_init(tf_pipeline_options* options) {
  if (options == nullptr) {
    return;
  }
  const trapflow::SolverOptions solver;
  options->library = TF_LIBRARY_NONE;
  options->up_to = TF_STAGE_LATENCY;
  options->node_budget = solver.nodeBudget;
  options->time_budget_seconds = solver.timeBudget.count();
  tf_latency_model_default(&options->model);
}

tf_status tf_pipeline_run(const tf_netlist* netlist, const tf_pipeline_options* options,
                          tf_result** out) {
  return guarded([&] {
    if (netlist == nullptr || out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    tf_pipeline_options opts;
    tf_pipeline_options_init(&opts);
    if (options != nullptr) {
      opts = *options;
    }
    if (opts.node_budget == 0 || !(opts.time_budget_seconds > 0)) {
      return fail(TF_ERR_ARGUMENT, "solver budgets must be positive");
    }
    trapflow::PipelineOptions po;
    if (opts.library == TF_LIBRARY_CV) {
      po.library = trapflow::GateLibrary::CV;
    } else if (opts.library == TF_LIBRARY_FT) {
      po.library = trapflow::GateLibrary::FT;
    }
    po.solver.nodeBudget = opts.node_budget;
    po.solver.timeBudget = std::chrono::duration<double>(opts.time_budget_seconds);
    po.model = toModel(opts.model);
    po.upTo = static_cast<trapflow::PipelineStage>(opts.up_to);
    auto res = std::make_unique<tf_result>();
    res->value = trapflow::runPipeline(netlist->value, po);
    res->reached = opts.up_to;
    *out = res.release();
    return TF_OK;
  });
}

size_t tf_result_stage_count(const tf_result* result) {
  return result == nullptr ? 0 : result->value.outcome.schedule.stageCount();
}

size_t tf_result_lower_bound(const tf_result* result) {
  return result == nullptr ? 0 : result->value.outcome.lowerBound;
}

uint64_t tf_result_nodes_explored(const tf_result* result) {
  return result == nullptr ? 0 : result->value.outcome.nodesExplored;
}

tf_stage tf_result_reached(const tf_result* result) {
  return result == nullptr ? TF_STAGE_SCHEDULE : result->reached;
}

double tf_result_total_latency(const tf_result* result) {
  return result == nullptr || result->reached != TF_STAGE_LATENCY ? 0.0
                                                                  : result->value.latency.total;
}

tf_status tf_result_artifact(const tf_result* result, tf_artifact kind, char** out) {
  return guarded([&] {
    if (result == nullptr || out == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    if (requiredStage(kind) > result->reached) {
      return fail(TF_ERR_ARGUMENT, "artifact belongs to a stage that was not run");
    }
    *out = copyString(render(*result, kind));
    return TF_OK;
  });
}

tf_status tf_result_write(const tf_result* result, const char* dir, unsigned emit) {
  return guarded([&] {
    if (result == nullptr || dir == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    const std::filesystem::path base(dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) {
      return fail(TF_ERR_IO, "cannot create " + base.string() + ": " + ec.message());
    }
    for (const auto& f : kFiles) {
      if (!(emit & f.emit) || requiredStage(f.kind) > result->reached) {
        continue;
      }
      const auto path = base / f.name;
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      file << render(*result, f.kind);
      if (!file) {
        return fail(TF_ERR_IO, "cannot write " + path.string());
      }
    }
    return TF_OK;
  });
}

void tf_result_free(tf_result* result) { delete result; }

tf_status tf_verify(const tf_netlist* netlist, const char* schedule_json, size_t* violations,
                    char** report) {
  return guarded([&] {
    if (netlist == nullptr || schedule_json == nullptr || violations == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    const auto& n = netlist->value;
    const auto schedule =
        trapflow::Schedule::fromJson(nlohmann::json::parse(schedule_json), n.size());
    const auto found = trapflow::validate(n, trapflow::buildDataflow(n), schedule);
    *violations = found.size();
    if (report != nullptr) {
      std::string text;
      for (const auto& v : found) {
        text += "series " + std::to_string(v.series) + ": " + v.message + "\n";
      }
      *report = copyString(text);
    }
    return TF_OK;
  });
}

tf_status tf_oracle_min_stages(const tf_netlist* netlist, size_t* stages) {
  return guarded([&] {
    if (netlist == nullptr || stages == nullptr) {
      return fail(TF_ERR_ARGUMENT, "null argument");
    }
    const auto& n = netlist->value;
    *stages = trapflow::oracleMinStages(n, trapflow::buildDataflow(n));
    return TF_OK;
  });
}

} // extern "C"
