// SPDX-License-Identifier: Apache-2.0

#include "trapflow/trapflow.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(TRAPFLOW_FIXTURES) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  tf_string_free(s);
  return out;
}

TEST(CApi, ParseAndInspect) {
  tf_netlist* n = nullptr;
  ASSERT_EQ(tf_netlist_parse(fixture("code_9_3_2.qasm").c_str(), &n), TF_OK);
  EXPECT_EQ(tf_netlist_size(n), 20U);
  EXPECT_EQ(tf_netlist_qubit_count(n), 9U);
  char* json = nullptr;
  ASSERT_EQ(tf_netlist_to_json(n, &json), TF_OK);
  EXPECT_NE(take(json).find("\"instructions\""), std::string::npos);
  tf_netlist_free(n);
}

TEST(CApi, ParseErrors) {
  tf_netlist* n = nullptr;
  EXPECT_EQ(tf_netlist_parse("H Q0\nBOGUS Q1\n", &n), TF_ERR_PARSE);
  EXPECT_EQ(n, nullptr);
  EXPECT_NE(std::string(tf_last_error()).find("line 2"), std::string::npos);
  EXPECT_EQ(tf_netlist_parse("", &n), TF_ERR_PARSE);
  EXPECT_EQ(tf_netlist_parse(nullptr, &n), TF_ERR_ARGUMENT);
  EXPECT_EQ(tf_netlist_load("/nonexistent.qasm", &n), TF_ERR_IO);
}

TEST(CApi, LastErrorIsPerThread) {
  tf_netlist* n = nullptr;
  EXPECT_EQ(tf_netlist_parse("FOO Q0\n", &n), TF_ERR_PARSE);
  const std::string mine = tf_last_error();
  std::string other;
  std::thread([&] { other = tf_last_error(); }).join();
  EXPECT_TRUE(other.empty());
  EXPECT_EQ(std::string(tf_last_error()), mine);
}

TEST(CApi, CatAndDecompose) {
  tf_netlist* cat = nullptr;
  ASSERT_EQ(tf_netlist_cat(7, &cat), TF_OK);
  EXPECT_EQ(tf_netlist_size(cat), 9U);
  tf_netlist_free(cat);
  EXPECT_EQ(tf_netlist_cat(1, &cat), TF_ERR_ARGUMENT);

  tf_netlist* tof = nullptr;
  ASSERT_EQ(tf_netlist_parse("Toffoli Q0,Q1,Q2\n", &tof), TF_OK);
  tf_netlist* ft = nullptr;
  ASSERT_EQ(tf_netlist_decompose(tof, TF_LIBRARY_FT, &ft), TF_OK);
  EXPECT_EQ(tf_netlist_size(ft), 16U);
  tf_netlist* cv = nullptr;
  ASSERT_EQ(tf_netlist_decompose(tof, TF_LIBRARY_CV, &cv), TF_OK);
  EXPECT_EQ(tf_netlist_size(cv), 5U);
  tf_netlist_free(ft);
  tf_netlist_free(cv);
  tf_netlist_free(tof);
}

TEST(CApi, OptionsDefaults) {
  tf_pipeline_options o;
  tf_pipeline_options_init(&o);
  EXPECT_EQ(o.library, TF_LIBRARY_NONE);
  EXPECT_EQ(o.up_to, TF_STAGE_LATENCY);
  EXPECT_GT(o.node_budget, 0U);
  EXPECT_GT(o.time_budget_seconds, 0);
  EXPECT_EQ(o.model.one_qubit_gate, 1);
  EXPECT_EQ(o.model.two_qubit_gate, 10);
  EXPECT_EQ(o.model.measurement, 50);
  EXPECT_EQ(o.model.zero_prepare, 51);
  EXPECT_EQ(o.model.straight_move, 1);
  EXPECT_EQ(o.model.turn, 10);
}

TEST(CApi, FullRun) {
  tf_netlist* n = nullptr;
  ASSERT_EQ(tf_netlist_parse(fixture("code_9_3_2.qasm").c_str(), &n), TF_OK);
  tf_result* r = nullptr;
  ASSERT_EQ(tf_pipeline_run(n, nullptr, &r), TF_OK) << tf_last_error();
  EXPECT_EQ(tf_result_stage_count(r), 6U);
  EXPECT_EQ(tf_result_lower_bound(r), 6U);
  EXPECT_GT(tf_result_total_latency(r), 0);
  EXPECT_EQ(tf_result_reached(r), TF_STAGE_LATENCY);
  char* s = nullptr;
  ASSERT_EQ(tf_result_artifact(r, TF_ARTIFACT_SCHEDULE_LP, &s), TF_OK);
  EXPECT_NE(take(s).find("x_6_1 + x_6_2 + x_6_3 + x_6_4 + x_6_5 = 1"), std::string::npos);
  ASSERT_EQ(tf_result_artifact(r, TF_ARTIFACT_LAYOUT_TXT, &s), TF_OK);
  EXPECT_NE(take(s).find('G'), std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "trapflow_capi_out";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(tf_result_write(r, dir.c_str(), TF_EMIT_JSON | TF_EMIT_SVG), TF_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "latency.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "layout.svg"));
  EXPECT_FALSE(std::filesystem::exists(dir / "qfg.dot"));
  std::filesystem::remove_all(dir);
  tf_result_free(r);
  tf_netlist_free(n);
}

TEST(CApi, ScheduleOnlyRunRefusesLaterArtifacts) {
  tf_netlist* n = nullptr;
  ASSERT_EQ(tf_netlist_cat(4, &n), TF_OK);
  tf_pipeline_options o;
  tf_pipeline_options_init(&o);
  o.up_to = TF_STAGE_SCHEDULE;
  tf_result* r = nullptr;
  ASSERT_EQ(tf_pipeline_run(n, &o, &r), TF_OK);
  EXPECT_EQ(tf_result_stage_count(r), 5U);
  EXPECT_EQ(tf_result_total_latency(r), 0);
  char* s = nullptr;
  EXPECT_EQ(tf_result_artifact(r, TF_ARTIFACT_LAYOUT_JSON, &s), TF_ERR_ARGUMENT);
  ASSERT_EQ(tf_result_artifact(r, TF_ARTIFACT_SCHEDULE_JSON, &s), TF_OK);
  EXPECT_NE(take(s).find("\"stage_count\": 5"), std::string::npos);
  tf_result_free(r);
  tf_netlist_free(n);
}

TEST(CApi, RunErrors) {
  tf_netlist* n = nullptr;
  ASSERT_EQ(tf_netlist_parse(fixture("code_9_3_2.qasm").c_str(), &n), TF_OK);
  tf_pipeline_options o;
  tf_pipeline_options_init(&o);
  tf_result* r = nullptr;
  o.node_budget = 1;
  EXPECT_EQ(tf_pipeline_run(n, &o, &r), TF_ERR_SCHEDULE);
  o.node_budget = 0;
  EXPECT_EQ(tf_pipeline_run(n, &o, &r), TF_ERR_ARGUMENT);
  tf_pipeline_options_init(&o);
  o.model.turn = -1;
  EXPECT_EQ(tf_pipeline_run(n, &o, &r), TF_ERR_ARGUMENT);
  EXPECT_EQ(r, nullptr);
  tf_netlist_free(n);

  ASSERT_EQ(tf_netlist_parse("H Q0\nH Q1\nH Q2\nToffoli Q0,Q1,Q2\nH Q0\nH Q1\nH Q2\n", &n), TF_OK);
  tf_pipeline_options_init(&o);
  EXPECT_EQ(tf_pipeline_run(n, &o, &r), TF_ERR_LAYOUT);
  o.library = TF_LIBRARY_CV;
  EXPECT_EQ(tf_pipeline_run(n, &o, &r), TF_OK) << tf_last_error();
  tf_result_free(r);
  tf_netlist_free(n);
}

TEST(CApi, VerifyAndOracle) {
  tf_netlist* n = nullptr;
  ASSERT_EQ(tf_netlist_parse(fixture("code_9_3_2.qasm").c_str(), &n), TF_OK);
  std::size_t violations = 99;
  char* report = nullptr;
  ASSERT_EQ(tf_verify(n, fixture("witness_schedule.json").c_str(), &violations, &report), TF_OK);
  EXPECT_EQ(violations, 0U);
  EXPECT_EQ(take(report), "");
  EXPECT_EQ(tf_verify(n, "{not json", &violations, nullptr), TF_ERR_PARSE);
  std::size_t stages = 0;
  EXPECT_EQ(tf_oracle_min_stages(n, &stages), TF_ERR_ARGUMENT);
  tf_netlist_free(n);

  ASSERT_EQ(tf_netlist_parse(fixture("cat4.qasm").c_str(), &n), TF_OK);
  ASSERT_EQ(tf_oracle_min_stages(n, &stages), TF_OK);
  EXPECT_EQ(stages, 5U);
  tf_netlist_free(n);
}

TEST(CApi, LatencyModelFile) {
  const auto path = std::filesystem::temp_directory_path() / "trapflow_capi_model.cfg";
  std::ofstream(path) << "turn = 20\n";
  tf_latency_model m;
  ASSERT_EQ(tf_latency_model_load(path.c_str(), &m), TF_OK);
  EXPECT_EQ(m.turn, 20);
  EXPECT_EQ(m.straight_move, 1);
  std::ofstream(path) << "turn = -1\n";
  EXPECT_EQ(tf_latency_model_load(path.c_str(), &m), TF_ERR_PARSE);
  std::filesystem::remove(path);
  EXPECT_EQ(tf_latency_model_load(path.c_str(), &m), TF_ERR_IO);
}

} // namespace
