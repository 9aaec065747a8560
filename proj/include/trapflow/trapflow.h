/* SPDX-License-Identifier: Apache-2.0 */

#ifndef TRAPFLOW_H
#define TRAPFLOW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
  TF_OK = 0,
  TF_ERR_ARGUMENT = 1,
  TF_ERR_PARSE = 2,
  TF_ERR_SCHEDULE = 3,
  TF_ERR_LAYOUT = 4,
  TF_ERR_IO = 5,
  TF_ERR_INTERNAL = 6
} tf_status;

typedef enum tf_library { TF_LIBRARY_NONE = 0, TF_LIBRARY_CV = 1, TF_LIBRARY_FT = 2 } tf_library;

typedef enum tf_stage { TF_STAGE_SCHEDULE = 0, TF_STAGE_LAYOUT = 1, TF_STAGE_LATENCY = 2 } tf_stage;

typedef enum tf_emit {
  TF_EMIT_JSON = 1,
  TF_EMIT_DOT = 2,
  TF_EMIT_SVG = 4,
  TF_EMIT_LP = 8,
  TF_EMIT_ALL = 15
} tf_emit;

typedef enum tf_artifact {
  TF_ARTIFACT_NETLIST_JSON = 0,
  TF_ARTIFACT_DATAFLOW_JSON,
  TF_ARTIFACT_DATAFLOW_DOT,
  TF_ARTIFACT_SCHEDULE_JSON,
  TF_ARTIFACT_SCHEDULE_LP,
  TF_ARTIFACT_QFG_JSON,
  TF_ARTIFACT_QFG_DOT,
  TF_ARTIFACT_DRAWING_JSON,
  TF_ARTIFACT_DRAWING_SVG,
  TF_ARTIFACT_LAYOUT_JSON,
  TF_ARTIFACT_LAYOUT_SVG,
  TF_ARTIFACT_LAYOUT_TXT,
  TF_ARTIFACT_LATENCY_JSON
} tf_artifact;

/* Microseconds; all positive. */
typedef struct tf_latency_model {
  double one_qubit_gate;
  double two_qubit_gate;
  double measurement;
  double zero_prepare;
  double straight_move;
  double turn;
} tf_latency_model;

typedef struct tf_pipeline_options {
  tf_library library;
  tf_stage up_to;
  uint64_t node_budget;
  double time_budget_seconds;
  tf_latency_model model;
} tf_pipeline_options;

typedef struct tf_netlist tf_netlist;
typedef struct tf_result tf_result;

/* Message for the last failing call on this thread; never NULL. */
const char* tf_last_error(void);
const char* tf_version(void);

/* Strings returned through char** are owned by the caller. */
void tf_string_free(char* s);

tf_status tf_netlist_parse(const char* text, tf_netlist** out);
tf_status tf_netlist_load(const char* path, tf_netlist** out);
tf_status tf_netlist_cat(size_t n, tf_netlist** out);
tf_status tf_netlist_decompose(const tf_netlist* netlist, tf_library library, tf_netlist** out);
size_t tf_netlist_size(const tf_netlist* netlist);
size_t tf_netlist_qubit_count(const tf_netlist* netlist);
tf_status tf_netlist_to_json(const tf_netlist* netlist, char** out);
tf_status tf_netlist_to_qasm(const tf_netlist* netlist, char** out);
void tf_netlist_free(tf_netlist* netlist);

void tf_latency_model_default(tf_latency_model* model);
tf_status tf_latency_model_load(const char* path, tf_latency_model* model);

void tf_pipeline_options_init(tf_pipeline_options* options);
tf_status tf_pipeline_run(const tf_netlist* netlist, const tf_pipeline_options* options,
                          tf_result** out);

size_t tf_result_stage_count(const tf_result* result);
size_t tf_result_lower_bound(const tf_result* result);
uint64_t tf_result_nodes_explored(const tf_result* result);
tf_stage tf_result_reached(const tf_result* result);
/* Zero unless the run reached TF_STAGE_LATENCY. */
double tf_result_total_latency(const tf_result* result);
/* TF_ERR_ARGUMENT when the artifact belongs to a stage the run skipped. */
tf_status tf_result_artifact(const tf_result* result, tf_artifact kind, char** out);
/* Writes the artifacts selected by `emit` (tf_emit bits) into `dir`,
   creating it if needed. */
tf_status tf_result_write(const tf_result* result, const char* dir, unsigned emit);
void tf_result_free(tf_result* result);

/* Validates a schedule JSON document. `report` (optional) receives one
   line per violation. */
tf_status tf_verify(const tf_netlist* netlist, const char* schedule_json, size_t* violations,
                    char** report);
/* Exhaustive minimum stage count; at most 12 instructions. */
tf_status tf_oracle_min_stages(const tf_netlist* netlist, size_t* stages);

#ifdef __cplusplus
}
#endif

#endif
