#ifndef CPGSCAN_H
#define CPGSCAN_H

/*
 * C interface of the cpgscan library. Objects are opaque handles created and
 * released through this header. Every fallible call returns a status code;
 * on failure cpgscan_last_error() describes the problem for the calling
 * thread. Strings returned through `char **` are owned by the caller and
 * released with cpgscan_string_free().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CPGSCAN_API __declspec(dllexport)
#else
#define CPGSCAN_API __attribute__((visibility("default")))
#endif

typedef enum cpgscan_status {
  CPGSCAN_OK = 0,
  CPGSCAN_E_IO,
  CPGSCAN_E_LEX,
  CPGSCAN_E_PARSE,
  CPGSCAN_E_LOWERING,
  CPGSCAN_E_EMPTY_PROJECT,
  CPGSCAN_E_DANGLING_EDGE,
  CPGSCAN_E_VERSION_MISMATCH,
  CPGSCAN_E_CORRUPT_SNAPSHOT,
  CPGSCAN_E_UNKNOWN_NODE,
  CPGSCAN_E_SYNTAX,
  CPGSCAN_E_UNKNOWN_TYPE,
  CPGSCAN_E_UNBOUND_NAME,
  CPGSCAN_E_TYPE,
  CPGSCAN_E_NO_DECLARATION,
  CPGSCAN_E_PROVIDER_UNAVAILABLE,
  CPGSCAN_E_UNKNOWN_CASE,
  CPGSCAN_E_INVALID_ARGUMENT,
  CPGSCAN_E_INTERNAL
} cpgscan_status;

typedef struct cpgscan_options cpgscan_options;
typedef struct cpgscan_graph cpgscan_graph;

CPGSCAN_API const char *cpgscan_version(void);
CPGSCAN_API const char *cpgscan_status_name(cpgscan_status status);
/* Message of the last failed call on this thread; empty after a success. */
CPGSCAN_API const char *cpgscan_last_error(void);
CPGSCAN_API void cpgscan_string_free(char *s);

/* Run settings. Keys follow the config file ("workers", "store.cache",
 * "rules.enabled", "ml.url", ...); list values are comma separated. */
CPGSCAN_API cpgscan_status cpgscan_options_new(cpgscan_options **out);
CPGSCAN_API void cpgscan_options_free(cpgscan_options *options);
CPGSCAN_API cpgscan_status cpgscan_options_load(cpgscan_options *options, const char *config_path);
CPGSCAN_API cpgscan_status cpgscan_options_set(cpgscan_options *options, const char *key, const char *value);

/* Extracts the graph of every .c/.mc file under `project_dir`. A graph with
 * per-file parse failures is still returned; see cpgscan_graph_partial(). */
CPGSCAN_API cpgscan_status cpgscan_extract(const cpgscan_options *options, const char *project_dir,
                                           cpgscan_graph **out);
/* Loads a snapshot directory written by cpgscan_graph_save(). */
CPGSCAN_API cpgscan_status cpgscan_graph_load(const char *snapshot_dir, cpgscan_graph **out);
CPGSCAN_API void cpgscan_graph_free(cpgscan_graph *graph);
CPGSCAN_API int cpgscan_graph_partial(const cpgscan_graph *graph);
/* Writes nodes.jsonl, edges.jsonl and meta.json. */
CPGSCAN_API cpgscan_status cpgscan_graph_save(const cpgscan_graph *graph, const char *snapshot_dir);
/* Version, node and edge counts, diagnostics; JSON. */
CPGSCAN_API cpgscan_status cpgscan_graph_summary(const cpgscan_graph *graph, char **json_out);
/* Timing of the extraction that produced `graph` (JSON, empty object for
 * loaded graphs). Kept apart from snapshots so they stay reproducible. */
CPGSCAN_API cpgscan_status cpgscan_graph_timing(const cpgscan_graph *graph, char **json_out);

/* Runs one DSL query; output is rendered in the configured format. */
CPGSCAN_API cpgscan_status cpgscan_query(const cpgscan_graph *graph, const cpgscan_options *options,
                                         const char *vql, char **output, size_t *row_count);

/* Runs the enabled rules (and the ML scan when configured). `report` is
 * rendered in the configured format. `diagnostics` (may be NULL) receives
 * JSON with warnings and per-phase timing. */
CPGSCAN_API cpgscan_status cpgscan_detect(const cpgscan_graph *graph, const cpgscan_options *options, char **report,
                                          char **diagnostics);

/* Scores a JSON report against a ground truth file's JSON text. */
CPGSCAN_API cpgscan_status cpgscan_score(const char *report_json, const char *truth_json,
                                         const cpgscan_options *options, char **output);

#ifdef __cplusplus
}
#endif

#endif
