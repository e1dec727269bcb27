#include "cpgscan/cpgscan.h"

#include <chrono>
#include <cstdlib>
#include <cstring>

#include "cpgscan/config/settings.hpp"
#include "cpgscan/report/report.hpp"

struct cpgscan_options {
  cpgscan::Settings settings;
};

struct cpgscan_graph {
  cpgscan::CodeGraph graph;
  cpgscan::OrderedJson timing = cpgscan::OrderedJson::object();
};

namespace {

thread_local std::string last_error;

cpgscan_status status_of(cpgscan::ErrorCode code) {
  return static_cast<cpgscan_status>(static_cast<int>(code) + 1);
}

// Runs `body`, translating exceptions into a status and the thread's message.
template <typename F>
cpgscan_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return CPGSCAN_OK;
  } catch (const cpgscan::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return CPGSCAN_E_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw cpgscan::Error(cpgscan::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

static_assert(static_cast<int>(cpgscan::ErrorCode::InvalidArgument) + 1 == CPGSCAN_E_INVALID_ARGUMENT,
              "status codes mirror ErrorCode");

extern "C" {

const char* cpgscan_version(void) { return cpgscan::kToolVersion; }

const char* cpgscan_status_name(cpgscan_status status) {
  if (status == CPGSCAN_OK) return "OK";
  if (status == CPGSCAN_E_INTERNAL) return "Internal";
  if (status > CPGSCAN_OK && status < CPGSCAN_E_INTERNAL)
    return cpgscan::to_string(static_cast<cpgscan::ErrorCode>(static_cast<int>(status) - 1));
  return "Unknown";
}

const char* cpgscan_last_error(void) { return last_error.c_str(); }

void cpgscan_string_free(char* s) { std::free(s); }

cpgscan_status cpgscan_options_new(cpgscan_options** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cpgscan_options();
  });
}

void cpgscan_options_free(cpgscan_options* options) { delete options; }

cpgscan_status cpgscan_options_load(cpgscan_options* options, const char* config_path) {
  return guarded([&] {
    require(options, "options");
    require(config_path, "config_path");
    options->settings.load_file(config_path);
  });
}

cpgscan_status cpgscan_options_set(cpgscan_options* options, const char* key, const char* value) {
  return guarded([&] {
    require(options, "options");
    require(key, "key");
    require(value, "value");
    options->settings.set(key, value);
  });
}

cpgscan_status cpgscan_extract(const cpgscan_options* options, const char* project_dir, cpgscan_graph** out) {
  return guarded([&] {
    require(options, "options");
    require(project_dir, "project_dir");
    require(out, "out");
    options->settings.validate();
    auto result = cpgscan::extract(project_dir, options->settings.extract);
    auto g = std::make_unique<cpgscan_graph>();
    g->graph = std::move(result.graph);
    g->timing = {{"discover_ms", result.timing.discover_ms},
                 {"parse_ms", result.timing.parse_ms},
                 {"join_ms", result.timing.join_ms},
                 {"total_ms", result.timing.total_ms},
                 {"workers", options->settings.extract.workers}};
    *out = g.release();
  });
}

cpgscan_status cpgscan_graph_load(const char* snapshot_dir, cpgscan_graph** out) {
  return guarded([&] {
    require(snapshot_dir, "snapshot_dir");
    require(out, "out");
    auto start = std::chrono::steady_clock::now();
    auto g = std::make_unique<cpgscan_graph>();
    g->graph = cpgscan::load(snapshot_dir);
    g->timing = {{"load_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
    *out = g.release();
  });
}

void cpgscan_graph_free(cpgscan_graph* graph) { delete graph; }

int cpgscan_graph_partial(const cpgscan_graph* graph) { return graph && graph->graph.diagnostics().partial ? 1 : 0; }

cpgscan_status cpgscan_graph_save(const cpgscan_graph* graph, const char* snapshot_dir) {
  return guarded([&] {
    require(graph, "graph");
    require(snapshot_dir, "snapshot_dir");
    cpgscan::save(graph->graph, snapshot_dir);
  });
}

cpgscan_status cpgscan_graph_summary(const cpgscan_graph* graph, char** json_out) {
  return guarded([&] {
    require(graph, "graph");
    require(json_out, "json_out");
    *json_out = copy_out(cpgscan::graph_summary(graph->graph).dump(2));
  });
}

cpgscan_status cpgscan_graph_timing(const cpgscan_graph* graph, char** json_out) {
  return guarded([&] {
    require(graph, "graph");
    require(json_out, "json_out");
    *json_out = copy_out(graph->timing.dump(2));
  });
}

cpgscan_status cpgscan_query(const cpgscan_graph* graph, const cpgscan_options* options, const char* vql,
                             char** output, size_t* row_count) {
  return guarded([&] {
    require(graph, "graph");
    require(options, "options");
    require(vql, "vql");
    require(output, "output");
    const auto& s = options->settings;
    cpgscan::GraphStore store(graph->graph, s.store);
    cpgscan::query::Engine engine(store, s.rules.engine_options());
    auto rows = cpgscan::query::run_query(vql, engine);
    *output = copy_out(cpgscan::render_rows(rows, graph->graph, s.format));
    if (row_count) *row_count = rows.size();
  });
}

cpgscan_status cpgscan_detect(const cpgscan_graph* graph, const cpgscan_options* options, char** report,
                              char** diagnostics) {
  return guarded([&] {
    require(graph, "graph");
    require(options, "options");
    require(report, "report");
    auto out = cpgscan::run_detect(graph->graph, options->settings);
    std::string rendered = cpgscan::render_report(out.report, options->settings.format);
    std::string diag;
    if (diagnostics) {
      cpgscan::OrderedJson d;
      d["warnings"] = out.warnings;
      d["timing"] = {{"rules_ms", out.timing.rules_ms}, {"ml_ms", out.timing.ml_ms}, {"total_ms", out.timing.total_ms}};
      diag = d.dump(2);
    }
    *report = copy_out(rendered);
    if (diagnostics) *diagnostics = copy_out(diag);
  });
}

cpgscan_status cpgscan_score(const char* report_json, const char* truth_json, const cpgscan_options* options,
                             char** output) {
  return guarded([&] {
    require(report_json, "report_json");
    require(truth_json, "truth_json");
    require(options, "options");
    require(output, "output");
    auto report = cpgscan::Json::parse(report_json, nullptr, false);
    if (report.is_discarded()) throw cpgscan::Error(cpgscan::ErrorCode::InvalidArgument, "report is not JSON");
    auto truth = cpgscan::Json::parse(truth_json, nullptr, false);
    if (truth.is_discarded()) throw cpgscan::Error(cpgscan::ErrorCode::InvalidArgument, "ground truth is not JSON");
    auto score = cpgscan::library::score_corpus(cpgscan::findings_from_report(report),
                                                cpgscan::library::truth_from_json(truth));
    *output = copy_out(cpgscan::render_score(score, options->settings.format));
  });
}

}  // extern "C"
