#pragma once

#include <string>
#include <vector>

#include "cpgscan/config/settings.hpp"
#include "cpgscan/cpg/graph_json.hpp"
#include "cpgscan/query/engine.hpp"

namespace cpgscan {

inline constexpr const char* kToolName = "cpgscan";
inline constexpr const char* kToolVersion = "0.1.0";

struct DetectTiming {
  double rules_ms = 0;
  double ml_ms = 0;
  double total_ms = 0;
};

struct DetectOutput {
  // Deterministic for a given graph and settings; never contains timing or
  // provider status so that runs can be compared byte for byte.
  OrderedJson report;
  std::vector<library::Finding> findings;
  std::vector<std::string> warnings;  // e.g. model server unreachable
  DetectTiming timing;
};

// Runs the enabled shipped rules through the query engine (concurrently, one
// task per rule), then the ML scan when `settings.ml_url` is set. "builtin"
// selects the in-process heuristic model. A failing model server only adds a
// warning.
DetectOutput run_detect(const CodeGraph& graph, const Settings& settings);

OrderedJson finding_to_json(const library::Finding& f, const CodeGraph& graph);
OrderedJson graph_summary(const CodeGraph& graph);

// Findings read back from a report (rule, confidence, location, message).
std::vector<library::Finding> findings_from_report(const Json& report);

std::string render_report(const OrderedJson& report, ReportFormat format);
std::string render_rows(const std::vector<query::ResultRow>& rows, const CodeGraph& graph, ReportFormat format);
std::string render_score(const library::CorpusScore& score, ReportFormat format);

}  // namespace cpgscan
