#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "cpgscan/cpg/builder.hpp"
#include "cpgscan/library/detectors.hpp"
#include "cpgscan/store/graph_store.hpp"

namespace cpgscan {

enum class ReportFormat { Text, Json };

// Everything a run can be configured with. Loaded from a TOML-style file:
//
//   workers = 4
//   exclude = ["vendor/*"]
//   format = "json"
//   [store]
//   cache = true
//   cache_entries = 4096
//   [rules]
//   enabled = ["CWE401", "CWE415"]
//   allocators = ["malloc", "xmalloc"]
//   deallocators, sources, sinks, sanitizers (lists), pessimistic_externals (bool)
//   [ml]
//   url = "http://127.0.0.1:8080"    # or "builtin" for the in-process model
//   timeout_ms = 2000
//   attempts = 3
//   backoff_ms = 100
//   batch = 256
//   threshold = 0.5
//
// Keys are addressed as "section.key" ("workers" for top-level keys).
struct Settings {
  ExtractOptions extract;
  StoreOptions store;
  library::RuleConfig rules;
  std::vector<library::RuleId> enabled{library::kShippedRules.begin(), library::kShippedRules.end()};
  std::string ml_url;
  std::chrono::milliseconds ml_timeout{2000};
  int ml_attempts = 3;
  std::chrono::milliseconds ml_backoff{100};
  std::size_t ml_batch = 256;
  double ml_threshold = 0.5;
  ReportFormat format = ReportFormat::Text;

  // Applies a config file over the current values. Throws InvalidArgument
  // with file and line on malformed input or unknown keys.
  void load_file(const std::filesystem::path& path);
  void load_text(const std::string& text, const std::string& origin = "<config>");
  // Sets one key from a command-line style value: lists are comma separated,
  // strings are taken verbatim.
  void set(const std::string& key, const std::string& value);
  // Cross-field checks (worker count, allocator/deallocator overlap, ...).
  void validate() const;
};

}  // namespace cpgscan
