// Command-line front end. Talks to the library only through cpgscan.h.
//
// Exit codes: 0 success, 2 success on a partial graph (some files failed to
// parse), 1 any fatal error (bad arguments, unreadable input, failed query).

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "cpgscan/cpgscan.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct Failure {
  std::string message;
};

void check(cpgscan_status status, const std::string& what) {
  if (status != CPGSCAN_OK)
    throw Failure{what + ": " + cpgscan_status_name(status) + ": " + cpgscan_last_error()};
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { cpgscan_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using Options = std::unique_ptr<cpgscan_options, decltype(&cpgscan_options_free)>;
using Graph = std::unique_ptr<cpgscan_graph, decltype(&cpgscan_graph_free)>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{"cannot write " + path};
}

// Flags shared by the subcommands; applied over the config file.
struct Common {
  std::string config;
  unsigned workers = 0;
  bool no_cache = false;
  std::string rules;
  std::string ml_url;
  std::string format;
};

Options make_options(const Common& c) {
  cpgscan_options* raw = nullptr;
  check(cpgscan_options_new(&raw), "options");
  Options o(raw, cpgscan_options_free);
  if (!c.config.empty()) check(cpgscan_options_load(o.get(), c.config.c_str()), "config");
  if (c.workers) check(cpgscan_options_set(o.get(), "workers", std::to_string(c.workers).c_str()), "--workers");
  if (c.no_cache) check(cpgscan_options_set(o.get(), "store.cache", "false"), "--no-cache");
  if (!c.rules.empty()) check(cpgscan_options_set(o.get(), "rules.enabled", c.rules.c_str()), "--rules");
  if (!c.ml_url.empty()) check(cpgscan_options_set(o.get(), "ml.url", c.ml_url.c_str()), "--ml-url");
  if (!c.format.empty()) check(cpgscan_options_set(o.get(), "format", c.format.c_str()), "--format");
  return o;
}

// A snapshot directory is loaded, anything else is extracted on the spot.
Graph open_graph(const std::string& path, const cpgscan_options* options) {
  cpgscan_graph* raw = nullptr;
  if (fs::is_regular_file(fs::path(path) / "meta.json"))
    check(cpgscan_graph_load(path.c_str(), &raw), "load " + path);
  else
    check(cpgscan_extract(options, path.c_str(), &raw), "extract " + path);
  return Graph(raw, cpgscan_graph_free);
}

std::string text_summary(const nlohmann::json& s, const std::string& out_dir) {
  std::ostringstream os;
  os << "snapshot " << out_dir << "\n";
  os << "version " << s["version"].get<std::string>() << "\n";
  os << "files " << s["files"] << ", functions " << s["functions"] << "\n";
  const auto& n = s["nodes"];
  os << "nodes=" << n["total"] << " (entry " << n["entry"] << ", exit " << n["exit"] << ", plain " << n["plain"]
     << ", predicate " << n["predicate"] << ", fndecl " << n["fndecl"] << ")\n";
  const auto& e = s["edges"];
  os << "edges=" << e["total"] << " (CFG " << e["CFG"] << ", DFG " << e["DFG"] << ", CG " << e["CG"] << ")\n";
  for (const auto& err : s["parse_errors"]) os << "parse error: " << err.get<std::string>() << "\n";
  return os.str();
}

bool json_format(const Common& c) { return c.format == "json"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpgscan: code property graph defect detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cpgscan_version());

  Common common;
  auto add_common = [&](CLI::App* sub, bool extraction, bool detection) {
    sub->add_option("--config", common.config, "TOML-style settings file")->check(CLI::ExistingFile);
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json"}));
    if (extraction) sub->add_option("--workers", common.workers, "parallel extraction workers")->check(CLI::PositiveNumber);
    if (detection) {
      sub->add_flag("--no-cache", common.no_cache, "evaluate every predicate without the store cache");
      sub->add_option("--rules", common.rules, "comma-separated rule ids (default: all shipped rules)");
      sub->add_option("--ml-url", common.ml_url, "model server base URL, or 'builtin' for the in-process model");
    }
  };

  std::string project, out_dir, snapshot, vql_file, report_file, truth_file, out_file, timing_file;

  auto* extract = app.add_subcommand("extract", "extract a project into a snapshot directory");
  extract->add_option("project", project, "project directory")->required();
  extract->add_option("--out", out_dir, "snapshot directory to write")->required();
  extract->add_option("--timing", timing_file, "write extraction timing JSON here");
  add_common(extract, true, false);

  auto* query = app.add_subcommand("query", "run one .vql query");
  query->add_option("snapshot", snapshot, "snapshot directory or project directory")->required();
  query->add_option("query", vql_file, ".vql file")->required()->check(CLI::ExistingFile);
  add_common(query, true, false);
  query->add_flag("--no-cache", common.no_cache, "evaluate every predicate without the store cache");

  auto* detect = app.add_subcommand("detect", "run the defect rules and print a report");
  detect->add_option("snapshot", snapshot, "snapshot directory or project directory")->required();
  detect->add_option("--out", out_file, "write the report here instead of standard output");
  detect->add_option("--timing", timing_file, "write per-phase timing JSON here");
  add_common(detect, true, true);

  auto* score = app.add_subcommand("score", "score a JSON report against ground truth");
  score->add_option("report", report_file, "report produced by detect --format json")->required()->check(CLI::ExistingFile);
  score->add_option("truth", truth_file, "ground truth JSON")->required()->check(CLI::ExistingFile);
  score->add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFatal;
  }

  try {
    auto options = make_options(common);
    if (*extract) {
      auto graph = open_graph(project, options.get());
      fs::create_directories(out_dir);
      check(cpgscan_graph_save(graph.get(), out_dir.c_str()), "save " + out_dir);
      OwnedString summary, timing;
      check(cpgscan_graph_summary(graph.get(), &summary.p), "summary");
      check(cpgscan_graph_timing(graph.get(), &timing.p), "timing");
      auto s = nlohmann::json::parse(summary.str());
      std::cout << (json_format(common) ? summary.str() + "\n" : text_summary(s, out_dir));
      std::cerr << "extract timing: " << nlohmann::json::parse(timing.str()).dump() << "\n";
      if (!timing_file.empty()) write_file(timing_file, timing.str() + "\n");
      return cpgscan_graph_partial(graph.get()) ? kExitPartial : kExitOk;
    }
    if (*query) {
      auto graph = open_graph(snapshot, options.get());
      OwnedString rows;
      size_t count = 0;
      check(cpgscan_query(graph.get(), options.get(), read_file(vql_file).c_str(), &rows.p, &count), vql_file);
      std::cout << rows.str();
      return kExitOk;
    }
    if (*detect) {
      auto graph = open_graph(snapshot, options.get());
      OwnedString report, diagnostics;
      check(cpgscan_detect(graph.get(), options.get(), &report.p, &diagnostics.p), "detect");
      auto diag = nlohmann::json::parse(diagnostics.str());
      for (const auto& w : diag["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
      std::cerr << "detect timing: " << diag["timing"].dump() << "\n";
      if (!timing_file.empty()) {
        OwnedString graph_timing;
        check(cpgscan_graph_timing(graph.get(), &graph_timing.p), "timing");
        nlohmann::json t = {{"graph", nlohmann::json::parse(graph_timing.str())}, {"detect", diag["timing"]}};
        write_file(timing_file, t.dump(2) + "\n");
      }
      if (out_file.empty()) std::cout << report.str();
      else write_file(out_file, report.str());
      return cpgscan_graph_partial(graph.get()) ? kExitPartial : kExitOk;
    }
    if (*score) {
      OwnedString table;
      check(cpgscan_score(read_file(report_file).c_str(), read_file(truth_file).c_str(), options.get(), &table.p),
            "score");
      std::cout << table.str();
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "cpgscan: " << f.message << "\n";
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "cpgscan: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}
