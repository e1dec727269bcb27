// Acceptance run: one PASS/FAIL line per headline criterion.
//
// Usage: acceptance CLI_BINARY
//
// The performance check runs the real command-line tool as a child process
// so that its wall time and peak resident memory are measured in isolation.

#include <fcntl.h>
#include <spawn.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "cpgscan/config/settings.hpp"
#include "cpgscan/cpg/builder.hpp"
#include "cpgscan/library/detectors.hpp"
#include "cpgscan/query/plan.hpp"
#include "cpgscan/report/report.hpp"
#include "cpgscan/store/graph_store.hpp"
#include "fixtures.hpp"
#include "model_server.hpp"
#include "path_oracle.hpp"
#include "query_gen.hpp"
#include "random_graph.hpp"
#include "synthetic.hpp"

extern char** environ;

using namespace cpgscan;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = CPGSCAN_SOURCE_DIR;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("cpgscan_acceptance_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Settings corpus_settings() {
  Settings s;
  s.load_file(kSource / "corpus" / "cpgscan.toml");
  return s;
}

Outcome compression() {
  auto start = Clock::now();
  auto result = extract_sources({{"square.c", fixtures::kSquareProgram}}, {});
  double ms = ms_since(start);
  const auto& g = result.graph;
  std::size_t nodes = g.nodes().size(), edges = g.edges().size();
  bool ok = nodes >= 8 && nodes <= 12 && edges >= 12 && edges <= 18 && ms < 1000 && !g.diagnostics().partial;
  std::ostringstream os;
  os << "nodes=" << nodes << " edges=" << edges << " in " << ms << " ms (want nodes 8..12, edges 12..18, < 1 s)";
  return {ok, os.str()};
}

Outcome corpus_detection() {
  auto start = Clock::now();
  const fs::path corpus = kSource / "corpus";
  auto settings = corpus_settings();
  settings.extract.workers = 4;
  auto graph = extract(corpus, settings.extract).graph;
  auto out = run_detect(graph, settings);
  std::ifstream in(corpus / "truth.json");
  auto truth = library::truth_from_json(Json::parse(in));
  auto score = library::score_corpus(out.findings, truth);
  double ms = ms_since(start);

  bool ok = !graph.diagnostics().partial && ms < 30000;
  std::ostringstream os;
  std::map<std::string, int> buggy;
  for (const auto& [id, expected] : truth.cases) {
    if (!expected.empty()) ++buggy[id.substr(0, id.find('/'))];
    std::ifstream src(corpus / (id + ".c"));
    int lines = 0;
    for (std::string l; std::getline(src, l);) ++lines;
    if (lines == 0 || lines > 40) {
      ok = false;
      os << id << " has " << lines << " lines; ";
    }
  }
  for (auto [group, want] : {std::pair{"cwe401", 25}, {"cwe415", 25}, {"cwe416", 25}, {"injection", 10}})
    if (buggy[group] < want) {
      ok = false;
      os << group << " has " << buggy[group] << " buggy cases; ";
    }
  for (auto id : library::kShippedRules) {
    std::string rule = library::to_string(id);
    const auto& all = score.all[rule];
    const auto& must = score.must[rule];
    ok = ok && all.recall == 100.0 && all.precision >= 90.0 && must.precision == 100.0;
    os << rule << " P/R " << all.precision << "/" << all.recall << " must-P " << must.precision << "; ";
  }
  os << truth.cases.size() << " cases in " << ms << " ms";
  return {ok, os.str()};
}

Outcome oracle_equivalence() {
  using namespace test_support;
  std::mt19937_64 rng(20260101);
  std::size_t compared = 0, mismatches = 0, witnesses = 0, skipped = 0;
  while (compared < 1000) {
    auto g = oracle_graph(rng);
    auto sources = sample(rng, g, 20), sinks = sample(rng, g, 20), barrier = sample(rng, g, 10);
    std::size_t cap = rng() % 3 == 0 ? 1 + rng() % 4 : 512;
    auto oracle = enumerate_paths(g, sources, sinks, barrier, cap);
    if (oracle.exhausted) {
      ++skipped;
      continue;
    }
    ++compared;
    auto ws = query::taint_reachability({sources.begin(), sources.end()}, {sinks.begin(), sinks.end()}, barrier, g, cap);
    std::map<std::pair<Uid, Uid>, std::size_t> got;
    bool bad = false;
    for (const auto& w : ws) {
      if (w.path.empty() || w.kinds.size() + 1 != w.path.size()) {
        bad = true;
        continue;
      }
      for (std::size_t i = 0; i < w.path.size(); ++i)
        if (barrier.count(w.path[i]) || (i && !has_edge(g, w.path[i - 1], w.path[i], w.kinds[i - 1]))) bad = true;
      auto key = std::make_pair(w.path.front(), w.path.back());
      if (got.count(key) || !oracle.must.count(key) || oracle.must.at(key) != w.must) bad = true;
      got[key] = w.path.size() - 1;
    }
    if (bad || got != oracle.pairs) ++mismatches;
    witnesses += ws.size();
  }
  std::ostringstream os;
  os << compared << " random graphs (<= 50 nodes), " << witnesses << " witnesses, " << mismatches << " mismatches, "
     << skipped << " skipped for enumeration budget";
  return {mismatches == 0 && compared >= 1000, os.str()};
}

Outcome dsl_golden() {
  using namespace query;
  const char* injection_query = R"(from Call a, Call b, TaintFlow flow
where
  a.getFunction().equals("input") and
  b.getFunction().equals("exec") and
  flow.source(a).sink(b).exists()
select a, b, flow
)";
  FlowStep f{"flow", "a", "b", std::nullopt, FlowMode::Taint};
  auto chain = PlanBuilder()
                   .from("a", "Call")
                   .from("b", "Call")
                   .where("a", contains_function_call("input"))
                   .where("b", contains_function_call("exec"))
                   .flow(f)
                   .select({"a", "b", "flow"})
                   .build();
  bool golden = translate(parse_query(injection_query)) == chain;

  std::mt19937_64 rng(31337);
  test_support::QueryGen gen{rng, {}, {}};
  int identical = 0, total = 0;
  for (; total < 600; ++total) {
    auto q = gen.query();
    auto text = print_query(q);
    try {
      if (parse_query(text) == q && print_query(parse_query(text)) == text) ++identical;
    } catch (const Error&) {
    }
  }
  std::ostringstream os;
  os << "golden plan " << (golden ? "equal" : "DIFFERENT") << "; parse(print(q)) == q on " << identical << "/" << total
     << " fuzzed queries";
  return {golden && identical == total && total >= 500, os.str()};
}

Outcome determinism() {
  std::ostringstream os;
  bool ok = true;
  const fs::path corpus = kSource / "corpus";
  TempDir one("w1"), eight("w8");
  save(extract(corpus, {.workers = 1}).graph, one.path);
  save(extract(corpus, {.workers = 8}).graph, eight.path);
  for (const char* name : {"nodes.jsonl", "edges.jsonl", "meta.json"})
    if (read_bytes(one.path / name) != read_bytes(eight.path / name)) {
      ok = false;
      os << name << " differs between 1 and 8 workers; ";
    }
  os << "snapshots 1 vs 8 workers " << (ok ? "identical" : "differ");

  auto graph = load(one.path);
  auto settings = corpus_settings();
  auto cached = run_detect(graph, settings).report.dump(2);
  settings.store.cache_enabled = false;
  auto uncached = run_detect(graph, settings).report.dump(2);
  bool same_report = cached == uncached;
  ok = ok && same_report;
  os << "; cache on/off reports " << (same_report ? "identical" : "differ");

  std::mt19937_64 rng(5);
  int equal = 0;
  const int rounds = 50;
  for (int r = 0; r < rounds; ++r) {
    auto g = r == 0 ? graph : fixtures::random_graph(rng, 200);
    GraphStore bulk, single;
    bulk.bulk_upsert(g.nodes(), g.edges(), g.aliases());
    for (const auto& n : g.nodes()) single.upsert_node(n);
    for (const auto& e : g.edges()) single.upsert_edge(e);
    single.bulk_upsert({}, {}, g.aliases());
    if (*bulk.snapshot() == *single.snapshot() && *bulk.snapshot() == g) ++equal;
  }
  ok = ok && equal == rounds;
  os << "; bulk vs per-item stores equal on " << equal << "/" << rounds << " graphs";
  return {ok, os.str()};
}

struct ChildRun {
  int status = -1;
  double wall_ms = 0;
  long peak_kb = 0;
};

ChildRun run_child(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 1, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", O_WRONLY, 0);
  ChildRun run;
  pid_t pid = 0;
  auto start = Clock::now();
  if (posix_spawn(&pid, argv[0], &actions, nullptr, argv.data(), environ) != 0) {
    posix_spawn_file_actions_destroy(&actions);
    return run;
  }
  posix_spawn_file_actions_destroy(&actions);
  int status = 0;
  struct rusage usage {};
  wait4(pid, &status, 0, &usage);
  run.wall_ms = ms_since(start);
  run.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.peak_kb = usage.ru_maxrss;
  return run;
}

Outcome performance(const std::string& cli) {
  TempDir dir("perf");
  auto files = test_support::synthetic_project(10000);
  std::size_t loc = test_support::count_lines(files);
  const fs::path project = dir.path / "project";
  for (const auto& f : files) {
    fs::create_directories((project / f.path).parent_path());
    std::ofstream(project / f.path) << f.text;
  }
  const fs::path snap = dir.path / "snapshot", timing = dir.path / "timing.json";
  auto run = run_child({cli, "extract", project.string(), "--out", snap.string(), "--workers", "4", "--timing",
                        timing.string()});
  bool recorded = fs::is_regular_file(timing) && Json::parse(read_bytes(timing)).contains("total_ms");
  std::size_t nodes = 0;
  if (fs::is_regular_file(snap / "meta.json")) nodes = load(snap).nodes().size();
  auto detect = run_child({cli, "detect", snap.string(), "--format", "json", "--timing",
                           (dir.path / "detect_timing.json").string()});
  double mb = static_cast<double>(run.peak_kb) / 1024.0;
  std::ostringstream os;
  os << loc << " LOC in " << files.size() << " files -> " << nodes << " nodes; extract " << run.wall_ms << " ms, peak "
     << mb << " MB (exit " << run.status << ", timing " << (recorded ? "recorded" : "MISSING") << "); detect "
     << detect.wall_ms << " ms, peak " << static_cast<double>(detect.peak_kb) / 1024.0 << " MB (exit " << detect.status
     << "); " << std::thread::hardware_concurrency() << " hardware threads";
  bool ok = run.status == 0 && detect.status == 0 && loc >= 10000 && run.wall_ms <= 60000 && mb <= 500 && recorded;
  return {ok, os.str()};
}

Outcome brevity() {
  bool ok = true;
  std::ostringstream os;
  for (auto id : library::kShippedRules) {
    std::istringstream in(library::rule_source(id));
    int lines = 0;
    for (std::string l; std::getline(in, l);) {
      auto first = l.find_first_not_of(" \t");
      if (first == std::string::npos || l.compare(first, 2, "//") == 0) continue;
      ++lines;
    }
    ok = ok && lines <= 20;
    os << library::to_string(id) << "=" << lines << " ";
  }
  os << "DSL lines (want <= 20 each)";
  return {ok, os.str()};
}

Outcome ml_fallback() {
  auto graph = extract(kSource / "corpus", {.workers = 4}).graph;
  Settings plain = corpus_settings();
  auto baseline = render_report(run_detect(graph, plain).report, ReportFormat::Json);

  Settings unreachable = plain;
  unreachable.ml_url = "http://127.0.0.1:" + std::to_string(test_support::closed_port());
  unreachable.ml_attempts = 2;
  unreachable.ml_backoff = std::chrono::milliseconds(10);
  auto down = run_detect(graph, unreachable);
  bool same_down = render_report(down.report, ReportFormat::Json) == baseline && !down.warnings.empty();

  Settings unset = plain;
  unset.ml_url.clear();
  unset.ml_threshold = 0.9;
  bool same_unset = render_report(run_detect(graph, unset).report, ReportFormat::Json) == baseline;

  std::ostringstream os;
  os << "unreachable provider report " << (same_down ? "identical (warning logged)" : "DIFFERENT")
     << "; unconfigured provider report " << (same_unset ? "identical" : "DIFFERENT");
  return {same_down && same_unset, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " CLI_BINARY\n";
    return 2;
  }
  const std::string cli = fs::absolute(argv[1]).string();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"compression", compression},
      {"corpus-detection", corpus_detection},
      {"oracle-equivalence", oracle_equivalence},
      {"dsl-golden-and-fuzz", dsl_golden},
      {"determinism", determinism},
      {"performance", [&] { return performance(cli); }},
      {"dsl-brevity", brevity},
      {"ml-fallback", ml_fallback},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
