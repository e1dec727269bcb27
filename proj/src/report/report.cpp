#include "cpgscan/report/report.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>

#include "cpgscan/ml/bridge.hpp"

namespace cpgscan {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

std::unique_ptr<ml::Provider> make_provider(const Settings& s) {
  if (s.ml_url == "builtin") return std::make_unique<ml::HeuristicProvider>();
  ml::HttpOptions o;
  o.base_url = s.ml_url;
  o.timeout = s.ml_timeout;
  o.attempts = s.ml_attempts;
  o.backoff = s.ml_backoff;
  o.batch = s.ml_batch;
  return std::make_unique<ml::HttpProvider>(o);
}

std::string one_line(const std::string& code) {
  std::string out;
  bool space = false;
  for (char c : code) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string node_brief(const CodeGraph& g, Uid uid) {
  const auto* n = g.find(uid);
  if (!n) return std::to_string(uid);
  std::string code = n->code.empty() ? "<" + std::string(to_string(n->kind)) + " " + n->fn + ">" : one_line(n->code);
  return n->span.file + ":" + std::to_string(n->span.line) + "  " + code;
}

}  // namespace

OrderedJson graph_summary(const CodeGraph& graph) {
  auto stats = stats_to_json(graph);
  OrderedJson j;
  j["version"] = graph.version();
  j["files"] = stats["files"];
  j["functions"] = stats["functions"];
  j["nodes"] = stats["nodes"];
  j["edges"] = stats["edges"];
  j["partial"] = stats["partial"];
  j["parse_errors"] = stats["parse_errors"];
  return j;
}

OrderedJson finding_to_json(const library::Finding& f, const CodeGraph& graph) {
  OrderedJson path = OrderedJson::array();
  for (Uid u : f.witness.path) {
    const auto& n = graph.node(u);
    path.push_back({{"id", u}, {"file", n.span.file}, {"line", n.span.line}, {"code", one_line(n.code)}});
  }
  OrderedJson kinds = OrderedJson::array();
  for (auto k : f.witness.kinds) kinds.push_back(to_string(k));
  OrderedJson j;
  j["rule"] = library::to_string(f.rule);
  j["confidence"] = library::to_string(f.confidence);
  j["file"] = f.primary_location.file;
  j["line"] = f.primary_location.line;
  j["col"] = f.primary_location.col;
  j["message"] = f.message;
  j["witness"] = {{"path", std::move(path)}, {"kinds", std::move(kinds)}};
  return j;
}

DetectOutput run_detect(const CodeGraph& graph, const Settings& settings) {
  settings.validate();
  auto start = Clock::now();
  DetectOutput out;

  GraphStore store(graph, settings.store);
  auto engine_options = settings.rules.engine_options();
  std::vector<std::future<std::vector<library::Finding>>> tasks;
  for (auto id : settings.enabled)
    tasks.push_back(std::async(std::launch::async, [&, id] {
      query::Engine engine(store, engine_options);
      return library::run_rule(id, engine, settings.rules);
    }));
  for (auto& t : tasks) {
    auto fs = t.get();
    out.findings.insert(out.findings.end(), fs.begin(), fs.end());
  }
  out.timing.rules_ms = ms_since(start);

  if (!settings.ml_url.empty()) {
    auto ml_start = Clock::now();
    try {
      auto provider = make_provider(settings);
      ml::ScanOptions opts;
      opts.threshold = settings.ml_threshold;
      opts.sanitizers = settings.rules.sanitizers;
      auto scan = ml::ml_taint_scan(graph, *provider, opts);
      out.findings.insert(out.findings.end(), scan.findings.begin(), scan.findings.end());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ProviderUnavailable) throw;
      out.warnings.push_back(std::string("ML scan skipped: ") + e.what());
    }
    out.timing.ml_ms = ms_since(ml_start);
  }
  library::sort_findings(out.findings);

  OrderedJson rules = OrderedJson::array();
  OrderedJson summary;
  for (auto id : settings.enabled) {
    rules.push_back(library::to_string(id));
    summary[library::to_string(id)] = {{"must", 0}, {"maybe", 0}};
  }
  OrderedJson findings = OrderedJson::array();
  for (const auto& f : out.findings) {
    findings.push_back(finding_to_json(f, graph));
    auto& s = summary[library::to_string(f.rule)];
    if (s.is_null()) s = {{"must", 0}, {"maybe", 0}};
    s[library::to_string(f.confidence)] = s[library::to_string(f.confidence)].get<int>() + 1;
  }
  OrderedJson& r = out.report;
  r["tool"] = kToolName;
  r["tool_version"] = kToolVersion;
  r["graph"] = graph_summary(graph);
  r["rules"] = std::move(rules);
  r["summary"] = std::move(summary);
  r["findings"] = std::move(findings);
  out.timing.total_ms = ms_since(start);
  return out;
}

std::vector<library::Finding> findings_from_report(const Json& report) {
  std::vector<library::Finding> out;
  try {
    for (const auto& j : report.at("findings")) {
      library::Finding f;
      f.rule = library::rule_from_string(j.at("rule").get<std::string>());
      auto c = j.at("confidence").get<std::string>();
      if (c == "must") f.confidence = library::Confidence::Must;
      else if (c == "maybe") f.confidence = library::Confidence::Maybe;
      else throw Error(ErrorCode::InvalidArgument, "unknown confidence '" + c + "'");
      f.primary_location = {j.at("file").get<std::string>(), j.at("line").get<int>(), j.value("col", 1)};
      f.message = j.value("message", "");
      if (j.contains("witness"))
        for (const auto& step : j["witness"].at("path")) f.witness.path.push_back(step.at("id").get<Uid>());
      out.push_back(std::move(f));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed report: ") + e.what());
  }
  return out;
}

std::string render_report(const OrderedJson& report, ReportFormat format) {
  if (format == ReportFormat::Json) return report.dump(2) + "\n";
  std::ostringstream os;
  const auto& g = report["graph"];
  os << report["tool"].get<std::string>() << " " << report["tool_version"].get<std::string>() << "\n";
  os << "graph " << g["version"].get<std::string>().substr(0, 12) << ": " << g["files"] << " files, "
     << g["nodes"]["total"] << " nodes, " << g["edges"]["total"] << " edges"
     << (g["partial"].get<bool>() ? " (partial)" : "") << "\n\n";
  for (const auto& f : report["findings"]) {
    os << f["file"].get<std::string>() << ":" << f["line"] << ": " << f["rule"].get<std::string>() << " ["
       << f["confidence"].get<std::string>() << "] " << f["message"].get<std::string>() << "\n";
    for (const auto& step : f["witness"]["path"])
      os << "    " << step["file"].get<std::string>() << ":" << step["line"] << "  " << step["code"].get<std::string>()
         << "\n";
  }
  if (!report["findings"].empty()) os << "\n";
  std::size_t total = 0;
  for (const auto& [rule, s] : report["summary"].items()) {
    os << std::left << std::setw(16) << rule << " must " << s["must"] << "  maybe " << s["maybe"] << "\n";
    total += s["must"].get<std::size_t>() + s["maybe"].get<std::size_t>();
  }
  os << total << (total == 1 ? " finding\n" : " findings\n");
  return os.str();
}

std::string render_rows(const std::vector<query::ResultRow>& rows, const CodeGraph& graph, ReportFormat format) {
  if (format == ReportFormat::Json) return query::rows_to_json(rows).dump(2) + "\n";
  std::ostringstream os;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "row " << (i + 1) << "\n";
    for (const auto& [name, value] : rows[i].values) {
      os << "  " << name << ": ";
      if (auto uid = std::get_if<Uid>(&value)) {
        os << node_brief(graph, *uid) << "\n";
      } else if (auto w = std::get_if<query::FlowWitness>(&value)) {
        os << (w->must ? "flow (all paths)" : "flow (some path)") << "\n";
        for (Uid u : w->path) os << "      " << node_brief(graph, u) << "\n";
      } else {
        os << std::get<std::string>(value) << "\n";
      }
    }
  }
  os << rows.size() << (rows.size() == 1 ? " row\n" : " rows\n");
  return os.str();
}

std::string render_score(const library::CorpusScore& score, ReportFormat format) {
  if (format == ReportFormat::Json) return library::score_to_json(score).dump(2) + "\n";
  std::ostringstream os;
  os << std::left << std::setw(16) << "rule" << std::right << std::setw(6) << "tp" << std::setw(6) << "fp"
     << std::setw(10) << "expected" << std::setw(12) << "precision" << std::setw(10) << "recall" << "\n";
  auto block = [&](const char* title, const std::map<std::string, library::RuleScore>& m) {
    os << title << "\n";
    for (const auto& [rule, s] : m)
      os << std::left << std::setw(16) << ("  " + rule) << std::right << std::setw(6) << s.true_positives
         << std::setw(6) << s.false_positives << std::setw(10) << s.expected << std::setw(11) << std::fixed
         << std::setprecision(2) << s.precision << "%" << std::setw(9) << s.recall << "%\n";
  };
  block("must", score.must);
  block("must+maybe", score.all);
  return os.str();
}

}  // namespace cpgscan
