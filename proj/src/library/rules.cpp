#include <algorithm>
#include <map>

#include "internal.hpp"

namespace cpgscan::library {

namespace embedded {
extern const std::map<std::string, std::string> kRules;
}

namespace {

const char* file_name(RuleId id) {
  switch (id) {
    case RuleId::CWE401: return "cwe401";
    case RuleId::CWE415: return "cwe415";
    case RuleId::CWE416: return "cwe416";
    case RuleId::CodeInjection: return "injection";
    case RuleId::MlTaint: return "ml_taint";
  }
  return "";
}

// ^(a|b)$ over the names, or a pattern that matches nothing.
std::string alternation(const std::set<std::string>& names) {
  if (names.empty()) return "(?!)";
  std::string out = "^(";
  bool first = true;
  for (const auto& n : names) {
    if (!first) out += '|';
    first = false;
    for (char c : n) {
      if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) out += '\\';
      out += c;
    }
  }
  return out + ")$";
}

std::string dsl_escaped(const std::string& s) {
  std::string q = query::quote(s);
  return q.substr(1, q.size() - 2);
}

std::string describe(RuleId rule, const CodeGraph& g, const query::FlowWitness& w) {
  const auto& tail = g.node(w.path.back()).span;
  std::string at = tail.file + ":" + std::to_string(tail.line);
  bool all = w.must;
  switch (rule) {
    case RuleId::CWE401:
      return std::string("allocation is not released on ") + (all ? "any path" : "some path") + " (reaches " + at + ")";
    case RuleId::CWE415: return "memory released here is released again at " + at;
    case RuleId::CWE416: return "memory released here is used at " + at;
    case RuleId::CodeInjection: return "untrusted input reaches command sink at " + at;
    case RuleId::MlTaint: return "predicted source reaches predicted sink at " + at;
  }
  return "";
}

}  // namespace

const char* to_string(RuleId id) {
  switch (id) {
    case RuleId::CWE401: return "CWE401";
    case RuleId::CWE415: return "CWE415";
    case RuleId::CWE416: return "CWE416";
    case RuleId::CodeInjection: return "CODE_INJECTION";
    case RuleId::MlTaint: return "ML_TAINT";
  }
  return "";
}

const char* to_string(Confidence c) { return c == Confidence::Must ? "must" : "maybe"; }

RuleId rule_from_string(const std::string& s) {
  for (RuleId id : {RuleId::CWE401, RuleId::CWE415, RuleId::CWE416, RuleId::CodeInjection, RuleId::MlTaint})
    if (s == to_string(id) || s == file_name(id)) return id;
  throw Error(ErrorCode::InvalidArgument, "unknown rule '" + s + "'");
}

void RuleConfig::validate() const {
  for (const auto& a : allocators)
    if (deallocators.count(a)) throw Error(ErrorCode::InvalidArgument, "'" + a + "' is both allocator and deallocator");
}

query::EngineOptions RuleConfig::engine_options() const {
  query::EngineOptions o;
  o.deallocators = deallocators;
  o.pessimistic_externals = pessimistic_externals;
  return o;
}

void sort_findings(std::vector<Finding>& findings) {
  auto key = [](const Finding& f) {
    return std::make_tuple(f.primary_location.file, f.primary_location.line, f.primary_location.col,
                           static_cast<int>(f.rule), f.witness.path, f.confidence);
  };
  std::sort(findings.begin(), findings.end(), [&](const Finding& a, const Finding& b) { return key(a) < key(b); });
  findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
}

const std::string& rule_source(RuleId id) {
  auto it = embedded::kRules.find(file_name(id));
  if (it == embedded::kRules.end()) throw Error(ErrorCode::InvalidArgument, std::string("no shipped rule for ") + to_string(id));
  return it->second;
}

std::string instantiate_rule(const std::string& text, const RuleConfig& config) {
  const std::pair<const char*, const std::set<std::string>*> vars[] = {
      {"$allocators", &config.allocators}, {"$deallocators", &config.deallocators}, {"$sources", &config.sources},
      {"$sinks", &config.sinks},           {"$sanitizers", &config.sanitizers}};
  std::string out = text;
  for (const auto& [name, set] : vars) {
    std::string replacement = dsl_escaped(alternation(*set));
    for (auto pos = out.find(name); pos != std::string::npos; pos = out.find(name, pos + replacement.size()))
      out.replace(pos, std::string_view(name).size(), replacement);
  }
  return out;
}

std::vector<Finding> findings_from_rows(RuleId rule, const std::vector<query::ResultRow>& rows, const CodeGraph& g) {
  std::vector<Finding> out;
  for (const auto& r : rows)
    for (const auto& [_, v] : r.values)
      if (auto w = std::get_if<query::FlowWitness>(&v)) {
        Finding f;
        f.rule = rule;
        f.witness = *w;
        f.confidence = w->must ? Confidence::Must : Confidence::Maybe;
        f.primary_location = g.node(w->path.front()).span;
        f.message = describe(rule, g, *w);
        out.push_back(std::move(f));
        break;
      }
  sort_findings(out);
  return out;
}

Finding make_finding(RuleId rule, query::FlowWitness w, const CodeGraph& g) {
  Finding f;
  f.rule = rule;
  f.confidence = w.must ? Confidence::Must : Confidence::Maybe;
  f.primary_location = g.node(w.path.front()).span;
  f.message = describe(rule, g, w);
  f.witness = std::move(w);
  return f;
}

std::vector<Finding> run_rule(RuleId id, const query::Engine& engine, const RuleConfig& config) {
  auto rows = query::run_query(instantiate_rule(rule_source(id), config), engine);
  return findings_from_rows(id, rows, engine.graph());
}

std::vector<Finding> detect_injection(const CodeGraph& graph, const RuleConfig& config) {
  using namespace query;
  auto fn = [](const std::set<std::string>& names) {
    return NodePredicate{Subject::Function, Match::Regex, {alternation(names)}, {}};
  };
  auto plan = PlanBuilder()
                  .from("a", "Call")
                  .from("b", "Call")
                  .from("c", "Call")
                  .where("a", fn(config.sources))
                  .where("b", fn(config.sinks))
                  .where("c", fn(config.sanitizers))
                  .flow({"flow", "a", "b", std::string("c"), FlowMode::Taint})
                  .select({"a", "b", "flow"})
                  .build();
  return findings_from_rows(RuleId::CodeInjection, Engine(graph, config.engine_options()).execute(plan), graph);
}

std::vector<Finding> detect(RuleId id, const CodeGraph& graph, const RuleConfig& config) {
  switch (id) {
    case RuleId::CWE401: return detect_cwe401(graph, config);
    case RuleId::CWE415: return detect_cwe415(graph, config);
    case RuleId::CWE416: return detect_cwe416(graph, config);
    case RuleId::CodeInjection: return detect_injection(graph, config);
    case RuleId::MlTaint: break;
  }
  throw Error(ErrorCode::InvalidArgument, "ML_TAINT findings come from the ML scan");
}

}  // namespace cpgscan::library
