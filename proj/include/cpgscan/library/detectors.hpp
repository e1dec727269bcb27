#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cpgscan/query/engine.hpp"

namespace cpgscan::library {

enum class RuleId { CWE401, CWE415, CWE416, CodeInjection, MlTaint };
enum class Confidence { Must, Maybe };

const char* to_string(RuleId id);
const char* to_string(Confidence c);
// Accepts the report names ("CWE401", "CODE_INJECTION", ...) and the rule file
// names ("cwe401", "injection", ...). Throws InvalidArgument.
RuleId rule_from_string(const std::string& s);

inline const std::vector<RuleId> kShippedRules = {RuleId::CWE401, RuleId::CWE415, RuleId::CWE416,
                                                  RuleId::CodeInjection};

struct RuleConfig {
  std::set<std::string> allocators = {"malloc", "calloc", "realloc"};
  std::set<std::string> deallocators = {"free"};
  std::set<std::string> sources = {"input", "gets", "recv"};
  std::set<std::string> sinks = {"exec", "system"};
  std::set<std::string> sanitizers;
  bool pessimistic_externals = false;

  // Throws InvalidArgument when allocators and deallocators overlap.
  void validate() const;
  query::EngineOptions engine_options() const;
};

struct Finding {
  RuleId rule = RuleId::CWE401;
  Confidence confidence = Confidence::Maybe;
  query::FlowWitness witness;
  std::string message;
  Span primary_location;  // the witness head

  bool operator==(const Finding&) const = default;
};

// Stable report order: location, rule, witness.
void sort_findings(std::vector<Finding>& findings);

// The shipped rule text, from rules/<name>.vql.
const std::string& rule_source(RuleId id);
// Rule text with $allocators, $deallocators, $sources, $sinks and
// $sanitizers replaced by anchored alternations of the configured names.
std::string instantiate_rule(const std::string& text, const RuleConfig& config);

// Runs a shipped rule through the generic query engine.
std::vector<Finding> run_rule(RuleId id, const query::Engine& engine, const RuleConfig& config);

// Detector procedures written directly against the graph.
std::vector<Finding> detect_cwe401(const CodeGraph& graph, const RuleConfig& config);
std::vector<Finding> detect_cwe415(const CodeGraph& graph, const RuleConfig& config);
std::vector<Finding> detect_cwe416(const CodeGraph& graph, const RuleConfig& config);
// The injection plan built through the fluent builder.
std::vector<Finding> detect_injection(const CodeGraph& graph, const RuleConfig& config);
std::vector<Finding> detect(RuleId id, const CodeGraph& graph, const RuleConfig& config);

// Ground truth: case id (relative path without extension) -> expected
// (rule, line) pairs.
struct GroundTruth {
  std::map<std::string, std::set<std::pair<std::string, int>>> cases;
};
GroundTruth truth_from_json(const Json& j);

struct RuleScore {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t expected = 0;
  double precision = 100.0;  // percent; 100 when nothing was predicted
  double recall = 100.0;     // percent; 100 when nothing was expected
};

struct CorpusScore {
  std::map<std::string, RuleScore> must;  // Must findings only
  std::map<std::string, RuleScore> all;   // Must and Maybe
};

// Case id of a source path: the path without its extension.
std::string case_id(const std::string& file);
// Throws UnknownCase for a finding whose file is not a corpus case.
CorpusScore score_corpus(const std::vector<Finding>& findings, const GroundTruth& truth);
Json score_to_json(const CorpusScore& score);

}  // namespace cpgscan::library
