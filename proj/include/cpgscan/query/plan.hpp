#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpgscan/query/query_ast.hpp"

namespace cpgscan::query {

// What a node predicate looks at.
enum class Subject { Function, Code, File, Line };
enum class Match { Equals, Contains, Regex, Between };

// A test on one statement node. `Function` subjects hold when any callee of
// the statement satisfies the match; Equals on Function is the classic
// ContainsFunctionCall.
struct NodePredicate {
  Subject subject = Subject::Function;
  Match match = Match::Equals;
  std::vector<std::string> strings;
  std::vector<std::int64_t> ints;

  bool operator==(const NodePredicate&) const = default;
  // Stable text with sorted arguments, used as a cache key.
  std::string canonical() const;
};

struct ContextStep {
  std::string binding;
  std::string type;  // Call | Statement | Expression

  bool operator==(const ContextStep&) const = default;
};

struct FilterStep {
  std::string binding;
  NodePredicate predicate;
  bool negated = false;

  bool operator==(const FilterStep&) const = default;
};

// How a flow between source and sink is decided.
enum class FlowMode {
  Taint,       // data flow over DFG/CG, validated by control flow
  SameObject,  // control flow where both ends act on the same declared object
  Avoids,      // control flow from source to exit avoiding every sink on that object
};

struct FlowStep {
  std::string name;
  std::string source;
  std::string sink;
  std::optional<std::string> barrier;
  FlowMode mode = FlowMode::Taint;

  bool operator==(const FlowStep&) const = default;
};

// One conjunction of filters and flows. A plan with several terms is their union.
struct PlanTerm {
  std::vector<FilterStep> filters;
  std::vector<FlowStep> flows;

  bool operator==(const PlanTerm&) const = default;
};

struct SelectStep {
  bool is_string = false;
  std::string text;

  bool operator==(const SelectStep&) const = default;
};

struct QueryPlan {
  std::vector<ContextStep> contexts;
  std::vector<PlanTerm> terms;  // never empty
  std::vector<SelectStep> projection;

  bool operator==(const QueryPlan&) const = default;

  const ContextStep* context(const std::string& binding) const;
};

// Type-checks and lowers a parsed query. Throws Error(ErrorCode::Type).
QueryPlan translate(const QueryAst& ast);

// The plan as a fluent API call chain, one call per line.
std::string render_fluent(const QueryPlan& plan);

// Fluent builder mirroring the rendered chain, for hand-encoding plans.
class PlanBuilder {
 public:
  PlanBuilder& from(const std::string& binding, const std::string& type);
  PlanBuilder& where(const std::string& binding, NodePredicate p, bool negated = false);
  PlanBuilder& flow(FlowStep step);
  PlanBuilder& or_();
  PlanBuilder& select(std::vector<std::string> bindings);
  QueryPlan build() const { return plan_; }

 private:
  QueryPlan plan_{{}, {PlanTerm{}}, {}};
};

NodePredicate contains_function_call(const std::string& name);

}  // namespace cpgscan::query
