#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cpgscan/cpg/code_graph.hpp"
#include "cpgscan/query/plan.hpp"
#include "cpgscan/store/graph_store.hpp"

namespace cpgscan::query {

// A concrete node sequence demonstrating a flow. `kinds[i]` is the kind of the
// edge from path[i] to path[i+1].
struct FlowWitness {
  std::vector<Uid> path;
  std::vector<EdgeKind> kinds;
  bool barrier_checked = false;
  // Holds on every path, not just this one.
  bool must = false;

  bool operator==(const FlowWitness&) const = default;
  auto operator<=>(const FlowWitness&) const = default;
};

using RowValue = std::variant<Uid, FlowWitness, std::string>;

struct ResultRow {
  std::vector<std::pair<std::string, RowValue>> values;  // select order

  bool operator==(const ResultRow&) const = default;
  const RowValue* get(const std::string& name) const;
};

struct EngineOptions {
  std::size_t max_depth = 512;
  // Calls that release the object passed to them. Used by the object modes
  // to recognize accesses and releases.
  std::set<std::string> deallocators = {"free"};
  // Unknown external callees taking a pointer count as using and releasing it.
  bool pessimistic_externals = false;
};

Json row_to_json(const ResultRow& row);
Json rows_to_json(const std::vector<ResultRow>& rows);

// Evaluates a node predicate on one statement. Throws Error(Type) on an
// unusable regular expression.
bool eval_node_predicate(const NodePredicate& pred, Uid uid, const CodeGraph& graph);

// Nodes of a binding type (Call, Statement or Expression), ascending.
std::vector<Uid> nodes_of_type(const std::string& type, const CodeGraph& graph);

// Shortest data-flow witness for every (source, sink) pair joined by DFG and
// CG edges (declaration-only edges excluded) along a path that avoids every
// barrier node. Pairs in one function must also be ordered by control flow;
// pairs in different functions need a call chain between the functions.
std::vector<FlowWitness> taint_reachability(const std::vector<Uid>& sources, const std::vector<Uid>& sinks,
                                            const std::set<Uid>& barrier, const CodeGraph& graph,
                                            std::size_t max_depth = 512);

// The declaration that `var` at `uid` refers to, resolved through data flow
// and then to the declaration of the alias representative. Throws
// NoDeclaration for variables declared nowhere in the project.
Uid resolve_declaration(Uid uid, const std::string& var, const CodeGraph& graph);

class Engine {
 public:
  explicit Engine(const CodeGraph& graph, EngineOptions options = {});
  // Binds contexts through the store cache.
  explicit Engine(const GraphStore& store, EngineOptions options = {});

  std::vector<ResultRow> execute(const QueryPlan& plan) const;

  const CodeGraph& graph() const { return *graph_; }
  const EngineOptions& options() const { return options_; }

 private:
  std::vector<Uid> bind(const std::string& type, const std::vector<FilterStep>& filters, const std::string& binding) const;

  std::shared_ptr<const CodeGraph> owned_;
  const CodeGraph* graph_;
  const GraphStore* store_ = nullptr;
  EngineOptions options_;
};

// Parses, translates and executes in one step.
std::vector<ResultRow> run_query(const std::string& vql, const Engine& engine);

}  // namespace cpgscan::query
