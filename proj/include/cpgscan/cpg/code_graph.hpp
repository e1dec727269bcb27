#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpgscan/error.hpp"
#include "cpgscan/statement.hpp"

namespace cpgscan {

enum class EdgeKind { CFG = 0, DFG = 1, CG = 2 };
inline constexpr std::size_t kEdgeKindCount = 3;

const char* to_string(EdgeKind kind);
EdgeKind edge_kind_from_string(const std::string& s);

// A directed, labeled edge between two statements.
//
// DFG edges carry the variable they transport (`var`) and the uid of that
// variable's declaration (`def_site`). Two flavors exist: reaching-definition
// edges (the source is a definition of `var` that reaches the use along the
// CFG) and declaration edges (the source is the declaration, the target any
// later occurrence of the variable). An edge that is only present as a
// declaration edge has `decl_only` set; taint traversal ignores those.
struct FlowEdge {
  Uid src = 0;
  Uid dst = 0;
  EdgeKind kind = EdgeKind::CFG;
  std::optional<std::string> var;
  std::optional<Uid> def_site;
  std::optional<bool> branch;
  bool decl_only = false;

  auto operator<=>(const FlowEdge&) const = default;
};

// Pointer variables of one function bound together through plain assignment.
struct AliasSet {
  std::string representative;
  std::vector<std::string> members;  // sorted
  std::string scope;                 // function name
  std::string file;

  bool operator==(const AliasSet&) const = default;
};

// Extraction diagnostics. These travel with the graph but are not part of its
// identity: equality and version only cover nodes, edges and alias sets.
struct GraphDiagnostics {
  std::size_t files = 0;
  std::size_t functions = 0;
  std::size_t unreachable = 0;
  std::vector<std::string> unresolved_callees;
  std::vector<std::string> warnings;
  std::vector<std::string> parse_errors;
  bool partial = false;
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(Uid uid) : Error(ErrorCode::UnknownNode, "unknown node " + std::to_string(uid)) {}
};

class DanglingEdge : public Error {
 public:
  explicit DanglingEdge(const FlowEdge& e);
};

// The compressed code property graph. Immutable once constructed; every query
// method is safe to call from several threads.
class CodeGraph {
 public:
  CodeGraph();
  // Sorts and validates the inputs, builds the indices and the version hash.
  // Throws DanglingEdge when an edge endpoint is missing.
  CodeGraph(std::vector<StatementNode> nodes, std::vector<FlowEdge> edges, std::vector<AliasSet> aliases,
            GraphDiagnostics diagnostics = {});

  const std::vector<StatementNode>& nodes() const { return nodes_; }
  const std::vector<FlowEdge>& edges() const { return edges_; }
  const std::vector<AliasSet>& aliases() const { return aliases_; }
  const GraphDiagnostics& diagnostics() const { return diagnostics_; }
  const std::string& version() const { return version_; }

  bool contains(Uid uid) const { return index_.count(uid) != 0; }
  const StatementNode* find(Uid uid) const;
  const StatementNode& node(Uid uid) const;

  // Edges leaving/entering `uid` of one kind, in edge order.
  std::vector<const FlowEdge*> out_edges(Uid uid, EdgeKind kind) const;
  std::vector<const FlowEdge*> in_edges(Uid uid, EdgeKind kind) const;
  // Distinct neighbor uids, ascending.
  std::vector<Uid> successors(Uid uid, EdgeKind kind) const;
  std::vector<Uid> predecessors(Uid uid, EdgeKind kind) const;

  std::span<const Uid> call_sites(const std::string& callee) const;
  std::span<const Uid> file_nodes(const std::string& file) const;
  std::vector<std::string> files() const;

  // Entry/Exit of a function, 0 when the function is not defined.
  Uid entry_of(const std::string& fn) const;
  Uid exit_of(const std::string& fn) const;
  std::span<const Uid> function_nodes(const std::string& fn) const;
  std::vector<std::string> function_names() const;

  const AliasSet* alias_set(const std::string& file, const std::string& fn, const std::string& var) const;

  std::size_t count(StmtKind kind) const;
  std::size_t count(EdgeKind kind) const;

  bool operator==(const CodeGraph& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_ && aliases_ == other.aliases_;
  }

 private:
  void build_indices();

  std::vector<StatementNode> nodes_;
  std::vector<FlowEdge> edges_;
  std::vector<AliasSet> aliases_;
  GraphDiagnostics diagnostics_;
  std::string version_;

  std::unordered_map<Uid, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> out_[kEdgeKindCount];
  std::vector<std::vector<std::uint32_t>> in_[kEdgeKindCount];
  std::unordered_map<std::string, std::vector<Uid>> callee_index_;
  std::unordered_map<std::string, std::vector<Uid>> file_index_;
  std::unordered_map<std::string, std::vector<Uid>> function_index_;
  std::unordered_map<std::string, std::pair<Uid, Uid>> entry_exit_;
  std::unordered_map<std::string, std::uint32_t> alias_index_;
};

}  // namespace cpgscan
