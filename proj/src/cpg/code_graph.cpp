#include "cpgscan/cpg/code_graph.hpp"

#include <algorithm>
#include <set>

#include "cpgscan/cpg/graph_json.hpp"

namespace cpgscan {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Lex: return "LexError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Lowering: return "LoweringError";
    case ErrorCode::EmptyProject: return "EmptyProject";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::Type: return "TypeError";
    case ErrorCode::NoDeclaration: return "NoDeclaration";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

const char* to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::Entry: return "entry";
    case StmtKind::Exit: return "exit";
    case StmtKind::Plain: return "plain";
    case StmtKind::Predicate: return "predicate";
    case StmtKind::FunctionDecl: return "fndecl";
  }
  return "plain";
}

StmtKind stmt_kind_from_string(const std::string& s) {
  if (s == "entry") return StmtKind::Entry;
  if (s == "exit") return StmtKind::Exit;
  if (s == "plain") return StmtKind::Plain;
  if (s == "predicate") return StmtKind::Predicate;
  if (s == "fndecl") return StmtKind::FunctionDecl;
  throw Error(ErrorCode::CorruptSnapshot, "unknown node kind '" + s + "'");
}

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::CFG: return "CFG";
    case EdgeKind::DFG: return "DFG";
    case EdgeKind::CG: return "CG";
  }
  return "CFG";
}

EdgeKind edge_kind_from_string(const std::string& s) {
  if (s == "CFG") return EdgeKind::CFG;
  if (s == "DFG") return EdgeKind::DFG;
  if (s == "CG") return EdgeKind::CG;
  throw Error(ErrorCode::CorruptSnapshot, "unknown edge kind '" + s + "'");
}

DanglingEdge::DanglingEdge(const FlowEdge& e)
    : Error(ErrorCode::DanglingEdge, std::string("dangling ") + to_string(e.kind) + " edge " + std::to_string(e.src) +
                                         " -> " + std::to_string(e.dst)) {}

CodeGraph::CodeGraph() { build_indices(); }

CodeGraph::CodeGraph(std::vector<StatementNode> nodes, std::vector<FlowEdge> edges, std::vector<AliasSet> aliases,
                     GraphDiagnostics diagnostics)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), aliases_(std::move(aliases)),
      diagnostics_(std::move(diagnostics)) {
  std::sort(nodes_.begin(), nodes_.end(), [](const auto& a, const auto& b) { return a.uid < b.uid; });
  auto dup = std::adjacent_find(nodes_.begin(), nodes_.end(), [](const auto& a, const auto& b) { return a.uid == b.uid; });
  if (dup != nodes_.end()) throw Error(ErrorCode::InvalidArgument, "duplicate node id " + std::to_string(dup->uid));
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  std::sort(aliases_.begin(), aliases_.end(), [](const AliasSet& a, const AliasSet& b) {
    return std::tie(a.file, a.scope, a.representative) < std::tie(b.file, b.scope, b.representative);
  });
  build_indices();
  version_ = graph_version(nodes_jsonl(nodes_), edges_jsonl(edges_), aliases_);
}

void CodeGraph::build_indices() {
  index_.clear();
  index_.reserve(nodes_.size());
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].uid, i);
  for (std::size_t k = 0; k < kEdgeKindCount; ++k) {
    out_[k].assign(nodes_.size(), {});
    in_[k].assign(nodes_.size(), {});
  }
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const FlowEdge& e = edges_[i];
    auto s = index_.find(e.src);
    auto d = index_.find(e.dst);
    if (s == index_.end() || d == index_.end()) throw DanglingEdge(e);
    auto k = static_cast<std::size_t>(e.kind);
    out_[k][s->second].push_back(i);
    in_[k][d->second].push_back(i);
  }
  callee_index_.clear();
  file_index_.clear();
  function_index_.clear();
  entry_exit_.clear();
  for (const auto& n : nodes_) {
    for (const auto& c : n.callees) {
      auto& sites = callee_index_[c];
      if (sites.empty() || sites.back() != n.uid) sites.push_back(n.uid);
    }
    file_index_[n.span.file].push_back(n.uid);
    if (!n.fn.empty()) function_index_[n.fn].push_back(n.uid);
    if (n.kind == StmtKind::Entry) entry_exit_[n.fn].first = n.uid;
    if (n.kind == StmtKind::Exit) entry_exit_[n.fn].second = n.uid;
  }
  alias_index_.clear();
  for (std::uint32_t i = 0; i < aliases_.size(); ++i)
    for (const auto& m : aliases_[i].members) alias_index_.emplace(aliases_[i].scope + '\0' + m, i);
}

const StatementNode* CodeGraph::find(Uid uid) const {
  auto it = index_.find(uid);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const StatementNode& CodeGraph::node(Uid uid) const {
  const StatementNode* n = find(uid);
  if (!n) throw UnknownNode(uid);
  return *n;
}

std::vector<const FlowEdge*> CodeGraph::out_edges(Uid uid, EdgeKind kind) const {
  auto it = index_.find(uid);
  if (it == index_.end()) throw UnknownNode(uid);
  std::vector<const FlowEdge*> out;
  for (auto i : out_[static_cast<std::size_t>(kind)][it->second]) out.push_back(&edges_[i]);
  return out;
}

std::vector<const FlowEdge*> CodeGraph::in_edges(Uid uid, EdgeKind kind) const {
  auto it = index_.find(uid);
  if (it == index_.end()) throw UnknownNode(uid);
  std::vector<const FlowEdge*> out;
  for (auto i : in_[static_cast<std::size_t>(kind)][it->second]) out.push_back(&edges_[i]);
  return out;
}

std::vector<Uid> CodeGraph::successors(Uid uid, EdgeKind kind) const {
  auto it = index_.find(uid);
  if (it == index_.end()) throw UnknownNode(uid);
  std::vector<Uid> out;
  for (auto i : out_[static_cast<std::size_t>(kind)][it->second]) out.push_back(edges_[i].dst);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Uid> CodeGraph::predecessors(Uid uid, EdgeKind kind) const {
  auto it = index_.find(uid);
  if (it == index_.end()) throw UnknownNode(uid);
  std::vector<Uid> out;
  for (auto i : in_[static_cast<std::size_t>(kind)][it->second]) out.push_back(edges_[i].src);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::span<const Uid> CodeGraph::call_sites(const std::string& callee) const {
  auto it = callee_index_.find(callee);
  if (it == callee_index_.end()) return {};
  return it->second;
}

std::span<const Uid> CodeGraph::file_nodes(const std::string& file) const {
  auto it = file_index_.find(file);
  if (it == file_index_.end()) return {};
  return it->second;
}

std::vector<std::string> CodeGraph::files() const {
  std::vector<std::string> out;
  for (const auto& [f, _] : file_index_) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

Uid CodeGraph::entry_of(const std::string& fn) const {
  auto it = entry_exit_.find(fn);
  return it == entry_exit_.end() ? 0 : it->second.first;
}

Uid CodeGraph::exit_of(const std::string& fn) const {
  auto it = entry_exit_.find(fn);
  return it == entry_exit_.end() ? 0 : it->second.second;
}

std::span<const Uid> CodeGraph::function_nodes(const std::string& fn) const {
  auto it = function_index_.find(fn);
  if (it == function_index_.end()) return {};
  return it->second;
}

std::vector<std::string> CodeGraph::function_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : entry_exit_) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

const AliasSet* CodeGraph::alias_set(const std::string& file, const std::string& fn, const std::string& var) const {
  auto it = alias_index_.find(fn + '\0' + var);
  if (it == alias_index_.end()) return nullptr;
  const AliasSet& a = aliases_[it->second];
  return a.file == file ? &a : nullptr;
}

std::size_t CodeGraph::count(StmtKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [kind](const auto& n) { return n.kind == kind; }));
}

std::size_t CodeGraph::count(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [kind](const auto& e) { return e.kind == kind; }));
}

}  // namespace cpgscan
