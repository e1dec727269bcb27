#pragma once

#include <array>
#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <shared_mutex>

#include "cpgscan/cpg/code_graph.hpp"
#include "cpgscan/store/query_cache.hpp"

namespace cpgscan {

struct StoreStats {
  std::array<std::size_t, 5> nodes_by_kind{};  // indexed by StmtKind
  std::array<std::size_t, kEdgeKindCount> edges_by_kind{};
  std::size_t nodes = 0;
  std::size_t edges = 0;

  bool operator==(const StoreStats&) const = default;
};

struct StoreOptions {
  bool cache_enabled = true;
  std::size_t cache_entries = 4096;
  std::optional<std::filesystem::path> cache_sidecar;
};

// In-process property graph store. Writes are batched: each upsert call is one
// storage transaction regardless of batch size. Readers work on immutable
// CodeGraph snapshots, rebuilt lazily after a write.
class GraphStore {
 public:
  explicit GraphStore(StoreOptions options = {});
  explicit GraphStore(const CodeGraph& graph, StoreOptions options = {});

  // Inserts or replaces nodes (by uid) and edges (by value). Edge endpoints
  // must exist once the batch is applied; otherwise DanglingEdge is thrown
  // and the store is left untouched.
  StoreStats bulk_upsert(const std::vector<StatementNode>& nodes, const std::vector<FlowEdge>& edges,
                         const std::vector<AliasSet>& aliases = {});
  StoreStats upsert_node(const StatementNode& node);
  StoreStats upsert_edge(const FlowEdge& edge);
  void set_diagnostics(GraphDiagnostics diagnostics);

  StoreStats stats() const;
  std::size_t transactions() const { return transactions_.load(); }

  std::shared_ptr<const CodeGraph> snapshot() const;
  std::string version() const { return snapshot()->version(); }

  using Evaluator = std::function<std::vector<Uid>(const CodeGraph&)>;
  // Result of `evaluator` on the current snapshot, memoized under
  // `predicate_key` and the snapshot version. The result is sorted.
  std::vector<Uid> nodes_where(const std::string& predicate_key, const Evaluator& evaluator) const;
  std::size_t evaluations() const { return evaluations_.load(); }

  std::vector<Uid> successors(Uid uid, EdgeKind kind) const { return snapshot()->successors(uid, kind); }
  std::vector<Uid> predecessors(Uid uid, EdgeKind kind) const { return snapshot()->predecessors(uid, kind); }

  bool cache_enabled() const { return options_.cache_enabled; }
  QueryCache& cache() const { return *cache_; }

 private:
  StoreOptions options_;
  mutable std::shared_mutex mu_;
  std::map<Uid, StatementNode> nodes_;
  std::set<FlowEdge> edges_;
  std::vector<AliasSet> aliases_;
  GraphDiagnostics diagnostics_;
  mutable std::shared_ptr<const CodeGraph> snapshot_;
  std::atomic<std::size_t> transactions_{0};
  mutable std::atomic<std::size_t> evaluations_{0};
  std::unique_ptr<QueryCache> cache_;
};

// Snapshot directory layout: nodes.jsonl, edges.jsonl, meta.json.
struct GraphSnapshot {
  std::filesystem::path nodes_path;
  std::filesystem::path edges_path;
  std::filesystem::path meta_path;
  std::string version;
  Json stats;
};

GraphSnapshot save(const CodeGraph& graph, const std::filesystem::path& dir);
// Throws VersionMismatch when the files hash differently than meta.json
// records, CorruptSnapshot on unreadable or malformed content.
CodeGraph load(const std::filesystem::path& dir);
// Ingests hand-written or foreign nodes.jsonl/edges.jsonl without a version
// check; meta.json is optional.
CodeGraph import_jsonl(const std::filesystem::path& dir);

}  // namespace cpgscan
