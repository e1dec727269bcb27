#include "cpgscan/store/graph_store.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "cpgscan/cpg/graph_json.hpp"

namespace cpgscan {

namespace {

StoreStats stats_of(const std::map<Uid, StatementNode>& nodes, const std::set<FlowEdge>& edges) {
  StoreStats s;
  for (const auto& [_, n] : nodes) ++s.nodes_by_kind[static_cast<std::size_t>(n.kind)];
  for (const auto& e : edges) ++s.edges_by_kind[static_cast<std::size_t>(e.kind)];
  s.nodes = nodes.size();
  s.edges = edges.size();
  return s;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::CorruptSnapshot, "missing snapshot file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  out << bytes;
  if (!out.flush()) throw Error(ErrorCode::Io, "short write on " + p.string());
}

template <typename T, typename F>
std::vector<T> parse_lines(const std::string& bytes, const std::string& name, F from_json) {
  std::vector<T> out;
  if (!bytes.empty() && bytes.back() != '\n')
    throw Error(ErrorCode::CorruptSnapshot, name + ": truncated (no trailing newline)");
  std::size_t start = 0, line = 1;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    std::string_view text(bytes.data() + start, end - start);
    try {
      out.push_back(from_json(Json::parse(text)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::CorruptSnapshot, name + ":" + std::to_string(line) + ": " + e.what());
    }
    start = end + 1;
    ++line;
  }
  return out;
}

CodeGraph read_snapshot(const std::filesystem::path& dir, bool verify) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::Io, "no snapshot directory " + dir.string());
  const std::string nodes_bytes = read_file(dir / "nodes.jsonl");
  const std::string edges_bytes = read_file(dir / "edges.jsonl");
  Json meta = Json::object();
  if (verify || std::filesystem::exists(dir / "meta.json")) {
    meta = Json::parse(read_file(dir / "meta.json"), nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) throw Error(ErrorCode::CorruptSnapshot, "meta.json is not JSON");
  }
  std::vector<AliasSet> aliases;
  try {
    aliases = aliases_from_json(meta.value("aliases", Json::array()));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::CorruptSnapshot, std::string("meta.json aliases: ") + e.what());
  }
  if (verify) {
    const std::string recorded = meta.value("version", "");
    const std::string actual = graph_version(nodes_bytes, edges_bytes, aliases);
    if (recorded != actual)
      throw Error(ErrorCode::VersionMismatch,
                  "snapshot " + dir.string() + " was modified: version " + actual + " != recorded " + recorded);
  }
  auto nodes = parse_lines<StatementNode>(nodes_bytes, "nodes.jsonl", node_from_json);
  auto edges = parse_lines<FlowEdge>(edges_bytes, "edges.jsonl", edge_from_json);
  GraphDiagnostics diag = diagnostics_from_json(meta.value("stats", Json::object()));
  try {
    return CodeGraph(std::move(nodes), std::move(edges), std::move(aliases), std::move(diag));
  } catch (const DanglingEdge& e) {
    throw Error(ErrorCode::CorruptSnapshot, std::string("edges.jsonl: ") + e.what());
  }
}

}  // namespace

GraphStore::GraphStore(StoreOptions options)
    : options_(std::move(options)),
      cache_(std::make_unique<QueryCache>(options_.cache_entries, options_.cache_sidecar)) {}

GraphStore::GraphStore(const CodeGraph& graph, StoreOptions options) : GraphStore(std::move(options)) {
  bulk_upsert(graph.nodes(), graph.edges(), graph.aliases());
  set_diagnostics(graph.diagnostics());
}

StoreStats GraphStore::bulk_upsert(const std::vector<StatementNode>& nodes, const std::vector<FlowEdge>& edges,
                                   const std::vector<AliasSet>& aliases) {
  std::unique_lock lock(mu_);
  std::set<Uid> incoming;
  for (const auto& n : nodes) incoming.insert(n.uid);
  for (const auto& e : edges)
    for (Uid end : {e.src, e.dst})
      if (!incoming.count(end) && !nodes_.count(end)) throw DanglingEdge(e);
  ++transactions_;
  for (const auto& n : nodes) nodes_[n.uid] = n;
  edges_.insert(edges.begin(), edges.end());
  for (const auto& a : aliases)
    if (std::find(aliases_.begin(), aliases_.end(), a) == aliases_.end()) aliases_.push_back(a);
  snapshot_.reset();
  return stats_of(nodes_, edges_);
}

StoreStats GraphStore::upsert_node(const StatementNode& node) { return bulk_upsert({node}, {}); }

StoreStats GraphStore::upsert_edge(const FlowEdge& edge) { return bulk_upsert({}, {edge}); }

void GraphStore::set_diagnostics(GraphDiagnostics diagnostics) {
  std::unique_lock lock(mu_);
  diagnostics_ = std::move(diagnostics);
  snapshot_.reset();
}

StoreStats GraphStore::stats() const {
  std::shared_lock lock(mu_);
  return stats_of(nodes_, edges_);
}

std::shared_ptr<const CodeGraph> GraphStore::snapshot() const {
  {
    std::shared_lock lock(mu_);
    if (snapshot_) return snapshot_;
  }
  std::unique_lock lock(mu_);
  if (!snapshot_) {
    std::vector<StatementNode> nodes;
    nodes.reserve(nodes_.size());
    for (const auto& [_, n] : nodes_) nodes.push_back(n);
    snapshot_ = std::make_shared<const CodeGraph>(std::move(nodes), std::vector<FlowEdge>(edges_.begin(), edges_.end()),
                                                  aliases_, diagnostics_);
  }
  return snapshot_;
}

std::vector<Uid> GraphStore::nodes_where(const std::string& predicate_key, const Evaluator& evaluator) const {
  auto graph = snapshot();
  auto evaluate = [&] {
    ++evaluations_;
    auto v = evaluator(*graph);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  if (!options_.cache_enabled) return evaluate();
  const std::string key = QueryCache::make_key(predicate_key, graph->version());
  if (auto hit = cache_->lookup(key)) return std::move(*hit);
  auto v = evaluate();
  cache_->insert(key, v);
  return v;
}

GraphSnapshot save(const CodeGraph& graph, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  GraphSnapshot snap;
  snap.nodes_path = dir / "nodes.jsonl";
  snap.edges_path = dir / "edges.jsonl";
  snap.meta_path = dir / "meta.json";
  const std::string nodes = nodes_jsonl(graph.nodes());
  const std::string edges = edges_jsonl(graph.edges());
  snap.version = graph_version(nodes, edges, graph.aliases());
  OrderedJson stats = stats_to_json(graph);
  OrderedJson meta;
  meta["version"] = snap.version;
  meta["stats"] = stats;
  meta["aliases"] = aliases_to_json(graph.aliases());
  // meta.json last: a crash mid-save leaves a snapshot that fails verification.
  std::filesystem::remove(snap.meta_path, ec);
  write_file(snap.nodes_path, nodes);
  write_file(snap.edges_path, edges);
  write_file(snap.meta_path, meta.dump(2) + "\n");
  snap.stats = Json::parse(stats.dump());
  return snap;
}

CodeGraph load(const std::filesystem::path& dir) { return read_snapshot(dir, true); }

CodeGraph import_jsonl(const std::filesystem::path& dir) { return read_snapshot(dir, false); }

}  // namespace cpgscan
