#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpgscan/query/engine.hpp"

namespace cpgscan::test_support {

// Graph with a few functions, control flow kept inside each function and
// data/call edges anywhere.
inline CodeGraph oracle_graph(std::mt19937_64& rng) {
  static const char* kFns[] = {"main", "helper", "util", ""};
  std::size_t n = 1 + rng() % 50;
  std::vector<StatementNode> nodes;
  Uid next = 1 + static_cast<Uid>(rng() % 100);
  for (std::size_t i = 0; i < n; ++i) {
    StatementNode s;
    s.uid = next;
    next += 1 + static_cast<Uid>(rng() % 5);
    s.kind = static_cast<StmtKind>(rng() % 5);
    s.fn = kFns[rng() % (rng() % 8 == 0 ? 4 : 3)];
    s.span.file = "a.c";
    nodes.push_back(std::move(s));
  }
  std::vector<FlowEdge> edges;
  std::size_t m = rng() % (2 * n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    FlowEdge e;
    const auto& a = nodes[rng() % n];
    const auto& b = nodes[rng() % n];
    e.src = a.uid;
    e.dst = b.uid;
    e.kind = static_cast<EdgeKind>(rng() % 3);
    if (e.kind == EdgeKind::CFG && a.fn != b.fn) continue;
    if (e.kind == EdgeKind::DFG) {
      e.var = "v";
      e.def_site = a.uid;
      e.decl_only = rng() % 5 == 0;
    }
    edges.push_back(e);
  }
  return CodeGraph(std::move(nodes), std::move(edges), {});
}

struct OracleResult {
  std::map<std::pair<Uid, Uid>, std::size_t> pairs;  // shortest hop count
  std::map<std::pair<Uid, Uid>, bool> must;
  bool exhausted = false;
};

// Enumerates every simple path by depth-first search and keeps what survives
// the barrier, the depth cap and the control-flow ordering check.
inline OracleResult enumerate_paths(const CodeGraph& g, const std::set<Uid>& sources, const std::set<Uid>& sinks,
                             const std::set<Uid>& barrier, std::size_t cap) {
  OracleResult r;
  std::size_t budget = 3'000'000;
  std::map<Uid, std::vector<Uid>> flow_adj, cfg_adj;
  std::map<std::string, std::set<std::string>> calls;
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::CFG) cfg_adj[e.src].push_back(e.dst);
    else if (e.kind == EdgeKind::CG || !e.decl_only) flow_adj[e.src].push_back(e.dst);
    if (e.kind == EdgeKind::CG) calls[g.node(e.src).fn].insert(g.node(e.dst).fn);
  }
  std::function<bool(Uid, Uid, std::set<Uid>&)> cfg_path = [&](Uid a, Uid b, std::set<Uid>& seen) {
    if (a == b) return true;
    for (Uid v : cfg_adj[a])
      if (seen.insert(v).second && (v == b || cfg_path(v, b, seen))) return true;
    return false;
  };
  std::function<bool(const std::string&, const std::string&, std::set<std::string>&)> call_path =
      [&](const std::string& a, const std::string& b, std::set<std::string>& seen) {
        for (const auto& h : calls[a])
          if (seen.insert(h).second && (h == b || call_path(h, b, seen))) return true;
        return false;
      };
  auto ordered = [&](Uid s, Uid k) {
    const auto& a = g.node(s).fn;
    const auto& b = g.node(k).fn;
    if (a.empty() || b.empty()) return true;
    std::set<Uid> seen;
    if (a == b) return cfg_path(s, k, seen);
    std::set<std::string> s1, s2;
    return call_path(a, b, s1) || call_path(b, a, s2);
  };
  // Some simple control path from u ends without meeting k.
  std::function<bool(Uid, Uid, std::vector<Uid>&)> escapes = [&](Uid u, Uid k, std::vector<Uid>& path) {
    if (u == k || std::find(path.begin(), path.end(), u) != path.end()) return false;
    if (barrier.count(u) || g.node(u).kind == StmtKind::Exit || cfg_adj[u].empty()) return true;
    path.push_back(u);
    bool found = false;
    for (Uid v : cfg_adj[u])
      if (escapes(v, k, path)) {
        found = true;
        break;
      }
    path.pop_back();
    return found;
  };

  std::vector<Uid> path;
  std::function<void(Uid)> dfs = [&](Uid u) {
    if (budget-- == 0) throw std::length_error("budget");
    path.push_back(u);
    if (sinks.count(u)) {
      auto key = std::make_pair(path.front(), u);
      auto it = r.pairs.find(key);
      if (it == r.pairs.end() || it->second > path.size() - 1) r.pairs[key] = path.size() - 1;
    }
    if (path.size() - 1 < cap)
      for (Uid v : flow_adj[u])
        if (!barrier.count(v) && std::find(path.begin(), path.end(), v) == path.end()) dfs(v);
    path.pop_back();
  };
  try {
    for (Uid s : sources)
      if (!barrier.count(s)) dfs(s);
  } catch (const std::length_error&) {
    r.exhausted = true;
    return r;
  }
  for (auto it = r.pairs.begin(); it != r.pairs.end();) {
    if (!ordered(it->first.first, it->first.second)) {
      it = r.pairs.erase(it);
      continue;
    }
    auto [s, k] = it->first;
    bool must = false;
    if (g.node(s).fn == g.node(k).fn) {
      if (s == k) {
        must = true;
      } else {
        must = !cfg_adj[s].empty();
        for (Uid v : cfg_adj[s]) {
          std::vector<Uid> p;
          must = must && !escapes(v, k, p);
        }
      }
    }
    r.must[it->first] = must;
    ++it;
  }
  return r;
}

inline std::set<Uid> sample(std::mt19937_64& rng, const CodeGraph& g, unsigned percent) {
  std::set<Uid> out;
  for (const auto& n : g.nodes())
    if (rng() % 100 < percent) out.insert(n.uid);
  return out;
}

inline bool has_edge(const CodeGraph& g, Uid a, Uid b, EdgeKind k) {
  for (const FlowEdge* e : g.out_edges(a, k))
    if (e->dst == b && !(k == EdgeKind::DFG && e->decl_only)) return true;
  return false;
}

}  // namespace cpgscan::test_support
