#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "cpgscan/query/object_model.hpp"
#include "internal.hpp"

namespace cpgscan::library {

namespace {

using query::FlowWitness;
using query::ObjectModel;

std::vector<Uid> calls_to(const CodeGraph& g, const std::set<std::string>& names) {
  std::vector<Uid> out;
  for (const auto& n : names)
    for (Uid u : g.call_sites(n)) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool calls_any(const StatementNode& n, const std::set<std::string>& names) {
  return std::any_of(n.callees.begin(), n.callees.end(), [&](const std::string& c) { return names.count(c) != 0; });
}

FlowWitness path_to(Uid head, Uid tail, const std::unordered_map<Uid, Uid>& came_from) {
  FlowWitness w;
  w.path.push_back(tail);
  for (Uid u = came_from.at(tail); u != head; u = came_from.at(u)) w.path.push_back(u);
  w.path.push_back(head);
  std::reverse(w.path.begin(), w.path.end());
  w.kinds.assign(w.path.size() - 1, EdgeKind::CFG);
  return w;
}

// Depth-first walk over control flow from the successors of `head`. `visit`
// returns true to continue past a node. Parents point back toward `head`.
std::unordered_map<Uid, Uid> walk_from(Uid head, const CodeGraph& g,
                                       const std::function<bool(Uid)>& visit,
                                       const std::function<bool(const FlowEdge&)>& edge_ok) {
  std::unordered_map<Uid, Uid> came_from;
  std::vector<std::pair<Uid, Uid>> stack;
  auto push_out = [&](Uid u) {
    auto out = g.out_edges(u, EdgeKind::CFG);
    for (auto it = out.rbegin(); it != out.rend(); ++it)
      if (edge_ok(**it)) stack.push_back({(*it)->dst, u});
  };
  push_out(head);
  while (!stack.empty()) {
    auto [u, from] = stack.back();
    stack.pop_back();
    if (came_from.count(u)) continue;
    came_from[u] = from;
    if (visit(u)) push_out(u);
  }
  return came_from;
}

// An execution leaving `head` can finish without passing `target`: some
// walk avoiding `target` meets an end or a stopping node.
bool can_avoid(Uid head, Uid target, const CodeGraph& g, const std::function<bool(Uid)>& stops) {
  if (g.out_edges(head, EdgeKind::CFG).empty()) return true;
  bool avoided = false;
  walk_from(
      head, g,
      [&](Uid u) {
        if (u == target || avoided) return false;
        if (stops(u) || g.node(u).kind == StmtKind::Exit || g.out_edges(u, EdgeKind::CFG).empty()) {
          avoided = true;
          return false;
        }
        return true;
      },
      [](const FlowEdge&) { return true; });
  return avoided;
}

// Pairs (release, later action) on one object with no redefinition between.
std::vector<Finding> after_release(RuleId rule, const CodeGraph& g, const RuleConfig& config,
                                   const std::function<bool(const ObjectModel&, Uid, Uid)>& acts) {
  auto opts = config.engine_options();
  ObjectModel om(g, opts);
  std::map<std::pair<Uid, Uid>, FlowWitness> found;
  for (Uid f : calls_to(g, config.deallocators)) {
    for (Uid obj : om.accessed_objects(f)) {
      std::vector<Uid> targets;
      auto came_from = walk_from(
          f, g,
          [&](Uid u) {
            if (acts(om, u, obj)) {
              targets.push_back(u);
              return false;
            }
            return !om.kills(u, obj);
          },
          [](const FlowEdge&) { return true; });
      for (Uid k : targets) {
        FlowWitness w = path_to(f, k, came_from);
        w.must = !can_avoid(f, k, g, [&](Uid u) { return om.kills(u, obj) || (u != k && acts(om, u, obj)); });
        auto key = std::make_pair(f, k);
        auto it = found.find(key);
        if (it == found.end()) {
          found.emplace(key, std::move(w));
        } else {
          it->second.must = it->second.must || w.must;
        }
      }
    }
  }
  std::vector<Finding> out;
  for (auto& [_, w] : found) out.push_back(make_finding(rule, std::move(w), g));
  sort_findings(out);
  return out;
}

}  // namespace

std::vector<Finding> detect_cwe415(const CodeGraph& graph, const RuleConfig& config) {
  return after_release(RuleId::CWE415, graph, config, [&](const ObjectModel& om, Uid u, Uid obj) {
    return calls_any(om.graph().node(u), config.deallocators) && om.accesses(u, obj);
  });
}

std::vector<Finding> detect_cwe416(const CodeGraph& graph, const RuleConfig& config) {
  return after_release(RuleId::CWE416, graph, config, [&](const ObjectModel& om, Uid u, Uid obj) {
    const auto& n = om.graph().node(u);
    return n.kind != StmtKind::Entry && n.kind != StmtKind::Exit && !calls_any(n, config.deallocators) &&
           om.accesses(u, obj);
  });
}

std::vector<Finding> detect_cwe401(const CodeGraph& g, const RuleConfig& config) {
  auto opts = config.engine_options();
  ObjectModel om(g, opts);
  std::vector<Finding> out;
  std::deque<Uid> pending;
  for (Uid a : calls_to(g, config.allocators)) pending.push_back(a);
  std::unordered_set<Uid> seen;
  std::set<std::string> wrappers;
  while (!pending.empty()) {
    Uid a = pending.front();
    pending.pop_front();
    if (!seen.insert(a).second) continue;
    bool handed_back = false;
    for (Uid obj : om.defined_local_objects(a)) {
      bool freed_somewhere = false;
      std::vector<Uid> ends;
      auto came_from = walk_from(
          a, g,
          [&](Uid u) {
            const auto& n = g.node(u);
            if ((calls_any(n, config.deallocators) && om.accesses(u, obj)) || om.escapes(u, obj)) {
              freed_somewhere = true;
              if (n.ast.value("kind", std::string()) == "Return") handed_back = true;
              return false;
            }
            if (n.kind == StmtKind::Exit || om.kills(u, obj)) {
              ends.push_back(u);
              return false;
            }
            return true;
          },
          [&](const FlowEdge& e) {
            auto null_on = om.null_branch(e.src, obj);
            return !(null_on && e.branch && *e.branch == *null_on);
          });
      if (ends.empty()) continue;
      FlowWitness w = path_to(a, *std::min_element(ends.begin(), ends.end()), came_from);
      w.must = !freed_somewhere;
      out.push_back(make_finding(RuleId::CWE401, std::move(w), g));
    }
    const auto& fn = g.node(a).fn;
    if (handed_back && wrappers.insert(fn).second)
      for (Uid c : g.call_sites(fn))
        if (!g.node(c).defs.empty()) pending.push_back(c);
  }
  sort_findings(out);
  return out;
}

}  // namespace cpgscan::library
