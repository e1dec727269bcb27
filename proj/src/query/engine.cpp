#include "cpgscan/query/engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "cpgscan/query/object_model.hpp"

namespace cpgscan::query {

namespace {

class Matcher {
 public:
  explicit Matcher(const NodePredicate& p) : p_(p) {
    if (p.match == Match::Regex) {
      try {
        for (const auto& s : p.strings) regexes_.emplace_back(s, std::regex::ECMAScript);
      } catch (const std::regex_error& e) {
        throw Error(ErrorCode::Type, "invalid regular expression in " + p.canonical() + ": " + e.what());
      }
    }
  }

  bool operator()(const StatementNode& n) const {
    switch (p_.subject) {
      case Subject::Function:
        return std::any_of(n.callees.begin(), n.callees.end(), [&](const std::string& c) { return text(c); });
      case Subject::Code: return text(n.code);
      case Subject::File:
        return std::any_of(p_.strings.begin(), p_.strings.end(), [&](const std::string& f) {
          return n.span.file == f || (n.span.file.size() > f.size() && n.span.file.ends_with("/" + f));
        });
      case Subject::Line: return p_.ints.size() == 2 && n.span.line >= p_.ints[0] && n.span.line <= p_.ints[1];
    }
    return false;
  }

 private:
  bool text(const std::string& s) const {
    switch (p_.match) {
      case Match::Equals: return std::find(p_.strings.begin(), p_.strings.end(), s) != p_.strings.end();
      case Match::Contains:
        return std::any_of(p_.strings.begin(), p_.strings.end(),
                           [&](const std::string& x) { return s.find(x) != std::string::npos; });
      case Match::Regex:
        return std::any_of(regexes_.begin(), regexes_.end(), [&](const std::regex& r) { return std::regex_search(s, r); });
      case Match::Between: return false;
    }
    return false;
  }

  const NodePredicate& p_;
  std::vector<std::regex> regexes_;
};

bool has_expression(const StatementNode& n) {
  if (n.kind != StmtKind::Plain && n.kind != StmtKind::Predicate) return false;
  const std::string kind = n.ast.value("kind", std::string());
  auto it = n.ast.find("children");
  std::size_t kids = it == n.ast.end() ? 0 : it->size();
  if (kind == "DeclStmt") return kids > 1;
  if (kind == "Return") return kids > 0;
  return kind == "ExprStmt" || kind == "If" || kind == "While";
}

bool declares(const StatementNode& n, const std::string& var) {
  const std::string kind = n.ast.value("kind", std::string());
  if (kind != "DeclStmt" && kind != "Param") return false;
  auto it = n.ast.find("children");
  if (it == n.ast.end() || it->empty()) return false;
  return (*it)[0].value("text", std::string()) == var;
}

Uid direct_declaration(const StatementNode& node, const std::string& var, const CodeGraph& graph) {
  for (const FlowEdge* e : graph.in_edges(node.uid, EdgeKind::DFG)) {
    if (!e->var || *e->var != var || !e->def_site) continue;
    // Parameter and return edges carry the other function's variables.
    const auto& from = graph.node(e->src).fn;
    if (from == node.fn || from.empty()) return *e->def_site;
  }
  if (declares(node, var)) return node.uid;
  return 0;
}

std::vector<Uid> sorted_unique(std::vector<Uid> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Reachability helpers over one graph, built on first use.
class FlowIndex {
 public:
  explicit FlowIndex(const CodeGraph& g) : g_(g) {
    for (const auto& e : g.edges()) {
      bool taint = (e.kind == EdgeKind::DFG && !e.decl_only) || e.kind == EdgeKind::CG;
      if (taint) adj_[e.src].push_back({e.dst, e.kind});
      if (e.kind == EdgeKind::CG) calls_[g.node(e.src).fn].insert(g.node(e.dst).fn);
    }
    for (auto& [_, v] : adj_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              v.end());
    }
  }

  const std::vector<std::pair<Uid, EdgeKind>>& taint_out(Uid u) const {
    static const std::vector<std::pair<Uid, EdgeKind>> none;
    auto it = adj_.find(u);
    return it == adj_.end() ? none : it->second;
  }

  bool cfg_reaches(Uid from, Uid to) {
    if (from == to) return true;
    auto it = cfg_reach_.find(from);
    if (it == cfg_reach_.end()) {
      std::unordered_set<Uid> seen;
      std::deque<Uid> q{from};
      while (!q.empty()) {
        Uid u = q.front();
        q.pop_front();
        for (Uid v : g_.successors(u, EdgeKind::CFG))
          if (seen.insert(v).second) q.push_back(v);
      }
      it = cfg_reach_.emplace(from, std::move(seen)).first;
    }
    return it->second.count(to) != 0;
  }

  bool calls_reach(const std::string& from, const std::string& to) {
    auto it = fn_reach_.find(from);
    if (it == fn_reach_.end()) {
      std::set<std::string> seen;
      std::deque<std::string> q{from};
      while (!q.empty()) {
        auto f = q.front();
        q.pop_front();
        auto c = calls_.find(f);
        if (c == calls_.end()) continue;
        for (const auto& h : c->second)
          if (seen.insert(h).second) q.push_back(h);
      }
      it = fn_reach_.emplace(from, std::move(seen)).first;
    }
    return it->second.count(to) != 0;
  }

  // The data-flow order implied by the pair is consistent with control flow.
  bool ordered(Uid source, Uid sink) {
    const auto& a = g_.node(source).fn;
    const auto& b = g_.node(sink).fn;
    if (a.empty() || b.empty()) return true;
    if (a == b) return cfg_reaches(source, sink);
    return calls_reach(a, b) || calls_reach(b, a);
  }

 private:
  const CodeGraph& g_;
  std::unordered_map<Uid, std::vector<std::pair<Uid, EdgeKind>>> adj_;
  std::map<std::string, std::set<std::string>> calls_;
  std::unordered_map<Uid, std::unordered_set<Uid>> cfg_reach_;
  std::map<std::string, std::set<std::string>> fn_reach_;
};

// No control path leaves `start` and ends (Exit, a blocked node, a dead end)
// without meeting `target`. Loops are assumed to terminate.
bool all_paths_reach(Uid start, Uid target, const CodeGraph& g, const std::function<bool(Uid)>& blocked) {
  auto first = g.successors(start, EdgeKind::CFG);
  if (first.empty()) return false;
  std::unordered_set<Uid> seen(first.begin(), first.end());
  std::deque<Uid> q(first.begin(), first.end());
  while (!q.empty()) {
    Uid u = q.front();
    q.pop_front();
    if (u == target) continue;
    if (g.node(u).kind == StmtKind::Exit || blocked(u)) return false;
    auto succ = g.successors(u, EdgeKind::CFG);
    if (succ.empty()) return false;
    for (Uid v : succ)
      if (seen.insert(v).second) q.push_back(v);
  }
  return true;
}

FlowWitness trace(Uid head, Uid tail, const std::unordered_map<Uid, Uid>& parent, EdgeKind kind) {
  FlowWitness w;
  for (Uid u = tail;; u = parent.at(u)) {
    w.path.push_back(u);
    if (parent.at(u) == 0) break;
  }
  w.path.push_back(head);
  std::reverse(w.path.begin(), w.path.end());
  w.kinds.assign(w.path.size() - 1, kind);
  return w;
}

std::vector<FlowWitness> taint_flows(const std::vector<Uid>& sources, const std::vector<Uid>& sinks,
                                     const std::set<Uid>& barrier, const CodeGraph& graph, std::size_t max_depth,
                                     FlowIndex& index) {
  std::vector<FlowWitness> out;
  std::unordered_set<Uid> sinkset(sinks.begin(), sinks.end());
  for (Uid s : sorted_unique(sources)) {
    if (barrier.count(s) || !graph.contains(s)) continue;
    std::unordered_map<Uid, std::pair<Uid, EdgeKind>> parent;  // node -> (prev, kind)
    std::unordered_map<Uid, std::size_t> depth{{s, 0}};
    std::deque<Uid> q{s};
    std::vector<Uid> reached;
    while (!q.empty()) {
      Uid u = q.front();
      q.pop_front();
      if (sinkset.count(u)) reached.push_back(u);
      if (depth[u] >= max_depth) continue;
      for (const auto& [v, kind] : index.taint_out(u)) {
        if (barrier.count(v) || depth.count(v)) continue;
        depth[v] = depth[u] + 1;
        parent[v] = {u, kind};
        q.push_back(v);
      }
    }
    std::sort(reached.begin(), reached.end());
    for (Uid k : reached) {
      if (!index.ordered(s, k)) continue;
      FlowWitness w;
      for (Uid u = k; u != s; u = parent[u].first) {
        w.path.push_back(u);
        w.kinds.push_back(parent[u].second);
      }
      w.path.push_back(s);
      std::reverse(w.path.begin(), w.path.end());
      std::reverse(w.kinds.begin(), w.kinds.end());
      w.barrier_checked = !barrier.empty();
      if (graph.node(s).fn == graph.node(k).fn)
        w.must = s == k || all_paths_reach(s, k, graph, [&](Uid n) { return barrier.count(n) != 0; });
      out.push_back(std::move(w));
    }
  }
  return out;
}

// Pairs keep the shortest witness; must holds when any object gives it.
void keep_best(std::map<std::pair<Uid, Uid>, FlowWitness>& best, FlowWitness w) {
  auto key = std::make_pair(w.path.front(), w.path.back());
  auto it = best.find(key);
  if (it == best.end()) {
    best.emplace(key, std::move(w));
    return;
  }
  bool must = it->second.must || w.must;
  if (w.path.size() < it->second.path.size()) it->second = std::move(w);
  it->second.must = must;
}

std::vector<FlowWitness> same_object_flows(const std::vector<Uid>& sources, const std::vector<Uid>& sinks,
                                           const std::set<Uid>& barrier, const CodeGraph& graph,
                                           const ObjectModel& om) {
  std::set<Uid> sinkset(sinks.begin(), sinks.end());
  std::map<std::pair<Uid, Uid>, FlowWitness> best;
  for (Uid s : sorted_unique(sources)) {
    auto objs = om.defined_objects(s);
    if (objs.empty()) objs = om.accessed_objects(s);
    for (Uid obj : objs) {
      auto acts = [&](Uid n) { return sinkset.count(n) && om.accesses(n, obj); };
      std::unordered_map<Uid, Uid> parent;
      std::deque<Uid> q;
      for (Uid v : graph.successors(s, EdgeKind::CFG)) {
        parent.emplace(v, 0);
        q.push_back(v);
      }
      std::vector<Uid> found;
      while (!q.empty()) {
        Uid u = q.front();
        q.pop_front();
        if (acts(u)) {
          found.push_back(u);
          continue;
        }
        if (barrier.count(u) || om.kills(u, obj)) continue;
        for (Uid v : graph.successors(u, EdgeKind::CFG))
          if (parent.emplace(v, u).second) q.push_back(v);
      }
      for (Uid k : found) {
        FlowWitness w = trace(s, k, parent, EdgeKind::CFG);
        w.barrier_checked = !barrier.empty();
        w.must = all_paths_reach(s, k, graph, [&](Uid n) {
          return barrier.count(n) || om.kills(n, obj) || (n != k && acts(n));
        });
        keep_best(best, std::move(w));
      }
    }
  }
  std::vector<FlowWitness> out;
  for (auto& [_, w] : best) out.push_back(std::move(w));
  return out;
}

struct LeakResult {
  std::optional<FlowWitness> witness;
  bool returned = false;
};

LeakResult leak_from(Uid s, Uid obj, const std::set<Uid>& sinkset, const std::set<Uid>& barrier,
                     const CodeGraph& graph, const ObjectModel& om) {
  LeakResult r;
  bool released = false;
  std::unordered_map<Uid, Uid> parent;
  std::deque<Uid> q;
  auto follow = [&](Uid u) {
    auto null_on = om.null_branch(u, obj);
    for (const FlowEdge* e : graph.out_edges(u, EdgeKind::CFG)) {
      if (null_on && e->branch && *e->branch == *null_on) continue;
      if (parent.emplace(e->dst, u == s ? 0 : u).second) q.push_back(e->dst);
    }
  };
  follow(s);
  std::optional<Uid> endpoint;
  while (!q.empty()) {
    Uid u = q.front();
    q.pop_front();
    bool releases = (sinkset.count(u) && om.accesses(u, obj)) || barrier.count(u) || om.escapes(u, obj);
    if (releases) {
      released = true;
      if (graph.node(u).ast.value("kind", std::string()) == "Return") r.returned = true;
      continue;
    }
    if (graph.node(u).kind == StmtKind::Exit || om.kills(u, obj)) {
      if (!endpoint) endpoint = u;
      continue;
    }
    follow(u);
  }
  if (endpoint) {
    r.witness = trace(s, *endpoint, parent, EdgeKind::CFG);
    r.witness->barrier_checked = !barrier.empty();
    r.witness->must = !released;
  }
  return r;
}

std::vector<FlowWitness> avoiding_flows(const std::vector<Uid>& sources, const std::vector<Uid>& sinks,
                                        const std::set<Uid>& barrier, const CodeGraph& graph,
                                        const ObjectModel& om) {
  std::set<Uid> sinkset(sinks.begin(), sinks.end());
  std::map<std::pair<Uid, Uid>, FlowWitness> best;
  std::set<Uid> done;
  std::set<std::string> wrappers;
  std::deque<Uid> work;
  for (Uid s : sorted_unique(sources)) work.push_back(s);
  while (!work.empty()) {
    Uid s = work.front();
    work.pop_front();
    if (!done.insert(s).second) continue;
    bool returned = false;
    for (Uid obj : om.defined_local_objects(s)) {
      auto r = leak_from(s, obj, sinkset, barrier, graph, om);
      returned = returned || r.returned;
      if (r.witness) keep_best(best, std::move(*r.witness));
    }
    // A function handing its allocation back to the caller moves the
    // question to each assigning call site.
    const auto& fn = graph.node(s).fn;
    if (returned && wrappers.insert(fn).second)
      for (Uid c : graph.call_sites(fn))
        if (!graph.node(c).defs.empty()) work.push_back(c);
  }
  std::vector<FlowWitness> out;
  for (auto& [_, w] : best) out.push_back(std::move(w));
  return out;
}

using Assignment = std::map<std::string, RowValue>;

bool compatible(const Assignment& a, const std::string& name, Uid uid) {
  auto it = a.find(name);
  return it == a.end() || it->second == RowValue(uid);
}

}  // namespace

const RowValue* ResultRow::get(const std::string& name) const {
  for (const auto& [n, v] : values)
    if (n == name) return &v;
  return nullptr;
}

Json row_to_json(const ResultRow& row) {
  Json out = Json::array();
  for (const auto& [name, value] : row.values) {
    if (auto u = std::get_if<Uid>(&value)) {
      out.push_back(*u);
    } else if (auto w = std::get_if<FlowWitness>(&value)) {
      Json kinds = Json::array();
      for (auto k : w->kinds) kinds.push_back(to_string(k));
      out.push_back({{"path", w->path}, {"kinds", kinds}, {"barrier_checked", w->barrier_checked}, {"must", w->must}});
    } else {
      out.push_back(std::get<std::string>(value));
    }
  }
  return out;
}

Json rows_to_json(const std::vector<ResultRow>& rows) {
  Json columns = Json::array();
  if (!rows.empty())
    for (const auto& [name, _] : rows[0].values) columns.push_back(name);
  Json data = Json::array();
  for (const auto& r : rows) data.push_back(row_to_json(r));
  return {{"columns", columns}, {"rows", data}};
}

bool eval_node_predicate(const NodePredicate& pred, Uid uid, const CodeGraph& graph) {
  return Matcher(pred)(graph.node(uid));
}

std::vector<Uid> nodes_of_type(const std::string& type, const CodeGraph& graph) {
  std::vector<Uid> out;
  for (const auto& n : graph.nodes()) {
    bool take = false;
    if (type == "Call") take = !n.callees.empty();
    else if (type == "Statement") take = n.kind != StmtKind::Entry && n.kind != StmtKind::Exit;
    else if (type == "Expression") take = has_expression(n);
    else throw Error(ErrorCode::UnknownType, "unknown node type '" + type + "'");
    if (take) out.push_back(n.uid);
  }
  return out;
}

std::vector<FlowWitness> taint_reachability(const std::vector<Uid>& sources, const std::vector<Uid>& sinks,
                                            const std::set<Uid>& barrier, const CodeGraph& graph,
                                            std::size_t max_depth) {
  FlowIndex index(graph);
  return taint_flows(sources, sinks, barrier, graph, max_depth, index);
}

Uid resolve_declaration(Uid uid, const std::string& var, const CodeGraph& graph) {
  const auto& node = graph.node(uid);
  Uid decl = direct_declaration(node, var, graph);
  if (!decl)
    throw Error(ErrorCode::NoDeclaration, "'" + var + "' at " + node.span.file + ":" + std::to_string(node.span.line) +
                                              " has no declaration in the project");
  const AliasSet* set = graph.alias_set(node.span.file, node.fn, var);
  if (!set || set->representative == var) return decl;
  if (Uid rep = direct_declaration(node, set->representative, graph)) return rep;
  for (Uid u : graph.function_nodes(node.fn))
    if (declares(graph.node(u), set->representative)) return u;
  return decl;
}

Engine::Engine(const CodeGraph& graph, EngineOptions options) : graph_(&graph), options_(std::move(options)) {}

Engine::Engine(const GraphStore& store, EngineOptions options)
    : owned_(store.snapshot()), graph_(owned_.get()), store_(&store), options_(std::move(options)) {}

std::vector<Uid> Engine::bind(const std::string& type, const std::vector<FilterStep>& filters,
                              const std::string& binding) const {
  auto evaluate = [&](const std::string& key, const GraphStore::Evaluator& f) {
    return store_ ? store_->nodes_where(key, f) : f(*graph_);
  };
  auto set = evaluate("type:" + type, [&](const CodeGraph& g) { return nodes_of_type(type, g); });
  for (const auto& f : filters) {
    if (f.binding != binding) continue;
    auto hits = evaluate("pred:" + f.predicate.canonical(), [&](const CodeGraph& g) {
      Matcher m(f.predicate);
      std::vector<Uid> out;
      for (const auto& n : g.nodes())
        if (m(n)) out.push_back(n.uid);
      return out;
    });
    std::vector<Uid> next;
    if (f.negated) std::set_difference(set.begin(), set.end(), hits.begin(), hits.end(), std::back_inserter(next));
    else std::set_intersection(set.begin(), set.end(), hits.begin(), hits.end(), std::back_inserter(next));
    set = std::move(next);
  }
  return set;
}

std::vector<ResultRow> Engine::execute(const QueryPlan& plan) const {
  const CodeGraph& g = *graph_;
  FlowIndex index(g);
  ObjectModel om(g, options_);
  std::vector<ResultRow> rows;
  std::set<std::string> selected;
  for (const auto& s : plan.projection)
    if (!s.is_string) selected.insert(s.text);

  for (const auto& term : plan.terms) {
    std::map<std::string, std::vector<Uid>> sets;
    for (const auto& c : plan.contexts) sets[c.binding] = bind(c.type, term.filters, c.binding);

    std::set<std::string> consumed;
    std::vector<Assignment> partial{Assignment{}};
    for (const auto& f : term.flows) {
      std::set<Uid> barrier;
      if (f.barrier) {
        barrier.insert(sets[*f.barrier].begin(), sets[*f.barrier].end());
        consumed.insert(*f.barrier);
      }
      std::vector<FlowWitness> ws;
      switch (f.mode) {
        case FlowMode::Taint: ws = taint_flows(sets[f.source], sets[f.sink], barrier, g, options_.max_depth, index); break;
        case FlowMode::SameObject: ws = same_object_flows(sets[f.source], sets[f.sink], barrier, g, om); break;
        case FlowMode::Avoids:
          ws = avoiding_flows(sets[f.source], sets[f.sink], barrier, g, om);
          consumed.insert(f.sink);
          break;
      }
      std::vector<Assignment> next;
      for (const auto& a : partial)
        for (const auto& w : ws) {
          Uid head = w.path.front(), tail = w.path.back();
          if (!compatible(a, f.source, head)) continue;
          if (f.mode != FlowMode::Avoids && !compatible(a, f.sink, tail)) continue;
          Assignment b = a;
          b[f.source] = head;
          if (f.mode != FlowMode::Avoids) b[f.sink] = tail;
          b[f.name] = w;
          next.push_back(std::move(b));
        }
      partial = std::move(next);
    }

    // Bindings no flow decided: selected ones range over their set, the
    // others only need to be inhabited.
    bool empty_context = false;
    for (const auto& c : plan.contexts) {
      if (consumed.count(c.binding)) continue;
      const auto& set = sets[c.binding];
      if (!selected.count(c.binding)) {
        if (set.empty()) {
          bool bound = std::any_of(partial.begin(), partial.end(), [&](const Assignment& a) { return a.count(c.binding); });
          if (!bound) empty_context = true;
        }
        continue;
      }
      std::vector<Assignment> next;
      for (const auto& a : partial) {
        if (a.count(c.binding)) {
          next.push_back(a);
          continue;
        }
        for (Uid u : set) {
          Assignment b = a;
          b[c.binding] = u;
          next.push_back(std::move(b));
        }
      }
      partial = std::move(next);
    }
    if (empty_context) continue;

    for (const auto& a : partial) {
      ResultRow row;
      for (const auto& s : plan.projection) {
        if (s.is_string) row.values.emplace_back(s.text, RowValue(s.text));
        else row.values.emplace_back(s.text, a.at(s.text));
      }
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) { return a.values < b.values; });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

std::vector<ResultRow> run_query(const std::string& vql, const Engine& engine) {
  return engine.execute(translate(parse_query(vql)));
}

}  // namespace cpgscan::query
