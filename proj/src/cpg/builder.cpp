#include "cpgscan/cpg/builder.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "cpgscan/minic/lexer.hpp"
#include "cpgscan/minic/parser.hpp"

namespace cpgscan {

using minic::ControlNode;
using minic::LoweredFunction;
using minic::LoweredUnit;

namespace {

struct Pending {
  Uid src;
  std::optional<bool> branch;
};

class CfgBuilder {
 public:
  explicit CfgBuilder(const LoweredFunction& fn) : fn_(fn) {}

  std::vector<FlowEdge> run() {
    std::vector<Pending> preds{{fn_.entry, std::nullopt}};
    for (Uid p : fn_.params) preds = link(preds, p);
    preds = sequence(fn_.body, std::move(preds));
    link(preds, fn_.exit);
    return std::move(edges_);
  }

 private:
  std::vector<Pending> link(const std::vector<Pending>& preds, Uid dst) {
    for (const auto& p : preds) {
      FlowEdge e;
      e.src = p.src;
      e.dst = dst;
      e.kind = EdgeKind::CFG;
      e.branch = p.branch;
      edges_.push_back(std::move(e));
    }
    return {{dst, std::nullopt}};
  }

  std::vector<Pending> sequence(const std::vector<ControlNode>& nodes, std::vector<Pending> preds) {
    for (const auto& n : nodes) preds = statement(n, std::move(preds));
    return preds;
  }

  std::vector<Pending> statement(const ControlNode& n, std::vector<Pending> preds) {
    switch (n.shape) {
      case ControlNode::Shape::Simple:
        return link(preds, n.uid);
      case ControlNode::Shape::Return:
        link(preds, n.uid);
        link({{n.uid, std::nullopt}}, fn_.exit);
        return {};
      case ControlNode::Shape::If: {
        link(preds, n.uid);
        auto out = sequence(n.then_branch, {{n.uid, true}});
        auto other = sequence(n.else_branch, {{n.uid, false}});
        out.insert(out.end(), other.begin(), other.end());
        return out;
      }
      case ControlNode::Shape::While: {
        link(preds, n.uid);
        auto body = sequence(n.then_branch, {{n.uid, true}});
        link(body, n.uid);
        return {{n.uid, false}};
      }
    }
    return preds;
  }

  const LoweredFunction& fn_;
  std::vector<FlowEdge> edges_;
};

// Identifier names below an AST JSON node, first-occurrence order.
void collect_names(const Json& ast, std::vector<std::string>& out) {
  if (ast.value("kind", "") == "Identifier") {
    std::string name = ast.value("text", "");
    if (name != "NULL" && std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    return;
  }
  if (auto it = ast.find("children"); it != ast.end())
    for (const auto& c : *it) collect_names(c, out);
}

void collect_calls(const Json& ast, std::vector<const Json*>& out) {
  if (ast.value("kind", "") == "Call") out.push_back(&ast);
  if (auto it = ast.find("children"); it != ast.end())
    for (const auto& c : *it) collect_calls(c, out);
}

// `p = q` / `T *p = q` with both sides plain identifiers.
std::optional<std::pair<std::string, std::string>> copy_assignment(const Json& ast) {
  const std::string kind = ast.value("kind", "");
  const Json* lhs = nullptr;
  const Json* rhs = nullptr;
  if (kind == "ExprStmt" && ast.contains("children")) {
    const Json& e = ast["children"][0];
    if (e.value("kind", "") == "Assign" && e.value("text", "") == "=") {
      lhs = &e["children"][0];
      rhs = &e["children"][1];
    }
  } else if (kind == "DeclStmt" && ast.contains("children") && ast["children"].size() == 2) {
    lhs = &ast["children"][0];
    rhs = &ast["children"][1];
  }
  if (!lhs || !rhs) return std::nullopt;
  if (lhs->value("kind", "") != "Identifier" || rhs->value("kind", "") != "Identifier") return std::nullopt;
  std::string a = lhs->value("text", ""), b = rhs->value("text", "");
  if (b == "NULL" || a == b) return std::nullopt;
  return std::make_pair(a, b);
}

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  void merge(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }
  void subtract(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  }
  bool operator==(const Bits&) const = default;

 private:
  std::vector<std::uint64_t> w_;
};

std::string where(const StatementNode& s) {
  return s.span.file + ":" + std::to_string(s.span.line) + ":" + std::to_string(s.span.col);
}

}  // namespace

std::vector<FlowEdge> build_cfg(const LoweredFunction& fn) { return CfgBuilder(fn).run(); }

DataFlow build_dfg(const LoweredFunction& fn, const LoweredUnit& unit, const std::vector<FlowEdge>& cfg) {
  DataFlow out;
  const auto& stmts = fn.statements;
  const std::size_t n = stmts.size();
  std::unordered_map<Uid, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[stmts[i].uid] = i;

  auto declaration = [&](const std::string& var) -> Uid {
    if (auto it = fn.declarations.find(var); it != fn.declarations.end()) return it->second;
    if (auto it = unit.global_declarations.find(var); it != unit.global_declarations.end()) return it->second;
    return 0;
  };
  auto is_pointer = [&](const std::string& var) {
    if (fn.declarations.count(var)) return fn.pointer_vars.count(var) != 0;
    return unit.global_pointers.count(var) != 0;
  };

  std::vector<std::vector<std::size_t>> succ(n), pred(n);
  for (const auto& e : cfg) {
    std::size_t a = pos.at(e.src), b = pos.at(e.dst);
    succ[a].push_back(b);
    pred[b].push_back(a);
  }

  // Definitions: (origin uid, var). Globals get a pseudo definition at Entry
  // whose origin is the file-scope declaration.
  struct Def {
    Uid origin;
    std::string var;
  };
  std::vector<Def> defs;
  std::vector<std::vector<std::size_t>> gen(n);
  std::map<std::string, std::vector<std::size_t>> defs_of;
  std::set<std::string> globals_used;
  for (const auto& s : stmts)
    for (const auto* list : {&s.defs, &s.uses})
      for (const auto& v : *list)
        if (!fn.declarations.count(v) && unit.global_declarations.count(v)) globals_used.insert(v);
  for (const auto& g : globals_used) {
    gen[0].push_back(defs.size());
    defs_of[g].push_back(defs.size());
    defs.push_back({unit.global_declarations.at(g), g});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& v : stmts[i].defs) {
      gen[i].push_back(defs.size());
      defs_of[v].push_back(defs.size());
      defs.push_back({stmts[i].uid, v});
    }

  const std::size_t m = defs.size();
  std::vector<Bits> gen_bits(n, Bits(m)), kill_bits(n, Bits(m)), in(n, Bits(m)), outb(n, Bits(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto d : gen[i]) {
      gen_bits[i].set(d);
      for (auto other : defs_of[defs[d].var]) kill_bits[i].set(other);
    }
    kill_bits[i].subtract(gen_bits[i]);
  }
  std::vector<bool> queued(n, true);
  std::vector<std::size_t> work(n);
  std::iota(work.rbegin(), work.rend(), std::size_t{0});
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    queued[i] = false;
    Bits acc(m);
    for (auto p : pred[i]) acc.merge(outb[p]);
    in[i] = acc;
    acc.subtract(kill_bits[i]);
    acc.merge(gen_bits[i]);
    if (acc == outb[i]) continue;
    outb[i] = std::move(acc);
    for (auto s : succ[i])
      if (!queued[s]) {
        queued[s] = true;
        work.push_back(s);
      }
  }

  std::vector<bool> reachable(n, false);
  std::vector<std::size_t> stack{0};
  reachable[0] = true;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (auto s : succ[i])
      if (!reachable[s]) {
        reachable[s] = true;
        stack.push_back(s);
      }
  }
  out.unreachable = static_cast<std::size_t>(std::count(reachable.begin(), reachable.end(), false));

  auto reaching = [&](std::size_t i, const std::string& var) {
    std::vector<Uid> origins;
    if (auto it = defs_of.find(var); it != defs_of.end())
      for (auto d : it->second)
        if (in[i].test(d)) origins.push_back(defs[d].origin);
    std::sort(origins.begin(), origins.end());
    origins.erase(std::unique(origins.begin(), origins.end()), origins.end());
    return origins;
  };

  auto dfg = [](Uid src, Uid dst, const std::string& var, Uid decl, bool decl_only) {
    FlowEdge e;
    e.src = src;
    e.dst = dst;
    e.kind = EdgeKind::DFG;
    e.var = var;
    e.def_site = decl;
    e.decl_only = decl_only;
    return e;
  };

  std::set<std::tuple<Uid, Uid, std::string>> reaching_edges;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = stmts[i];
    for (const auto& v : s.uses) {
      Uid decl = declaration(v);
      if (decl == 0) {
        if (reachable[i]) out.warnings.push_back("UndefinedVariable: " + where(s) + ": '" + v + "' is not declared");
        continue;
      }
      auto origins = reaching(i, v);
      if (origins.empty() && reachable[i])
        out.warnings.push_back("UndefinedVariable: " + where(s) + ": '" + v + "' has no reaching definition");
      for (Uid o : origins) {
        out.edges.push_back(dfg(o, s.uid, v, decl, false));
        reaching_edges.emplace(o, s.uid, v);
      }
    }
  }

  // Declaration edges: declaration to every later occurrence.
  std::set<std::tuple<Uid, Uid, std::string>> decl_edges;
  auto add_decl_edge = [&](Uid decl, Uid dst, const std::string& var) {
    if (decl == 0 || decl == dst) return;
    if (reaching_edges.count({decl, dst, var})) return;
    if (!decl_edges.emplace(decl, dst, var).second) return;
    out.edges.push_back(dfg(decl, dst, var, decl, true));
  };
  for (const auto& s : stmts) {
    if (s.kind == StmtKind::Entry || s.kind == StmtKind::Exit) continue;
    for (const auto* list : {&s.defs, &s.uses})
      for (const auto& v : *list) add_decl_edge(declaration(v), s.uid, v);
  }

  // Flow-insensitive aliasing through pointer copies.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> root = [&](const std::string& v) -> std::string {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    return it->second = root(it->second);
  };
  for (const auto& s : stmts) {
    auto copy = copy_assignment(s.ast);
    if (!copy) continue;
    const auto& [a, b] = *copy;
    if (!declaration(a) || !declaration(b) || !is_pointer(a) || !is_pointer(b)) continue;
    parent.emplace(a, a);
    parent.emplace(b, b);
    auto ra = root(a), rb = root(b);
    if (ra != rb) parent[ra] = rb;
  }
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& [v, _] : parent) groups[root(v)].push_back(v);
  std::map<std::string, const std::vector<std::string>*> member_of;
  for (auto& [_, members] : groups) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    AliasSet set;
    set.members = members;
    set.representative = *std::min_element(members.begin(), members.end(), [&](const auto& x, const auto& y) {
      return std::make_pair(declaration(x), x) < std::make_pair(declaration(y), y);
    });
    set.scope = fn.name;
    set.file = fn.file;
    out.aliases.push_back(std::move(set));
    for (const auto& v : members) member_of[v] = &groups[root(v)];
  }
  for (const auto& s : stmts) {
    if (s.kind == StmtKind::Entry || s.kind == StmtKind::Exit) continue;
    for (const auto* list : {&s.defs, &s.uses})
      for (const auto& v : *list) {
        auto it = member_of.find(v);
        if (it == member_of.end()) continue;
        for (const auto& other : *it->second)
          if (other != v) add_decl_edge(declaration(other), s.uid, other);
      }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = stmts[i];
    std::vector<const Json*> calls;
    collect_calls(s.ast, calls);
    for (const Json* call : calls) {
      CallSite site;
      site.site = s.uid;
      site.callee = call->value("text", "");
      if (auto it = call->find("children"); it != call->end())
        for (const auto& arg : *it) {
          std::vector<std::string> names;
          collect_names(arg, names);
          std::vector<ArgumentFlow> flows;
          for (const auto& v : names) {
            Uid decl = declaration(v);
            if (decl) flows.push_back({v, decl, reaching(i, v)});
          }
          site.arguments.push_back(std::move(flows));
        }
      out.calls.push_back(std::move(site));
    }
    if (s.ast.value("kind", "") == "Return") {
      ReturnFlow r;
      r.site = s.uid;
      for (const auto& v : s.uses)
        if (Uid decl = declaration(v)) r.vars.emplace_back(v, decl);
      out.returns.push_back(std::move(r));
    }
  }
  return out;
}

FileGraph build_file(const std::string& source, const std::string& file, Uid uid_base) {
  auto tokens = minic::tokenize(source, file);
  auto tu = minic::parse(tokens, file);
  auto unit = minic::lower(tu, source, uid_base);
  FileGraph g;
  g.file = file;
  g.nodes = unit.all_statements();
  if (!g.nodes.empty() && g.nodes.back().uid - uid_base >= (Uid{1} << kUidShift))
    throw Error(ErrorCode::InvalidArgument, file + ": too many statements in one file");
  for (const auto& fn : unit.functions) {
    auto cfg = build_cfg(fn);
    auto flow = build_dfg(fn, unit, cfg);
    g.edges.insert(g.edges.end(), cfg.begin(), cfg.end());
    g.edges.insert(g.edges.end(), flow.edges.begin(), flow.edges.end());
    g.aliases.insert(g.aliases.end(), flow.aliases.begin(), flow.aliases.end());
    g.warnings.insert(g.warnings.end(), flow.warnings.begin(), flow.warnings.end());
    g.calls.insert(g.calls.end(), flow.calls.begin(), flow.calls.end());
    for (auto& r : flow.returns) {
      g.returns_by_function[fn.name].push_back(g.returns.size());
      g.returns.push_back(std::move(r));
    }
    g.functions.push_back({fn.name, fn.entry, fn.params});
    g.unreachable += flow.unreachable;
  }
  return g;
}

CodeGraph build_cg(std::vector<FileGraph> files, std::vector<std::string> parse_errors) {
  struct Target {
    const FileGraph* file;
    const FileGraph::Function* fn;
  };
  std::map<std::string, Target> table;
  std::vector<const FileGraph*> accepted;
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
  for (const auto& f : files) {
    std::string clash;
    for (const auto& fn : f.functions)
      if (auto it = table.find(fn.name); it != table.end()) {
        clash = f.file + ": function '" + fn.name + "' is already defined in " + it->second.file->file;
        break;
      }
    if (!clash.empty()) {
      parse_errors.push_back(clash);
      continue;
    }
    for (const auto& fn : f.functions) table.emplace(fn.name, Target{&f, &fn});
    accepted.push_back(&f);
  }

  std::vector<StatementNode> nodes;
  std::vector<FlowEdge> edges;
  std::vector<AliasSet> aliases;
  GraphDiagnostics diag;
  std::set<std::string> unresolved;
  for (const FileGraph* f : accepted) {
    nodes.insert(nodes.end(), f->nodes.begin(), f->nodes.end());
    edges.insert(edges.end(), f->edges.begin(), f->edges.end());
    aliases.insert(aliases.end(), f->aliases.begin(), f->aliases.end());
    diag.warnings.insert(diag.warnings.end(), f->warnings.begin(), f->warnings.end());
    diag.unreachable += f->unreachable;
  }
  for (const FileGraph* f : accepted) {
    for (const auto& call : f->calls) {
      auto it = table.find(call.callee);
      if (it == table.end()) {
        unresolved.insert(call.callee);
        continue;
      }
      const auto& target = it->second;
      FlowEdge cg;
      cg.src = call.site;
      cg.dst = target.fn->entry;
      cg.kind = EdgeKind::CG;
      edges.push_back(cg);
      for (std::size_t i = 0; i < call.arguments.size() && i < target.fn->params.size(); ++i)
        for (const auto& flow : call.arguments[i])
          for (Uid d : flow.definitions) {
            FlowEdge e;
            e.src = d;
            e.dst = target.fn->params[i];
            e.kind = EdgeKind::DFG;
            e.var = flow.var;
            e.def_site = flow.declaration;
            edges.push_back(std::move(e));
          }
      if (auto r = target.file->returns_by_function.find(target.fn->name); r != target.file->returns_by_function.end())
        for (auto idx : r->second) {
          const auto& ret = target.file->returns[idx];
          for (const auto& [var, decl] : ret.vars) {
            FlowEdge e;
            e.src = ret.site;
            e.dst = call.site;
            e.kind = EdgeKind::DFG;
            e.var = var;
            e.def_site = decl;
            edges.push_back(std::move(e));
          }
        }
    }
  }
  diag.files = accepted.size();
  diag.functions = table.size();
  diag.unresolved_callees.assign(unresolved.begin(), unresolved.end());
  std::sort(parse_errors.begin(), parse_errors.end());
  diag.parse_errors = std::move(parse_errors);
  diag.partial = !diag.parse_errors.empty();
  return CodeGraph(std::move(nodes), std::move(edges), std::move(aliases), std::move(diag));
}

std::vector<Uid> file_namespaces(const std::vector<std::string>& sorted_paths) {
  std::set<std::uint32_t> used;
  std::vector<Uid> out;
  for (const auto& p : sorted_paths) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : p) {
      h ^= c;
      h *= 16777619u;
    }
    h &= 0x7FFFFFFFu;
    while (h == 0 || !used.insert(h).second) h = (h + 1) & 0x7FFFFFFFu;
    out.push_back(static_cast<Uid>(h) << kUidShift);
  }
  return out;
}

ExtractResult extract_sources(std::vector<SourceFile> sources, const ExtractOptions& options) {
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
  const auto t0 = Clock::now();
  if (sources.empty()) throw Error(ErrorCode::EmptyProject, "no source files to analyze");
  std::sort(sources.begin(), sources.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  std::vector<std::string> paths;
  for (const auto& s : sources) paths.push_back(s.path);
  const auto bases = file_namespaces(paths);

  std::vector<std::optional<FileGraph>> results(sources.size());
  std::vector<std::string> errors(sources.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < sources.size();) {
      try {
        results[i] = build_file(sources[i].text, sources[i].path, bases[i]);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(sources.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  const auto t1 = Clock::now();

  std::vector<FileGraph> files;
  std::vector<std::string> parse_errors;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (results[i]) files.push_back(std::move(*results[i]));
    else parse_errors.push_back(errors[i]);
  }
  ExtractResult r{build_cg(std::move(files), std::move(parse_errors)), {}};
  const auto t2 = Clock::now();
  r.timing.parse_ms = ms(t1 - t0);
  r.timing.join_ms = ms(t2 - t1);
  r.timing.total_ms = ms(t2 - t0);
  return r;
}

std::vector<std::string> discover_sources(const std::filesystem::path& project_dir,
                                          const std::vector<std::string>& exclude) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(project_dir, ec))
    throw Error(ErrorCode::Io, "not a directory: " + project_dir.string());
  std::vector<std::string> out;
  for (auto it = fs::recursive_directory_iterator(project_dir, fs::directory_options::skip_permission_denied, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw Error(ErrorCode::Io, "cannot list " + project_dir.string() + ": " + ec.message());
    if (!it->is_regular_file()) continue;
    auto ext = it->path().extension();
    if (ext != ".c" && ext != ".mc") continue;
    std::string rel = it->path().lexically_relative(project_dir).generic_string();
    bool skip = std::any_of(exclude.begin(), exclude.end(), [&](const std::string& pat) {
      if (pat.empty()) return false;
      if (fnmatch(pat.c_str(), rel.c_str(), 0) == 0) return true;
      std::string prefix = pat.back() == '/' ? pat : pat + "/";
      return rel.compare(0, prefix.size(), prefix) == 0;
    });
    if (!skip) out.push_back(std::move(rel));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExtractResult extract(const std::filesystem::path& project_dir, const ExtractOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto paths = discover_sources(project_dir, options.exclude);
  if (paths.empty()) throw Error(ErrorCode::EmptyProject, "no .c or .mc files under " + project_dir.string());
  std::vector<SourceFile> sources;
  for (auto& p : paths) {
    std::ifstream in(project_dir / p, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + (project_dir / p).string());
    std::ostringstream ss;
    ss << in.rdbuf();
    sources.push_back({std::move(p), ss.str()});
  }
  const auto t1 = Clock::now();
  ExtractResult r = extract_sources(std::move(sources), options);
  r.timing.discover_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  r.timing.total_ms += r.timing.discover_ms;
  return r;
}

}  // namespace cpgscan
