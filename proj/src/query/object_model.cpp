#include "cpgscan/query/object_model.hpp"

#include <algorithm>

namespace cpgscan::query {

namespace {

const std::string& kind_of(const Json& ast) {
  static const std::string empty;
  auto it = ast.find("kind");
  return it == ast.end() ? empty : it->get_ref<const std::string&>();
}

std::string text_of(const Json& ast) { return ast.value("text", std::string()); }

const Json& children(const Json& ast) {
  static const Json none = Json::array();
  auto it = ast.find("children");
  return it == ast.end() ? none : *it;
}

bool is_identifier(const Json& ast) { return kind_of(ast) == "Identifier"; }

template <typename F>
void walk(const Json& ast, F&& visit) {
  visit(ast);
  for (const auto& c : children(ast)) walk(c, visit);
}

bool is_null_literal(const Json& ast) {
  return (is_identifier(ast) && text_of(ast) == "NULL") || (kind_of(ast) == "IntLiteral" && text_of(ast) == "0");
}

}  // namespace

void collect_identifiers(const Json& ast, std::vector<std::string>& out) {
  walk(ast, [&](const Json& n) {
    if (is_identifier(n)) out.push_back(text_of(n));
  });
}

ObjectModel::ObjectModel(const CodeGraph& graph, const EngineOptions& options) : graph_(graph), options_(options) {}

std::optional<Uid> ObjectModel::object_of(Uid uid, const std::string& var) const {
  auto key = std::make_pair(uid, var);
  auto it = objects_.find(key);
  if (it != objects_.end()) return it->second;
  std::optional<Uid> obj;
  try {
    obj = resolve_declaration(uid, var, graph_);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoDeclaration) throw;
  }
  objects_.emplace(key, obj);
  return obj;
}

bool ObjectModel::is_global(Uid decl) const { return graph_.node(decl).fn.empty(); }

std::vector<Uid> ObjectModel::defined_objects(Uid uid) const {
  std::vector<Uid> out;
  for (const auto& v : graph_.node(uid).defs)
    if (auto o = object_of(uid, v)) out.push_back(*o);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Uid> ObjectModel::defined_local_objects(Uid uid) const {
  std::vector<Uid> out;
  for (const auto& v : graph_.node(uid).defs)
    if (!is_global_var(uid, v))
      if (auto o = object_of(uid, v)) out.push_back(*o);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ObjectModel::is_global_var(Uid uid, const std::string& var) const {
  for (const FlowEdge* e : graph_.in_edges(uid, EdgeKind::DFG))
    if (e->var && *e->var == var && e->def_site && graph_.contains(*e->def_site))
      return is_global(*e->def_site);
  return false;
}

std::vector<ObjectModel::CallArg> ObjectModel::call_args(Uid uid) const {
  std::vector<CallArg> out;
  walk(graph_.node(uid).ast, [&](const Json& n) {
    if (kind_of(n) != "Call") return;
    const auto& args = children(n);
    for (std::size_t i = 0; i < args.size(); ++i)
      if (is_identifier(args[i])) out.push_back({text_of(n), i, text_of(args[i])});
  });
  return out;
}

std::vector<Uid> ObjectModel::accessed_objects(Uid uid) const {
  const auto& node = graph_.node(uid);
  std::vector<std::string> vars;
  walk(node.ast, [&](const Json& n) {
    const auto& k = kind_of(n);
    if (k == "Deref") collect_identifiers(n, vars);
    else if (k == "Index" && !children(n).empty()) collect_identifiers(children(n)[0], vars);
  });
  for (const auto& a : call_args(uid)) {
    bool uses = options_.deallocators.count(a.callee) || is_project_function(a.callee) || options_.pessimistic_externals;
    if (uses) vars.push_back(a.var);
  }
  std::vector<Uid> out;
  for (const auto& v : vars)
    if (auto o = object_of(uid, v)) out.push_back(*o);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ObjectModel::accesses(Uid uid, Uid obj) const {
  auto objs = accessed_objects(uid);
  return std::binary_search(objs.begin(), objs.end(), obj);
}

bool ObjectModel::deallocates(Uid uid, Uid obj) const {
  for (const auto& a : call_args(uid))
    if (options_.deallocators.count(a.callee) && object_of(uid, a.var) == obj) return true;
  return false;
}

bool ObjectModel::kills(Uid uid, Uid obj) const {
  const auto& node = graph_.node(uid);
  for (const auto& v : node.defs) {
    if (object_of(uid, v) != obj) continue;
    bool harmless = false;
    bool found = false;
    walk(node.ast, [&](const Json& n) {
      const auto& k = kind_of(n);
      const auto& c = children(n);
      if (found) return;
      if (k == "DeclStmt" && !c.empty() && text_of(c[0]) == v) {
        found = true;
        harmless = c.size() < 2 || (is_identifier(c[1]) && object_of(uid, text_of(c[1])) == obj);
      } else if (k == "Assign" && c.size() == 2 && is_identifier(c[0]) && text_of(c[0]) == v) {
        found = true;
        harmless = is_identifier(c[1]) && object_of(uid, text_of(c[1])) == obj;
      }
    });
    if (!harmless) return true;
  }
  return false;
}

bool ObjectModel::escapes(Uid uid, Uid obj) const {
  const auto& node = graph_.node(uid);
  bool hit = false;
  walk(node.ast, [&](const Json& n) {
    if (hit) return;
    const auto& k = kind_of(n);
    const auto& c = children(n);
    if (k == "Return" && !c.empty() && is_identifier(c[0]) && object_of(uid, text_of(c[0])) == obj) hit = true;
    if (k == "Assign" && c.size() == 2 && is_identifier(c[1]) && object_of(uid, text_of(c[1])) == obj) {
      const auto& lk = kind_of(c[0]);
      if (lk == "Deref" || lk == "Index") hit = true;
      if (is_identifier(c[0]) && is_global_var(uid, text_of(c[0]))) hit = true;
    }
  });
  if (hit) return true;
  for (const auto& a : call_args(uid)) {
    if (object_of(uid, a.var) != obj || options_.deallocators.count(a.callee)) continue;
    if (is_project_function(a.callee) ? disposes(a.callee, a.position) : options_.pessimistic_externals) return true;
  }
  return false;
}

bool ObjectModel::disposes(const std::string& fn, std::size_t position) const {
  auto key = std::make_pair(fn, position);
  auto it = disposes_.find(key);
  if (it != disposes_.end()) return it->second;
  // Recursive calls see the parameter as kept until proven otherwise.
  disposes_[key] = false;
  std::vector<Uid> params;
  for (Uid u : graph_.function_nodes(fn))
    if (graph_.node(u).kind == StmtKind::FunctionDecl) params.push_back(u);
  bool result = false;
  if (position < params.size() && !graph_.node(params[position]).defs.empty()) {
    Uid param = params[position];
    if (auto obj = object_of(param, graph_.node(param).defs[0])) {
      for (Uid u : graph_.function_nodes(fn))
        if (deallocates(u, *obj) || escapes(u, *obj)) {
          result = true;
          break;
        }
    }
  }
  disposes_[key] = result;
  return result;
}

std::optional<bool> ObjectModel::null_branch(Uid uid, Uid obj) const {
  const auto& node = graph_.node(uid);
  if (node.kind != StmtKind::Predicate) return std::nullopt;
  const auto& c = children(node.ast);
  if (c.empty()) return std::nullopt;
  const Json& cond = c[0];
  auto is_obj = [&](const Json& e) { return is_identifier(e) && object_of(uid, text_of(e)) == obj; };
  const auto& k = kind_of(cond);
  const auto& cc = children(cond);
  if (is_obj(cond)) return false;
  if (k == "UnaryOp" && text_of(cond) == "!" && cc.size() == 1 && is_obj(cc[0])) return true;
  if (k == "BinaryOp" && cc.size() == 2) {
    bool test = (is_obj(cc[0]) && is_null_literal(cc[1])) || (is_obj(cc[1]) && is_null_literal(cc[0]));
    if (test && text_of(cond) == "==") return true;
    if (test && text_of(cond) == "!=") return false;
  }
  return std::nullopt;
}

}  // namespace cpgscan::query
