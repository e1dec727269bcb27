#include "cpgscan/cpg/graph_json.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

namespace cpgscan {

namespace {

std::vector<std::string> strings(const Json& j) {
  std::vector<std::string> out;
  if (!j.is_array()) return out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

OrderedJson node_to_json(const StatementNode& n) {
  OrderedJson j;
  j["id"] = n.uid;
  j["file"] = n.span.file;
  j["line"] = n.span.line;
  j["col"] = n.span.col;
  j["kind"] = to_string(n.kind);
  j["code"] = n.code;
  j["ast"] = OrderedJson::parse(n.ast.dump());
  j["call"] = n.callees;
  j["defs"] = n.defs;
  j["uses"] = n.uses;
  j["fn"] = n.fn;
  return j;
}

StatementNode node_from_json(const Json& j) {
  StatementNode n;
  n.uid = j.at("id").get<Uid>();
  n.span.file = j.at("file").get<std::string>();
  n.span.line = j.at("line").get<int>();
  n.span.col = j.value("col", 1);
  n.kind = stmt_kind_from_string(j.at("kind").get<std::string>());
  n.code = j.at("code").get<std::string>();
  n.ast = j.value("ast", Json::object());
  n.callees = strings(j.value("call", Json::array()));
  n.defs = strings(j.value("defs", Json::array()));
  n.uses = strings(j.value("uses", Json::array()));
  n.fn = j.value("fn", std::string());
  return n;
}

OrderedJson edge_to_json(const FlowEdge& e) {
  OrderedJson j;
  j["src"] = e.src;
  j["dst"] = e.dst;
  j["kind"] = to_string(e.kind);
  if (e.var) j["var"] = *e.var;
  if (e.def_site) j["def"] = *e.def_site;
  if (e.branch) j["branch"] = *e.branch ? "true" : "false";
  if (e.decl_only) j["flavor"] = "decl";
  return j;
}

FlowEdge edge_from_json(const Json& j) {
  FlowEdge e;
  e.src = j.at("src").get<Uid>();
  e.dst = j.at("dst").get<Uid>();
  e.kind = edge_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("var")) e.var = j["var"].get<std::string>();
  if (j.contains("def")) e.def_site = j["def"].get<Uid>();
  if (j.contains("branch")) {
    const std::string b = j["branch"].get<std::string>();
    if (b != "true" && b != "false") throw Error(ErrorCode::CorruptSnapshot, "bad branch label '" + b + "'");
    e.branch = b == "true";
  }
  e.decl_only = j.value("flavor", std::string()) == "decl";
  return e;
}

OrderedJson aliases_to_json(const std::vector<AliasSet>& aliases) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& a : aliases) {
    OrderedJson j;
    j["file"] = a.file;
    j["fn"] = a.scope;
    j["representative"] = a.representative;
    j["members"] = a.members;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<AliasSet> aliases_from_json(const Json& j) {
  std::vector<AliasSet> out;
  for (const auto& a : j) {
    AliasSet s;
    s.file = a.at("file").get<std::string>();
    s.scope = a.at("fn").get<std::string>();
    s.representative = a.at("representative").get<std::string>();
    s.members = strings(a.at("members"));
    out.push_back(std::move(s));
  }
  return out;
}

OrderedJson stats_to_json(const CodeGraph& g) {
  OrderedJson nodes;
  for (auto k : {StmtKind::Entry, StmtKind::Exit, StmtKind::Plain, StmtKind::Predicate, StmtKind::FunctionDecl})
    nodes[to_string(k)] = g.count(k);
  nodes["total"] = g.nodes().size();
  OrderedJson edges;
  for (auto k : {EdgeKind::CFG, EdgeKind::DFG, EdgeKind::CG}) edges[to_string(k)] = g.count(k);
  edges["total"] = g.edges().size();
  const auto& d = g.diagnostics();
  OrderedJson j;
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
  j["files"] = d.files;
  j["functions"] = d.functions;
  j["unreachable"] = d.unreachable;
  j["unresolved_callees"] = d.unresolved_callees;
  j["warnings"] = d.warnings;
  j["parse_errors"] = d.parse_errors;
  j["partial"] = d.partial;
  return j;
}

GraphDiagnostics diagnostics_from_json(const Json& s) {
  GraphDiagnostics d;
  d.files = s.value("files", std::size_t{0});
  d.functions = s.value("functions", std::size_t{0});
  d.unreachable = s.value("unreachable", std::size_t{0});
  d.unresolved_callees = strings(s.value("unresolved_callees", Json::array()));
  d.warnings = strings(s.value("warnings", Json::array()));
  d.parse_errors = strings(s.value("parse_errors", Json::array()));
  d.partial = s.value("partial", false);
  return d;
}

std::string nodes_jsonl(const std::vector<StatementNode>& nodes) {
  std::string out;
  for (const auto& n : nodes) {
    out += node_to_json(n).dump();
    out += '\n';
  }
  return out;
}

std::string edges_jsonl(const std::vector<FlowEdge>& edges) {
  std::string out;
  for (const auto& e : edges) {
    out += edge_to_json(e).dump();
    out += '\n';
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw Error(ErrorCode::Io, "sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::string graph_version(const std::string& nodes_bytes, const std::string& edges_bytes,
                          const std::vector<AliasSet>& aliases) {
  std::string payload;
  payload.reserve(nodes_bytes.size() + edges_bytes.size() + 64);
  payload += nodes_bytes;
  payload += "\x1e";
  payload += edges_bytes;
  payload += "\x1e";
  payload += aliases_to_json(aliases).dump();
  return sha256_hex(payload);
}

}  // namespace cpgscan
