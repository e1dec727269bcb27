#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cpgscan {

using Uid = std::int64_t;
using Json = nlohmann::json;

struct Span {
  std::string file;
  int line = 1;
  int col = 1;

  bool operator==(const Span&) const = default;
};

enum class StmtKind { Entry, Exit, Plain, Predicate, FunctionDecl };

const char* to_string(StmtKind kind);
StmtKind stmt_kind_from_string(const std::string& s);

// One vertex of the compressed graph: a whole source statement. The statement's
// syntax tree is kept as an attribute (`ast`) rather than as sub-vertices.
// `fn` is the enclosing function name, empty for file-scope declarations.
struct UnifiedStatement {
  Uid uid = 0;
  Span span;
  std::string code;
  Json ast = Json::object();
  std::vector<std::string> callees;
  std::vector<std::string> defs;
  std::vector<std::string> uses;
  StmtKind kind = StmtKind::Plain;
  std::string fn;

  bool operator==(const UnifiedStatement&) const = default;
};

using StatementNode = UnifiedStatement;

}  // namespace cpgscan
