#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpgscan/statement.hpp"

namespace cpgscan::minic {

enum class AstKind {
  TranslationUnit,
  FunctionDef,
  Param,
  Block,
  DeclStmt,
  ExprStmt,
  If,
  While,
  Return,
  Call,
  Assign,
  BinaryOp,
  UnaryOp,
  Identifier,
  IntLiteral,
  StringLiteral,
  Deref,
  AddressOf,
  Index,
};

const char* to_string(AstKind kind);

// Concrete MiniC syntax tree. `text` depends on the kind:
//   Identifier/IntLiteral/StringLiteral  the token spelling
//   Call                                 callee name (children are the arguments)
//   BinaryOp/UnaryOp/Assign              operator spelling
//   DeclStmt/Param                       declared type, e.g. "char*" or "int[]"
//   FunctionDef                          function name
// If has children [cond, then, else?] and While [cond, body]; branches are a
// Block or a single statement. FunctionDef children are its Params then a Block.
// [begin, end) is the byte range of the construct in the source file.
struct MiniCAst {
  AstKind kind = AstKind::TranslationUnit;
  std::vector<MiniCAst> children;
  std::string text;
  Span span;
  std::size_t begin = 0;
  std::size_t end = 0;

  // FunctionDef only: return type, e.g. "char*".
  std::string return_type;
  // If/While only: offset just past the ')' closing the condition.
  std::size_t header_end = 0;

  bool is_leaf() const {
    return kind == AstKind::Identifier || kind == AstKind::IntLiteral || kind == AstKind::StringLiteral;
  }
};

// Minimal language-independent tree stored on graph nodes: {kind, text?, children?}.
Json to_json(const MiniCAst& ast);

}  // namespace cpgscan::minic
