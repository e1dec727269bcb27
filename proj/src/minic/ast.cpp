#include "cpgscan/minic/ast.hpp"

namespace cpgscan::minic {

const char* to_string(AstKind kind) {
  switch (kind) {
    case AstKind::TranslationUnit: return "TranslationUnit";
    case AstKind::FunctionDef: return "FunctionDef";
    case AstKind::Param: return "Param";
    case AstKind::Block: return "Block";
    case AstKind::DeclStmt: return "DeclStmt";
    case AstKind::ExprStmt: return "ExprStmt";
    case AstKind::If: return "If";
    case AstKind::While: return "While";
    case AstKind::Return: return "Return";
    case AstKind::Call: return "Call";
    case AstKind::Assign: return "Assign";
    case AstKind::BinaryOp: return "BinaryOp";
    case AstKind::UnaryOp: return "UnaryOp";
    case AstKind::Identifier: return "Identifier";
    case AstKind::IntLiteral: return "IntLiteral";
    case AstKind::StringLiteral: return "StringLiteral";
    case AstKind::Deref: return "Deref";
    case AstKind::AddressOf: return "AddressOf";
    case AstKind::Index: return "Index";
  }
  return "?";
}

Json to_json(const MiniCAst& ast) {
  Json j = Json::object();
  j["kind"] = to_string(ast.kind);
  if (!ast.text.empty()) j["text"] = ast.text;
  if (!ast.children.empty()) {
    Json kids = Json::array();
    for (const auto& c : ast.children) kids.push_back(to_json(c));
    j["children"] = std::move(kids);
  }
  return j;
}

}  // namespace cpgscan::minic
