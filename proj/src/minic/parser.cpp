#include "cpgscan/minic/parser.hpp"

#include <utility>

namespace cpgscan::minic {

namespace {

struct Abort {};

bool is_type_keyword(const Token& t) {
  return t.is_keyword("int") || t.is_keyword("char") || t.is_keyword("void");
}

class Parser {
 public:
  Parser(const std::vector<Token>& toks, const std::string& file) : toks_(toks) {
    eof_.kind = TokenKind::EndOfFile;
    eof_.span = toks.empty() ? Span{file, 1, 1} : toks.back().span;
    eof_.offset = toks.empty() ? 0 : toks.back().offset + toks.back().text.size();
  }

  MiniCAst translation_unit() {
    MiniCAst tu;
    tu.kind = AstKind::TranslationUnit;
    tu.span = toks_.empty() ? eof_.span : toks_.front().span;
    tu.span.line = 1;
    tu.span.col = 1;
    tu.begin = 0;
    while (!at_end()) {
      std::size_t before = pos_;
      try {
        external(tu);
      } catch (const Abort&) {
        sync_external();
        if (pos_ == before) ++pos_;
      }
    }
    tu.end = eof_.offset;
    if (!diags_.empty()) throw ParseError(std::move(diags_));
    return tu;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof_;
  }
  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& take() {
    const Token& t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  std::size_t prev_end() const {
    if (pos_ == 0) return 0;
    const Token& t = toks_[pos_ - 1];
    return t.offset + t.text.size();
  }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = peek();
    diags_.push_back(Diagnostic{t.span, expected, at_end() ? std::string("end of input") : "'" + t.text + "'"});
    throw Abort{};
  }

  const Token& expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) fail("'" + std::string(p) + "'");
    return take();
  }
  const Token& expect_ident() {
    if (peek().kind != TokenKind::Identifier) fail("identifier");
    return take();
  }

  // Resynchronize inside a block: stop after ';' or before '}'.
  void sync_statement() {
    while (!at_end()) {
      if (peek().is_punct(";")) {
        ++pos_;
        return;
      }
      if (peek().is_punct("}")) return;
      if (peek().is_punct("{")) {
        skip_balanced();
        return;
      }
      ++pos_;
    }
  }

  void sync_external() {
    while (!at_end()) {
      if (peek().is_punct(";") || peek().is_punct("}")) {
        ++pos_;
        return;
      }
      if (peek().is_punct("{")) {
        skip_balanced();
        return;
      }
      ++pos_;
    }
  }

  void skip_balanced() {
    int depth = 0;
    while (!at_end()) {
      if (peek().is_punct("{")) ++depth;
      if (peek().is_punct("}")) {
        --depth;
        if (depth == 0) {
          ++pos_;
          return;
        }
      }
      ++pos_;
    }
  }

  MiniCAst node(AstKind kind, const Token& first) const {
    MiniCAst n;
    n.kind = kind;
    n.span = first.span;
    n.begin = first.offset;
    return n;
  }

  void finish(MiniCAst& n) const { n.end = prev_end(); }

  std::string type_spec() {
    if (!is_type_keyword(peek())) fail("type name");
    return take().text;
  }

  std::string pointer_suffix() {
    std::string stars;
    while (peek().is_punct("*")) {
      take();
      stars += '*';
    }
    return stars;
  }

  void external(MiniCAst& tu) {
    const Token& first = peek();
    std::string base = type_spec();
    std::size_t decl_start = pos_;
    std::string stars = pointer_suffix();
    const Token& name = expect_ident();
    if (peek().is_punct("(")) {
      tu.children.push_back(function_def(first, base + stars, name));
      return;
    }
    pos_ = decl_start;
    MiniCAst decl = node(AstKind::DeclStmt, first);
    decl.text = base;
    declarators(decl, base);
    expect_punct(";");
    finish(decl);
    tu.children.push_back(std::move(decl));
  }

  MiniCAst function_def(const Token& first, std::string return_type, const Token& name) {
    MiniCAst fn = node(AstKind::FunctionDef, first);
    fn.text = name.text;
    fn.span = name.span;
    fn.return_type = std::move(return_type);
    expect_punct("(");
    if (peek().is_keyword("void") && peek(1).is_punct(")")) {
      take();
    } else if (!peek().is_punct(")")) {
      while (true) {
        fn.children.push_back(param());
        if (!peek().is_punct(",")) break;
        take();
      }
    }
    expect_punct(")");
    if (!peek().is_punct("{")) fail("'{'");
    fn.children.push_back(block());
    finish(fn);
    return fn;
  }

  MiniCAst param() {
    const Token& first = peek();
    MiniCAst p = node(AstKind::Param, first);
    std::string type = type_spec();
    type += pointer_suffix();
    const Token& name = expect_ident();
    if (peek().is_punct("[")) {
      take();
      expect_punct("]");
      type += "[]";
    }
    p.text = type;
    MiniCAst id = node(AstKind::Identifier, name);
    id.text = name.text;
    id.end = name.offset + name.text.size();
    p.children.push_back(std::move(id));
    finish(p);
    return p;
  }

  MiniCAst block() {
    MiniCAst b = node(AstKind::Block, expect_punct("{"));
    while (!peek().is_punct("}")) {
      if (at_end()) fail("'}'");
      std::size_t before = pos_;
      try {
        b.children.push_back(statement());
      } catch (const Abort&) {
        sync_statement();
        if (pos_ == before) ++pos_;
      }
    }
    take();
    finish(b);
    return b;
  }

  // Fills `decl` with one DeclStmt child per declarator.
  void declarators(MiniCAst& decl, const std::string& base) {
    while (true) {
      const Token& first = peek();
      MiniCAst d = node(AstKind::DeclStmt, first);
      std::string type = base + pointer_suffix();
      const Token& name = expect_ident();
      MiniCAst id = node(AstKind::Identifier, name);
      id.text = name.text;
      id.end = name.offset + name.text.size();
      if (peek().is_punct("[")) {
        take();
        if (peek().kind == TokenKind::IntLiteral) take();
        expect_punct("]");
        type += "[]";
      }
      d.text = type;
      d.children.push_back(std::move(id));
      if (peek().is_punct("=")) {
        take();
        d.children.push_back(assignment());
      }
      finish(d);
      decl.children.push_back(std::move(d));
      if (!peek().is_punct(",")) break;
      take();
    }
  }

  MiniCAst statement() {
    const Token& t = peek();
    if (is_type_keyword(t)) {
      MiniCAst decl = node(AstKind::DeclStmt, t);
      decl.text = type_spec();
      declarators(decl, decl.text);
      expect_punct(";");
      finish(decl);
      return decl;
    }
    if (t.is_keyword("if")) {
      MiniCAst n = node(AstKind::If, take());
      expect_punct("(");
      n.children.push_back(expression());
      n.header_end = expect_punct(")").offset + 1;
      n.children.push_back(branch());
      if (peek().is_keyword("else")) {
        take();
        n.children.push_back(branch());
      }
      finish(n);
      return n;
    }
    if (t.is_keyword("while")) {
      MiniCAst n = node(AstKind::While, take());
      expect_punct("(");
      n.children.push_back(expression());
      n.header_end = expect_punct(")").offset + 1;
      n.children.push_back(branch());
      finish(n);
      return n;
    }
    if (t.is_keyword("return")) {
      MiniCAst n = node(AstKind::Return, take());
      if (!peek().is_punct(";")) n.children.push_back(expression());
      expect_punct(";");
      finish(n);
      return n;
    }
    if (t.is_punct("{")) return block();
    if (t.kind == TokenKind::Keyword) fail("statement (unsupported keyword)");
    MiniCAst n = node(AstKind::ExprStmt, t);
    n.children.push_back(expression());
    expect_punct(";");
    finish(n);
    return n;
  }

  MiniCAst branch() {
    if (peek().is_punct("{")) return block();
    return statement();
  }

  MiniCAst expression() { return assignment(); }

  MiniCAst assignment() {
    const Token& first = peek();
    MiniCAst lhs = logical_or();
    if (peek().is_punct("=")) {
      MiniCAst n = node(AstKind::Assign, first);
      n.text = take().text;
      n.children.push_back(std::move(lhs));
      n.children.push_back(assignment());
      finish(n);
      return n;
    }
    return lhs;
  }

  template <typename Next>
  MiniCAst binary_level(std::initializer_list<std::string_view> ops, Next next) {
    const Token& first = peek();
    MiniCAst lhs = (this->*next)();
    while (true) {
      bool matched = false;
      for (auto op : ops) {
        if (peek().is_punct(op)) {
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
      MiniCAst n = node(AstKind::BinaryOp, first);
      n.text = take().text;
      n.children.push_back(std::move(lhs));
      n.children.push_back((this->*next)());
      finish(n);
      lhs = std::move(n);
    }
  }

  MiniCAst logical_or() { return binary_level({"||"}, &Parser::logical_and); }
  MiniCAst logical_and() { return binary_level({"&&"}, &Parser::equality); }
  MiniCAst equality() { return binary_level({"==", "!="}, &Parser::relational); }
  MiniCAst relational() { return binary_level({"<", ">", "<=", ">="}, &Parser::additive); }
  MiniCAst additive() { return binary_level({"+", "-"}, &Parser::multiplicative); }
  MiniCAst multiplicative() { return binary_level({"*", "/", "%"}, &Parser::unary); }

  MiniCAst unary() {
    const Token& t = peek();
    if (t.is_punct("*") || t.is_punct("&") || t.is_punct("-") || t.is_punct("!")) {
      AstKind kind = t.is_punct("*") ? AstKind::Deref : t.is_punct("&") ? AstKind::AddressOf : AstKind::UnaryOp;
      MiniCAst n = node(kind, take());
      if (kind == AstKind::UnaryOp) n.text = t.text;
      n.children.push_back(unary());
      finish(n);
      return n;
    }
    return postfix();
  }

  MiniCAst postfix() {
    const Token& first = peek();
    MiniCAst e = primary();
    while (true) {
      if (peek().is_punct("(")) {
        if (e.kind != AstKind::Identifier) fail("callee name");
        MiniCAst call = node(AstKind::Call, first);
        call.text = e.text;
        take();
        if (!peek().is_punct(")")) {
          while (true) {
            call.children.push_back(assignment());
            if (!peek().is_punct(",")) break;
            take();
          }
        }
        expect_punct(")");
        finish(call);
        e = std::move(call);
      } else if (peek().is_punct("[")) {
        MiniCAst idx = node(AstKind::Index, first);
        take();
        idx.children.push_back(std::move(e));
        idx.children.push_back(expression());
        expect_punct("]");
        finish(idx);
        e = std::move(idx);
      } else {
        return e;
      }
    }
  }

  MiniCAst primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Identifier: {
        MiniCAst n = node(AstKind::Identifier, take());
        n.text = t.text;
        finish(n);
        return n;
      }
      case TokenKind::IntLiteral:
      case TokenKind::CharLiteral: {
        MiniCAst n = node(AstKind::IntLiteral, take());
        n.text = t.text;
        finish(n);
        return n;
      }
      case TokenKind::StringLiteral: {
        MiniCAst n = node(AstKind::StringLiteral, take());
        n.text = t.text;
        finish(n);
        return n;
      }
      case TokenKind::Punct:
        if (t.is_punct("(")) {
          take();
          MiniCAst inner = expression();
          expect_punct(")");
          return inner;
        }
        break;
      default:
        break;
    }
    fail("expression");
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  Token eof_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::string Diagnostic::message() const {
  return where.file + ":" + std::to_string(where.line) + ":" + std::to_string(where.col) + ": expected " +
         expected + ", found " + found;
}

namespace {
std::string join_messages(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "\n";
    out += d.message();
  }
  return out;
}
}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diags)
    : Error(ErrorCode::Parse, join_messages(diags)), diags_(std::move(diags)) {}

MiniCAst parse(const std::vector<Token>& tokens, const std::string& file) {
  return Parser(tokens, file).translation_unit();
}

}  // namespace cpgscan::minic
