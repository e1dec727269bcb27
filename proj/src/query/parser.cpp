#include <cctype>
#include <set>

#include "cpgscan/query/query_ast.hpp"

namespace cpgscan::query {

SyntaxError::SyntaxError(Location where, const std::string& msg)
    : Error(ErrorCode::Syntax, std::to_string(where.line) + ":" + std::to_string(where.col) + ": " + msg),
      where_(where) {}

bool is_node_type(const std::string& t) { return t == "Call" || t == "Statement" || t == "Expression"; }
bool is_flow_type(const std::string& t) { return t == "TaintFlow"; }
bool is_predicate_class(const std::string& t) {
  return t == "ContainsFunctionCall" || t == "FunctionMatches" || t == "CodeContains" || t == "CodeMatches";
}

namespace {

enum class Tok { Ident, String, Integer, Dot, Comma, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  Location at;
};

const std::set<std::string> kKeywords = {"from", "where", "select", "and", "or", "not"};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < s.size(); ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Location at{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), 0, at});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      Token t{Tok::Integer, s.substr(i, j - i), 0, at};
      try {
        t.value = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        throw SyntaxError(at, "integer out of range");
      }
      out.push_back(std::move(t));
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string value;
      advance(1);
      while (true) {
        if (i >= s.size() || s[i] == '\n') throw SyntaxError(at, "unterminated string");
        char d = s[i];
        if (d == '"') {
          advance(1);
          break;
        }
        if (d == '\\') {
          if (i + 1 >= s.size()) throw SyntaxError(at, "unterminated string");
          char e = s[i + 1];
          value += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          advance(2);
          continue;
        }
        value += d;
        advance(1);
      }
      out.push_back({Tok::String, std::move(value), 0, at});
      continue;
    }
    Tok k;
    switch (c) {
      case '.': k = Tok::Dot; break;
      case ',': k = Tok::Comma; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw SyntaxError(at, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), 0, at});
    advance(1);
  }
  out.push_back({Tok::End, "", 0, {line, col}});
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::Integer: return "integer";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of query";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  QueryAst run() {
    QueryAst q;
    keyword("from");
    do q.decls.push_back(declaration());
    while (accept(Tok::Comma));
    for (const auto& d : q.decls)
      if (!names_.insert(d.name).second) throw Error(ErrorCode::UnboundName, "binding '" + d.name + "' declared twice");
    if (at_keyword("where")) {
      next();
      q.where = disjunction();
    }
    keyword("select");
    do q.selects.push_back(select_item());
    while (accept(Tok::Comma));
    if (peek().kind != Tok::End) fail("end of query");
    return q;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of query" : describe(t.kind) + std::string(" '") + t.text + "'";
    throw SyntaxError(t.at, "expected " + expected + ", found " + found);
  }
  const Token& expect(Tok k) {
    if (peek().kind != k) fail(describe(k));
    return next();
  }
  bool at_keyword(const char* kw) const { return peek().kind == Tok::Ident && peek().text == kw; }
  void keyword(const char* kw) {
    if (!at_keyword(kw)) fail(std::string("'") + kw + "'");
    next();
  }
  std::string name() {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) fail("name");
    return next().text;
  }

  Declaration declaration() {
    Declaration d;
    const Token& t = peek();
    d.type = name();
    if (peek().kind == Tok::LParen) {
      if (!is_predicate_class(d.type)) throw Error(ErrorCode::UnknownType, "unknown predicate class '" + d.type + "'");
      d.class_args = arguments(false);
    } else if (!is_node_type(d.type) && !is_flow_type(d.type)) {
      throw Error(ErrorCode::UnknownType, std::to_string(t.at.line) + ":" + std::to_string(t.at.col) +
                                              ": unknown type '" + d.type + "'");
    }
    d.name = name();
    return d;
  }

  std::vector<Argument> arguments(bool allow_names) {
    expect(Tok::LParen);
    std::vector<Argument> args;
    if (accept(Tok::RParen)) return args;
    do {
      const Token& t = peek();
      Argument a;
      if (t.kind == Tok::String) {
        a.kind = Argument::Kind::String;
        a.text = next().text;
      } else if (t.kind == Tok::Integer) {
        a.kind = Argument::Kind::Integer;
        a.value = next().value;
        a.text = std::to_string(a.value);
      } else if (allow_names && t.kind == Tok::Ident && !kKeywords.count(t.text)) {
        a.kind = Argument::Kind::Name;
        a.text = next().text;
        bound(a.text, t.at);
      } else {
        fail(allow_names ? "string, integer or name" : "string or integer");
      }
      args.push_back(std::move(a));
    } while (accept(Tok::Comma));
    expect(Tok::RParen);
    return args;
  }

  void bound(const std::string& n, Location at) const {
    if (!names_.count(n))
      throw Error(ErrorCode::UnboundName,
                  std::to_string(at.line) + ":" + std::to_string(at.col) + ": '" + n + "' is not declared");
  }

  Condition disjunction() {
    Condition lhs = conjunction();
    while (at_keyword("or")) {
      next();
      Condition c;
      c.kind = Condition::Kind::Or;
      c.operands.push_back(std::move(lhs));
      c.operands.push_back(conjunction());
      lhs = std::move(c);
    }
    return lhs;
  }

  Condition conjunction() {
    Condition lhs = unary();
    while (at_keyword("and")) {
      next();
      Condition c;
      c.kind = Condition::Kind::And;
      c.operands.push_back(std::move(lhs));
      c.operands.push_back(unary());
      lhs = std::move(c);
    }
    return lhs;
  }

  Condition unary() {
    if (at_keyword("not")) {
      next();
      Condition c;
      c.kind = Condition::Kind::Not;
      c.operands.push_back(leaf());
      return c;
    }
    return leaf();
  }

  Condition leaf() {
    Condition c;
    const Token& t = peek();
    c.predicate.receiver = name();
    bound(c.predicate.receiver, t.at);
    if (peek().kind != Tok::Dot) fail("'.'");
    while (accept(Tok::Dot)) {
      MethodCall m;
      m.name = name();
      m.args = arguments(true);
      c.predicate.chain.push_back(std::move(m));
    }
    return c;
  }

  SelectItem select_item() {
    const Token& t = peek();
    if (t.kind == Tok::String) return {true, next().text};
    std::string n = name();
    bound(n, t.at);
    return {false, n};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> names_;
};

void print_args(std::string& out, const std::vector<Argument>& args) {
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    const auto& a = args[i];
    if (a.kind == Argument::Kind::String) out += quote(a.text);
    else if (a.kind == Argument::Kind::Integer) out += std::to_string(a.value);
    else out += a.text;
  }
  out += ')';
}

void print_condition(std::string& out, const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::Leaf:
      out += c.predicate.receiver;
      for (const auto& m : c.predicate.chain) {
        out += '.' + m.name;
        print_args(out, m.args);
      }
      return;
    case Condition::Kind::Not:
      out += "not ";
      print_condition(out, c.operands[0]);
      return;
    case Condition::Kind::And:
    case Condition::Kind::Or:
      // Operand shapes always reparse to the same left-associative tree.
      print_condition(out, c.operands[0]);
      out += c.kind == Condition::Kind::And ? " and " : " or ";
      print_condition(out, c.operands[1]);
      return;
  }
}

}  // namespace

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '\t') {
      out += "\\t";
      continue;
    }
    out += c;
  }
  return out + '"';
}

QueryAst parse_query(const std::string& text) { return Parser(lex(text)).run(); }

std::string print_query(const QueryAst& q) {
  std::string out = "from ";
  for (std::size_t i = 0; i < q.decls.size(); ++i) {
    if (i) out += ", ";
    out += q.decls[i].type;
    if (q.decls[i].class_args) print_args(out, *q.decls[i].class_args);
    out += ' ' + q.decls[i].name;
  }
  if (q.where) {
    out += " where ";
    print_condition(out, *q.where);
  }
  out += " select ";
  for (std::size_t i = 0; i < q.selects.size(); ++i) {
    if (i) out += ", ";
    out += q.selects[i].is_string ? quote(q.selects[i].text) : q.selects[i].text;
  }
  return out;
}

}  // namespace cpgscan::query
