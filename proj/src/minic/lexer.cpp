#include "cpgscan/minic/lexer.hpp"

#include <array>
#include <cctype>

namespace cpgscan::minic {

namespace {

constexpr std::array kKeywords = {
    std::string_view{"int"},   std::string_view{"char"},     std::string_view{"void"},
    std::string_view{"if"},    std::string_view{"else"},     std::string_view{"while"},
    std::string_view{"return"}, std::string_view{"for"},     std::string_view{"do"},
    std::string_view{"break"}, std::string_view{"continue"}, std::string_view{"struct"},
    std::string_view{"switch"}, std::string_view{"goto"},    std::string_view{"typedef"},
};

// Longest-match order: two-character operators first.
constexpr std::array kPuncts = {
    std::string_view{"=="}, std::string_view{"!="}, std::string_view{"<="}, std::string_view{">="},
    std::string_view{"&&"}, std::string_view{"||"}, std::string_view{"++"}, std::string_view{"--"},
    std::string_view{"->"}, std::string_view{"("},  std::string_view{")"},  std::string_view{"{"},
    std::string_view{"}"},  std::string_view{"["},  std::string_view{"]"},  std::string_view{";"},
    std::string_view{","},  std::string_view{"="},  std::string_view{"<"},  std::string_view{">"},
    std::string_view{"+"},  std::string_view{"-"},  std::string_view{"*"},  std::string_view{"/"},
    std::string_view{"%"},  std::string_view{"&"},  std::string_view{"!"},  std::string_view{"."},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
      at_line_start_ = true;
    } else {
      ++col_;
      if (!std::isspace(static_cast<unsigned char>(src_[pos_]))) at_line_start_ = false;
    }
    ++pos_;
  }

  Span here() const { return Span{file_, line_, col_}; }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        Span start = here();
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) throw LexError(start, "unterminated block comment");
        advance();
        advance();
      } else if (c == '#' && at_line_start_) {
        // Directive lines are skipped whole, honoring backslash continuations.
        while (pos_ < src_.size() && peek() != '\n') {
          if (peek() == '\\' && peek(1) == '\n') advance();
          advance();
        }
      } else {
        return;
      }
    }
  }

  Token make(TokenKind kind, std::size_t begin, const Span& span) const {
    return Token{kind, std::string(src_.substr(begin, pos_ - begin)), span, begin};
  }

  void quoted(char quote, const Span& start) {
    advance();
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n')
        throw LexError(start, quote == '"' ? "unterminated string literal" : "unterminated character literal");
      if (peek() == '\\') {
        advance();
        if (pos_ >= src_.size()) continue;
        advance();
        continue;
      }
      if (peek() == quote) {
        advance();
        return;
      }
      advance();
    }
  }

  Token next() {
    std::size_t begin = pos_;
    Span start = here();
    char c = peek();
    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_char(peek())) advance();
      Token t = make(TokenKind::Identifier, begin, start);
      if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(peek()))) advance();
      return make(TokenKind::IntLiteral, begin, start);
    }
    if (c == '"') {
      quoted('"', start);
      return make(TokenKind::StringLiteral, begin, start);
    }
    if (c == '\'') {
      quoted('\'', start);
      return make(TokenKind::CharLiteral, begin, start);
    }
    for (auto p : kPuncts) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        return make(TokenKind::Punct, begin, start);
      }
    }
    std::string printable = std::isprint(static_cast<unsigned char>(c))
                                ? std::string(1, c)
                                : "\\x" + std::to_string(static_cast<unsigned char>(c));
    throw LexError(start, "illegal character '" + printable + "'");
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool at_line_start_ = true;
};

}  // namespace

LexError::LexError(const Span& where, const std::string& msg)
    : Error(ErrorCode::Lex,
            where.file + ":" + std::to_string(where.line) + ":" + std::to_string(where.col) + ": " + msg),
      where_(where) {}

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

}  // namespace cpgscan::minic
