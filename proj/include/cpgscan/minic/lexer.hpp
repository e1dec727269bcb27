#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cpgscan/error.hpp"
#include "cpgscan/statement.hpp"

namespace cpgscan::minic {

enum class TokenKind { Identifier, Keyword, IntLiteral, CharLiteral, StringLiteral, Punct, EndOfFile };

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string text;
  Span span;
  std::size_t offset = 0;  // byte offset of the first character

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

class LexError : public Error {
 public:
  LexError(const Span& where, const std::string& msg);
  const Span& where() const { return where_; }

 private:
  Span where_;
};

// Splits MiniC source into tokens. Whitespace, comments and preprocessor
// directive lines are skipped; every other byte belongs to exactly one token.
// The returned list does not include an end-of-file token.
std::vector<Token> tokenize(std::string_view source, const std::string& file);

bool is_keyword(std::string_view word);

}  // namespace cpgscan::minic
