#pragma once

#include <string>
#include <vector>

#include "cpgscan/error.hpp"
#include "cpgscan/minic/ast.hpp"
#include "cpgscan/minic/lexer.hpp"

namespace cpgscan::minic {

struct Diagnostic {
  Span where;
  std::string expected;
  std::string found;

  std::string message() const;
};

// Raised once a whole translation unit has been parsed, carrying every error
// found; the parser resynchronizes at the next ';' or '}' after each one.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

// Builds a TranslationUnit. `file` labels the end-of-input position in errors.
MiniCAst parse(const std::vector<Token>& tokens, const std::string& file);

}  // namespace cpgscan::minic
