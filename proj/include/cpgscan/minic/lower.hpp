#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cpgscan/error.hpp"
#include "cpgscan/minic/ast.hpp"
#include "cpgscan/statement.hpp"

namespace cpgscan::minic {

class LoweringError : public Error {
 public:
  LoweringError(const Span& where, const std::string& msg);
};

// Statement nesting of a function body, in terms of statement uids.
struct ControlNode {
  enum class Shape { Simple, If, While, Return };
  Uid uid = 0;
  Shape shape = Shape::Simple;
  std::vector<ControlNode> then_branch;  // While: loop body
  std::vector<ControlNode> else_branch;
};

struct LoweredFunction {
  std::string name;
  std::string file;
  Uid entry = 0;
  Uid exit = 0;
  std::vector<Uid> params;
  std::vector<std::string> param_names;
  std::vector<ControlNode> body;
  // Lexical order: Entry, parameters, body statements, Exit.
  std::vector<UnifiedStatement> statements;
  std::set<std::string> pointer_vars;
  std::map<std::string, Uid> declarations;
};

struct LoweredUnit {
  std::string file;
  std::vector<UnifiedStatement> globals;
  std::map<std::string, Uid> global_declarations;
  std::set<std::string> global_pointers;
  std::vector<LoweredFunction> functions;

  // Every statement of the unit ordered by uid.
  std::vector<UnifiedStatement> all_statements() const;
};

// Converts a TranslationUnit into unified statements. Uids are `uid_base`
// plus the statement's lexical ordinal within the file.
LoweredUnit lower(const MiniCAst& tu, std::string_view source, Uid uid_base);

}  // namespace cpgscan::minic
