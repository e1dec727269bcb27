#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpgscan/error.hpp"

namespace cpgscan::query {

struct Location {
  int line = 1;
  int col = 1;
};

class SyntaxError : public Error {
 public:
  SyntaxError(Location where, const std::string& msg);
  Location where() const { return where_; }

 private:
  Location where_;
};

struct Argument {
  enum class Kind { String, Integer, Name };
  Kind kind = Kind::String;
  std::string text;  // String: unescaped value; Name: identifier
  std::int64_t value = 0;

  bool operator==(const Argument&) const = default;
};

struct MethodCall {
  std::string name;
  std::vector<Argument> args;

  bool operator==(const MethodCall&) const = default;
};

// `receiver.m1(..).m2(..)...`
struct Predicate {
  std::string receiver;
  std::vector<MethodCall> chain;

  bool operator==(const Predicate&) const = default;
};

// Boolean combination of predicates. `not` applies to a single predicate.
struct Condition {
  enum class Kind { Leaf, Not, And, Or };
  Kind kind = Kind::Leaf;
  Predicate predicate;  // Leaf
  std::vector<Condition> operands;  // Not: 1, And/Or: 2 (left-associative)

  bool operator==(const Condition&) const = default;
};

// `Type name` or `PredicateClass(args) name`.
struct Declaration {
  std::string type;
  std::string name;
  std::optional<std::vector<Argument>> class_args;

  bool operator==(const Declaration&) const = default;
};

struct SelectItem {
  bool is_string = false;
  std::string text;

  bool operator==(const SelectItem&) const = default;
};

struct QueryAst {
  std::vector<Declaration> decls;
  std::optional<Condition> where;
  std::vector<SelectItem> selects;

  bool operator==(const QueryAst&) const = default;
};

// Declaration types and predicate classes accepted in `from`.
bool is_node_type(const std::string& type);
bool is_flow_type(const std::string& type);
bool is_predicate_class(const std::string& type);

// Throws SyntaxError, UnknownType (ErrorCode::UnknownType) or UnboundName.
QueryAst parse_query(const std::string& text);

// Canonical single-line text; parse_query(print_query(q)) == q.
std::string print_query(const QueryAst& q);
std::string quote(const std::string& s);

}  // namespace cpgscan::query
