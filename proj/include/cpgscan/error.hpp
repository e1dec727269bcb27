#pragma once

#include <stdexcept>
#include <string>

namespace cpgscan {

enum class ErrorCode {
  Io,
  Lex,
  Parse,
  Lowering,
  EmptyProject,
  DanglingEdge,
  VersionMismatch,
  CorruptSnapshot,
  UnknownNode,
  Syntax,
  UnknownType,
  UnboundName,
  Type,
  NoDeclaration,
  ProviderUnavailable,
  UnknownCase,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cpgscan
