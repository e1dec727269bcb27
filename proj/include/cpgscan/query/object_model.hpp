#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpgscan/query/engine.hpp"

namespace cpgscan::query {

// What statements do to declared objects (a declaration, merged over its alias
// set). Shared by the object flow modes of the engine and the native
// detectors. Memoizes; one instance per thread.
class ObjectModel {
 public:
  ObjectModel(const CodeGraph& graph, const EngineOptions& options);

  // Alias-resolved declaration, nullopt when the variable is undeclared.
  std::optional<Uid> object_of(Uid uid, const std::string& var) const;

  // Objects a statement assigns.
  std::vector<Uid> defined_objects(Uid uid) const;
  // Objects a statement assigns through function-local variables. Storage
  // held by a global stays reachable and is never a leak.
  std::vector<Uid> defined_local_objects(Uid uid) const;
  // `var` at `uid` is declared at file scope (before alias merging).
  bool is_global_var(Uid uid, const std::string& var) const;
  // Objects a statement dereferences, indexes or passes to a using/releasing call.
  std::vector<Uid> accessed_objects(Uid uid) const;
  bool accesses(Uid uid, Uid obj) const;
  // Passed directly to a deallocator.
  bool deallocates(Uid uid, Uid obj) const;
  // Redefinition of the object by something other than a copy of itself.
  bool kills(Uid uid, Uid obj) const;
  // The object escapes: returned, stored through a pointer or into a global,
  // handed to a project function that disposes of it, or (pessimistic mode)
  // handed to an unknown external.
  bool escapes(Uid uid, Uid obj) const;
  // Label of the branch of predicate `uid` on which the object is NULL.
  std::optional<bool> null_branch(Uid uid, Uid obj) const;

  bool is_project_function(const std::string& name) const { return graph_.entry_of(name) != 0; }
  const CodeGraph& graph() const { return graph_; }

 private:
  // Direct identifier arguments per call: (callee, position, var).
  struct CallArg {
    std::string callee;
    std::size_t position;
    std::string var;
  };
  std::vector<CallArg> call_args(Uid uid) const;
  bool is_global(Uid decl) const;
  bool disposes(const std::string& fn, std::size_t position) const;

  const CodeGraph& graph_;
  const EngineOptions& options_;
  mutable std::map<std::pair<Uid, std::string>, std::optional<Uid>> objects_;
  mutable std::map<std::pair<std::string, std::size_t>, bool> disposes_;
};

// Identifier texts anywhere below `ast`.
void collect_identifiers(const Json& ast, std::vector<std::string>& out);

}  // namespace cpgscan::query
