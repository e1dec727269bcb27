#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cpgscan/cpg/code_graph.hpp"
#include "cpgscan/minic/lower.hpp"

namespace cpgscan {

// Control flow of one lowered function: Entry, parameters in order, the body,
// Exit. Edges leaving a predicate carry the branch label.
std::vector<FlowEdge> build_cfg(const minic::LoweredFunction& fn);

// Reaching definitions of the argument variables at one call.
struct ArgumentFlow {
  std::string var;
  Uid declaration = 0;
  std::vector<Uid> definitions;
};

struct CallSite {
  Uid site = 0;
  std::string callee;
  std::vector<std::vector<ArgumentFlow>> arguments;  // per argument position
};

// Returned variables of one return statement, with their declarations.
struct ReturnFlow {
  Uid site = 0;
  std::vector<std::pair<std::string, Uid>> vars;
};

struct DataFlow {
  std::vector<FlowEdge> edges;
  std::vector<AliasSet> aliases;
  std::vector<std::string> warnings;
  std::vector<CallSite> calls;
  std::vector<ReturnFlow> returns;
  std::size_t unreachable = 0;
};

// Reaching-definition and declaration DFG edges of one function plus its alias
// sets. Globals of the same file resolve through `unit`.
DataFlow build_dfg(const minic::LoweredFunction& fn, const minic::LoweredUnit& unit, const std::vector<FlowEdge>& cfg);

// Everything the sequential join phase needs from one file.
struct FileGraph {
  std::string file;
  std::vector<StatementNode> nodes;
  std::vector<FlowEdge> edges;
  std::vector<AliasSet> aliases;
  std::vector<std::string> warnings;
  struct Function {
    std::string name;
    Uid entry = 0;
    std::vector<Uid> params;
  };
  std::vector<Function> functions;
  std::vector<CallSite> calls;
  std::vector<ReturnFlow> returns;  // grouped by function name below
  std::map<std::string, std::vector<std::size_t>> returns_by_function;
  std::size_t unreachable = 0;
};

// Runs the whole per-file pipeline on one source text.
FileGraph build_file(const std::string& source, const std::string& file, Uid uid_base);

// Cross-file join: CG edges, parameter and return DFG edges, diagnostics.
CodeGraph build_cg(std::vector<FileGraph> files, std::vector<std::string> parse_errors);

struct SourceFile {
  std::string path;  // relative to the project root, '/' separated
  std::string text;
};

struct ExtractOptions {
  unsigned workers = 1;
  std::vector<std::string> exclude;  // fnmatch patterns on the relative path
};

struct ExtractTiming {
  double discover_ms = 0;
  double parse_ms = 0;
  double join_ms = 0;
  double total_ms = 0;
};

struct ExtractResult {
  CodeGraph graph;
  ExtractTiming timing;
};

// Per-file namespaces for uids: FNV-1a of the relative path, probing linearly
// on collisions in path order. Paths must be sorted.
std::vector<Uid> file_namespaces(const std::vector<std::string>& sorted_paths);

ExtractResult extract_sources(std::vector<SourceFile> sources, const ExtractOptions& options);
// Throws EmptyProject when no source file is found.
ExtractResult extract(const std::filesystem::path& project_dir, const ExtractOptions& options);

// Source files under `project_dir` (.c and .mc), relative, sorted, excludes applied.
std::vector<std::string> discover_sources(const std::filesystem::path& project_dir,
                                          const std::vector<std::string>& exclude);

inline constexpr int kUidShift = 20;

}  // namespace cpgscan
