#pragma once

#include <string>

#include "cpgscan/cpg/code_graph.hpp"

namespace cpgscan {

using OrderedJson = nlohmann::ordered_json;

// nodes.jsonl / edges.jsonl record shapes. Field order is fixed so that the
// serialized form, and therefore the version hash, is canonical.
OrderedJson node_to_json(const StatementNode& node);
StatementNode node_from_json(const Json& j);
OrderedJson edge_to_json(const FlowEdge& edge);
FlowEdge edge_from_json(const Json& j);
OrderedJson aliases_to_json(const std::vector<AliasSet>& aliases);
std::vector<AliasSet> aliases_from_json(const Json& j);

// Counts per node and edge kind plus extraction diagnostics, as stored in meta.json.
OrderedJson stats_to_json(const CodeGraph& graph);
GraphDiagnostics diagnostics_from_json(const Json& stats);

// Exact bytes of nodes.jsonl / edges.jsonl for a graph.
std::string nodes_jsonl(const std::vector<StatementNode>& nodes);
std::string edges_jsonl(const std::vector<FlowEdge>& edges);

// sha256 over the two jsonl payloads and the alias table.
std::string graph_version(const std::string& nodes_bytes, const std::string& edges_bytes,
                          const std::vector<AliasSet>& aliases);

std::string sha256_hex(std::string_view data);

}  // namespace cpgscan
