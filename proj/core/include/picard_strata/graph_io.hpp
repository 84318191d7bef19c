#pragma once

#include <string>
#include <vector>

#include "picard_strata/dual_graph.hpp"

namespace picard_strata {

// JSON graph schema (format 1):
//   {"format": 1,
//    "vertices": [{"id": "v1", "genus": 1}, ...],
//    "edges": [["v1", "v2"], ["v1", "v1"], ...]}
// Loops are repeated-id pairs.  "format" is optional on input and must be 1
// when present.  Malformed documents raise validation_error with a message
// naming the offending field.
DualGraph graph_from_json(const std::string& text);
DualGraph graph_from_json_file(const std::string& path);

// Deterministic serialization of the schema above, "format" included.
// indent < 0 emits compact single-line JSON.
std::string graph_to_json(const DualGraph& graph, int indent = -1);

// Undirected DOT with vertex labels "id:g=<genus>", vertices in declaration
// order, edges in normalized order.
std::string graph_to_dot(const DualGraph& graph);

// Parses a JSON integer array; expect_len < 0 skips the length check.
std::vector<long long> multidegree_from_json(const std::string& text, int expect_len = -1);
std::vector<long long> multidegree_from_json_file(const std::string& path, int expect_len = -1);

} // namespace picard_strata
