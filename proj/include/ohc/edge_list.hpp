#pragma once

#include "ohc/graph.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace ohc {

// Edge-list text format:
//
//   n <count>
//   u v
//   ...
//
// 0-based ids, whitespace separated, LF line endings. A numeric header
// "<count> [<arcs>]" is accepted as well; when the arc count is given it must
// match. Blank lines are ignored. Loops, 2-cycles and repeated arcs are
// rejected with the offending line number.

OrientedGraph parse_edge_list(std::string_view text);

/// Canonical form: "n <count>" header and arcs in sorted order.
std::string emit_edge_list(const OrientedGraph& g);

OrientedGraph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const std::filesystem::path& path, const OrientedGraph& g);

}  // namespace ohc
