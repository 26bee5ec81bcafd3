#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "edgehub/graph.hpp"

namespace edgehub {

// 9th DIMACS Challenge shortest-path format:
//   c <comment>
//   p sp <n> <m>
//   a <u> <v> <w>      (1-based ids, one directed arc per line)
// Arcs are symmetrized on ingestion; parallel arcs keep the minimum weight
// and self-loops are dropped. Errors throw ParseError with the line number.
Graph parse_dimacs(std::istream& in);
Graph parse_dimacs(std::string_view text);

// Reads a .gr file; names ending in ".gz" are inflated with zlib.
Graph load_dimacs_file(const std::filesystem::path& path);

// Writes both arcs of every edge, sources ascending, targets ascending.
void write_dimacs(std::ostream& out, const Graph& graph);

}  // namespace edgehub
