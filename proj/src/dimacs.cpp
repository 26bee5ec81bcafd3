#include "edgehub/dimacs.hpp"

#include <zlib.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "text_tokens.hpp"

namespace edgehub {

using detail::LineTokens;
using detail::parse_int;

Graph parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_problem = false;
  std::int64_t n = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    LineTokens tokens(line);
    std::string_view kind = tokens.next();
    if (kind.empty() || kind == "c") continue;
    if (kind == "p") {
      if (have_problem) throw ParseError(line_no, "duplicate problem line");
      if (tokens.next() != "sp") throw ParseError(line_no, "problem line must be 'p sp <n> <m>'");
      n = parse_int(tokens.next(), line_no, "vertex count");
      std::int64_t m = parse_int(tokens.next(), line_no, "arc count");
      if (n < 0 || n > std::int64_t{UINT32_MAX} - 1 || m < 0) throw ParseError(line_no, "problem size out of range");
      edges.reserve(static_cast<std::size_t>(m));
      have_problem = true;
    } else if (kind == "a") {
      if (!have_problem) throw ParseError(line_no, "arc before problem line");
      std::int64_t u = parse_int(tokens.next(), line_no, "tail id");
      std::int64_t v = parse_int(tokens.next(), line_no, "head id");
      std::int64_t w = parse_int(tokens.next(), line_no, "weight");
      if (u < 1 || u > n) throw ParseError(line_no, "vertex id " + std::to_string(u) + " out of range [1, " + std::to_string(n) + "]");
      if (v < 1 || v > n) throw ParseError(line_no, "vertex id " + std::to_string(v) + " out of range [1, " + std::to_string(n) + "]");
      if (w < 0) throw ParseError(line_no, "negative weight " + std::to_string(w));
      if (w > std::int64_t{UINT32_MAX}) throw ParseError(line_no, "weight exceeds 32 bits");
      if (!tokens.next().empty()) throw ParseError(line_no, "trailing tokens on arc line");
      edges.push_back({static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), static_cast<Weight>(w)});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(kind) + "'");
    }
  }
  if (!have_problem) throw ParseError(line_no, "missing problem line");
  return Graph::from_edges(static_cast<VertexId>(n), edges);
}

Graph parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

Graph load_dimacs_file(const std::filesystem::path& path) {
  if (path.extension() == ".gz") {
    gzFile file = gzopen(path.string().c_str(), "rb");
    if (file == nullptr) throw InputError("cannot open " + path.string());
    std::string text;
    char buf[1 << 16];
    int got = 0;
    while ((got = gzread(file, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(got));
    bool failed = got < 0;
    gzclose(file);
    if (failed) throw InputError("corrupt gzip stream in " + path.string());
    return parse_dimacs(std::string_view(text));
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Graph& graph) {
  out << "p sp " << graph.vertex_count() << ' ' << graph.arc_count() << '\n';
  for (VertexId u = 0; u < graph.vertex_count(); ++u) {
    for (const Arc& a : graph.neighbors(u)) out << "a " << u + 1 << ' ' << a.to + 1 << ' ' << a.weight << '\n';
  }
}

}  // namespace edgehub
