#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "edgehub/types.hpp"

namespace edgehub {

struct Arc {
  VertexId to;
  Weight weight;
};

// Undirected edge as seen by builders and updates.
struct Edge {
  VertexId u;
  VertexId v;
  Weight weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable symmetric weighted graph in CSR form.
///
/// Every edge is stored as two arcs with equal weight. Construction drops
/// self-loops and collapses parallel edges to their minimum weight; each
/// neighbor list is sorted by target id. Copies share the offset table, so
/// weight snapshots (with_updated_weights) only duplicate the arc array.
class Graph {
 public:
  Graph();

  static Graph from_edges(VertexId vertex_count, std::span<const Edge> edges);

  VertexId vertex_count() const noexcept { return vertex_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::size_t edge_count() const noexcept { return arcs_.size() / 2; }

  std::span<const Arc> neighbors(VertexId v) const {
    const auto& off = *offsets_;
    return {arcs_.data() + off[v], arcs_.data() + off[v + 1]};
  }
  std::size_t degree(VertexId v) const {
    const auto& off = *offsets_;
    return off[v + 1] - off[v];
  }
  bool contains(VertexId v) const noexcept { return v < vertex_count_; }

  std::optional<Weight> weight_between(VertexId u, VertexId v) const;

  // Edges with u < v, ordered by (u, v).
  std::vector<Edge> edges() const;

  /// Returns a copy whose listed edges carry new weights. Every update must
  /// name an existing edge; otherwise InputError.
  Graph with_updated_weights(std::span<const Edge> updates) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  Graph(VertexId n, std::shared_ptr<const std::vector<std::size_t>> offsets, std::vector<Arc> arcs);

  std::size_t find_arc(VertexId u, VertexId v) const;

  VertexId vertex_count_ = 0;
  std::shared_ptr<const std::vector<std::size_t>> offsets_;
  std::vector<Arc> arcs_;
};

/// Reusable per-thread state for repeated Dijkstra runs on graphs of up to a
/// fixed size. Resetting touches only the vertices the previous run reached.
class DijkstraScratch {
 public:
  explicit DijkstraScratch(VertexId vertex_count = 0) { resize(vertex_count); }
  void resize(VertexId vertex_count);

 private:
  friend Distance dijkstra_pair(const Graph&, VertexId, VertexId, DijkstraScratch&);
  std::vector<Distance> dist_;
  std::vector<VertexId> touched_;
};

std::vector<Distance> dijkstra(const Graph& graph, VertexId source);

Distance dijkstra_pair(const Graph& graph, VertexId s, VertexId t);
Distance dijkstra_pair(const Graph& graph, VertexId s, VertexId t, DijkstraScratch& scratch);

}  // namespace edgehub
