#pragma once

#include <functional>
#include <span>
#include <vector>

#include "edgehub/graph.hpp"

namespace edgehub {

struct LabelEntry {
  VertexId hub;
  Distance dist;

  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
};

/// Per-vertex hub labels, each sorted by strictly increasing hub id with
/// finite distances. One representation serves plain 2-hop covers, border
/// labels and district labels.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(VertexId vertex_count) : labels_(vertex_count) {}

  VertexId vertex_count() const noexcept { return static_cast<VertexId>(labels_.size()); }
  std::span<const LabelEntry> of(VertexId v) const { return labels_[v]; }

  // Sorts by hub; rejects duplicate hubs, infinite distances and hubs
  // outside the vertex range.
  void assign(VertexId v, std::vector<LabelEntry> entries);

  // Takes per-vertex sequences already sorted by hub; validated like assign.
  static LabelSet from_sorted(std::vector<std::vector<LabelEntry>> labels);

  std::size_t total_entries() const noexcept;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  void validate(VertexId v) const;
  std::vector<std::vector<LabelEntry>> labels_;
};

/// Linear merge over two hub-sorted label sequences: the minimum of
/// a.dist + b.dist over common hubs, or kInfinity. When `touched` is given
/// it is incremented by the number of entries the merge advanced over.
Distance join_labels(std::span<const LabelEntry> a, std::span<const LabelEntry> b,
                     std::size_t* touched = nullptr) noexcept;

// lambda(s, t, L). Throws InputError when s or t is outside the label scope.
Distance lambda_query(VertexId s, VertexId t, const LabelSet& labels);

/// Total priority order over a vertex subset; position 0 is pushed first.
class VertexOrder {
 public:
  static constexpr std::uint32_t kUnranked = UINT32_MAX;

  VertexOrder() = default;
  // `universe` bounds the vertex ids; the sequence must be duplicate-free.
  static VertexOrder from_sequence(std::vector<VertexId> sequence, VertexId universe);

  std::span<const VertexId> sequence() const noexcept { return sequence_; }
  std::size_t size() const noexcept { return sequence_.size(); }
  VertexId at(std::size_t position) const { return sequence_[position]; }
  std::uint32_t rank(VertexId v) const { return v < rank_.size() ? rank_[v] : kUnranked; }
  bool contains(VertexId v) const { return rank(v) != kUnranked; }
  VertexId universe() const noexcept { return static_cast<VertexId>(rank_.size()); }

 private:
  std::vector<VertexId> sequence_;
  std::vector<std::uint32_t> rank_;
};

// Descending degree, ties by ascending id. Throws InputError on empty scope.
VertexOrder degree_order(const Graph& graph, std::span<const VertexId> scope);

/// What one hub push did: vertices that received the hub, and vertices that
/// were settled but pruned. Used by tests and diagnostics.
struct PushTrace {
  VertexId root = 0;
  std::vector<VertexId> labeled;
  std::vector<VertexId> pruned;
};
using PushObserver = std::function<void(const PushTrace&)>;

/// Pruned hub pushing from every root in `roots`, in order, over the whole
/// graph. Each push is a Dijkstra search that stores <root, d> at a settled
/// vertex u and expands u only when lambda(root, u) over the labels built so
/// far exceeds d. The root always receives <root, 0>. Labels of vertices
/// outside `roots` hold only root hubs.
LabelSet push_pruned(const Graph& graph, const VertexOrder& roots, const PushObserver& observer = {});

// Pruned landmark labeling; `order` must cover every vertex of `graph`.
LabelSet build_pll(const Graph& graph, const VertexOrder& order, const PushObserver& observer = {});

// Naive hub pushing without pruning (test oracle): hub r is stored at every
// reachable vertex ranked at or after r.
LabelSet build_unpruned(const Graph& graph, const VertexOrder& order);

struct LabelStats {
  std::size_t total_entries = 0;
  std::size_t max_per_vertex = 0;
  double mean_per_vertex = 0.0;
  std::size_t bytes = 0;  // 8 per entry: 32-bit hub + 32-bit distance

  friend bool operator==(const LabelStats&, const LabelStats&) = default;
};

LabelStats label_stats(const LabelSet& labels);

}  // namespace edgehub
