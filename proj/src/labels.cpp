#include "edgehub/labels.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace edgehub {

void LabelSet::validate(VertexId v) const {
  const auto& label = labels_[v];
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i].hub >= labels_.size()) throw InputError("label of vertex " + std::to_string(v) + " names hub out of range");
    if (label[i].dist == kInfinity) throw InputError("label of vertex " + std::to_string(v) + " stores an infinite distance");
    if (i > 0 && label[i - 1].hub >= label[i].hub) {
      throw InputError("label of vertex " + std::to_string(v) + " is not strictly increasing by hub");
    }
  }
}

void LabelSet::assign(VertexId v, std::vector<LabelEntry> entries) {
  if (v >= labels_.size()) throw InputError("vertex " + std::to_string(v) + " outside label scope");
  std::sort(entries.begin(), entries.end(), [](const LabelEntry& a, const LabelEntry& b) { return a.hub < b.hub; });
  auto previous = std::move(labels_[v]);
  labels_[v] = std::move(entries);
  try {
    validate(v);
  } catch (...) {
    labels_[v] = std::move(previous);
    throw;
  }
}

LabelSet LabelSet::from_sorted(std::vector<std::vector<LabelEntry>> labels) {
  LabelSet set;
  set.labels_ = std::move(labels);
  for (VertexId v = 0; v < set.labels_.size(); ++v) set.validate(v);
  return set;
}

std::size_t LabelSet::total_entries() const noexcept {
  std::size_t total = 0;
  for (const auto& l : labels_) total += l.size();
  return total;
}

Distance join_labels(std::span<const LabelEntry> a, std::span<const LabelEntry> b, std::size_t* touched) noexcept {
  Distance best = kInfinity;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].hub == b[j].hub) {
      best = std::min(best, a[i].dist + b[j].dist);
      ++i;
      ++j;
    } else if (a[i].hub < b[j].hub) {
      ++i;
    } else {
      ++j;
    }
  }
  if (touched != nullptr) *touched += i + j;
  return best;
}

Distance lambda_query(VertexId s, VertexId t, const LabelSet& labels) {
  if (s >= labels.vertex_count() || t >= labels.vertex_count()) {
    throw InputError("query (" + std::to_string(s) + ", " + std::to_string(t) + ") outside label scope of " +
                     std::to_string(labels.vertex_count()) + " vertices");
  }
  return join_labels(labels.of(s), labels.of(t));
}

VertexOrder VertexOrder::from_sequence(std::vector<VertexId> sequence, VertexId universe) {
  VertexOrder order;
  order.rank_.assign(universe, kUnranked);
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    VertexId v = sequence[k];
    if (v >= universe) throw InputError("order names vertex " + std::to_string(v) + " outside [0, " + std::to_string(universe) + ")");
    if (order.rank_[v] != kUnranked) throw InputError("order lists vertex " + std::to_string(v) + " twice");
    order.rank_[v] = static_cast<std::uint32_t>(k);
  }
  order.sequence_ = std::move(sequence);
  return order;
}

VertexOrder degree_order(const Graph& graph, std::span<const VertexId> scope) {
  if (scope.empty()) throw InputError("degree order over an empty scope");
  std::vector<VertexId> seq(scope.begin(), scope.end());
  for (VertexId v : seq)
    if (!graph.contains(v)) throw InputError("order scope names vertex outside graph");
  std::sort(seq.begin(), seq.end(), [&](VertexId a, VertexId b) {
    std::size_t da = graph.degree(a);
    std::size_t db = graph.degree(b);
    return da != db ? da > db : a < b;
  });
  return VertexOrder::from_sequence(std::move(seq), graph.vertex_count());
}

namespace {

using HeapItem = std::pair<Distance, VertexId>;

void require_cover(const Graph& graph, const VertexOrder& order) {
  if (order.universe() != graph.vertex_count() || order.size() != graph.vertex_count()) {
    throw InputError("vertex order does not cover the graph's " + std::to_string(graph.vertex_count()) + " vertices");
  }
}

// Entries keyed by rank while building are remapped to vertex ids and
// re-sorted once every push has finished.
LabelSet finalize(std::vector<std::vector<LabelEntry>> by_rank, const VertexOrder& roots) {
  for (auto& label : by_rank) {
    for (LabelEntry& e : label) e.hub = roots.at(e.hub);
    std::sort(label.begin(), label.end(), [](const LabelEntry& a, const LabelEntry& b) { return a.hub < b.hub; });
  }
  return LabelSet::from_sorted(std::move(by_rank));
}

}  // namespace

LabelSet push_pruned(const Graph& graph, const VertexOrder& roots, const PushObserver& observer) {
  if (roots.universe() != graph.vertex_count()) throw InputError("root order universe does not match graph");
  const VertexId n = graph.vertex_count();
  std::vector<std::vector<LabelEntry>> labels(n);
  std::vector<Distance> dist(n, kInfinity);
  std::vector<VertexId> touched;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
  PushTrace trace;

  for (std::uint32_t k = 0; k < roots.size(); ++k) {
    const VertexId root = roots.at(k);
    if (observer) {
      trace.root = root;
      trace.labeled.clear();
      trace.pruned.clear();
    }
    dist[root] = 0;
    touched.push_back(root);
    heap.push({0, root});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      // The root's own label is never probed against itself.
      if (u != root && join_labels(labels[root], labels[u]) <= d) {
        if (observer) trace.pruned.push_back(u);
        continue;
      }
      labels[u].push_back({k, d});
      if (observer) trace.labeled.push_back(u);
      for (const Arc& a : graph.neighbors(u)) {
        Distance nd = d + a.weight;
        if (nd < dist[a.to]) {
          if (dist[a.to] == kInfinity) touched.push_back(a.to);
          dist[a.to] = nd;
          heap.push({nd, a.to});
        }
      }
    }
    for (VertexId v : touched) dist[v] = kInfinity;
    touched.clear();
    if (observer) observer(trace);
  }
  return finalize(std::move(labels), roots);
}

LabelSet build_pll(const Graph& graph, const VertexOrder& order, const PushObserver& observer) {
  require_cover(graph, order);
  return push_pruned(graph, order, observer);
}

LabelSet build_unpruned(const Graph& graph, const VertexOrder& order) {
  require_cover(graph, order);
  std::vector<std::vector<LabelEntry>> labels(graph.vertex_count());
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    std::vector<Distance> dist = dijkstra(graph, order.at(k));
    for (VertexId u = 0; u < graph.vertex_count(); ++u) {
      if (dist[u] != kInfinity && order.rank(u) >= k) labels[u].push_back({k, dist[u]});
    }
  }
  return finalize(std::move(labels), order);
}

LabelStats label_stats(const LabelSet& labels) {
  LabelStats stats;
  for (VertexId v = 0; v < labels.vertex_count(); ++v) {
    stats.total_entries += labels.of(v).size();
    stats.max_per_vertex = std::max(stats.max_per_vertex, labels.of(v).size());
  }
  if (labels.vertex_count() > 0) {
    stats.mean_per_vertex = static_cast<double>(stats.total_entries) / labels.vertex_count();
  }
  stats.bytes = stats.total_entries * 8;
  return stats;
}

}  // namespace edgehub
