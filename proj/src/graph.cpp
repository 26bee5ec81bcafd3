#include "edgehub/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace edgehub {

namespace {

using HeapItem = std::pair<Distance, VertexId>;
// Min-heap on (distance, vertex): equal distances settle the lower id first.
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

void check_vertex(const Graph& g, VertexId v, const char* what) {
  if (!g.contains(v)) {
    throw InputError(std::string(what) + " vertex " + std::to_string(v) + " out of range [0, " +
                     std::to_string(g.vertex_count()) + ")");
  }
}

}  // namespace

Graph::Graph() : offsets_(std::make_shared<const std::vector<std::size_t>>(1, 0)) {}

Graph::Graph(VertexId n, std::shared_ptr<const std::vector<std::size_t>> offsets, std::vector<Arc> arcs)
    : vertex_count_(n), offsets_(std::move(offsets)), arcs_(std::move(arcs)) {}

Graph Graph::from_edges(VertexId vertex_count, std::span<const Edge> edges) {
  struct Directed {
    VertexId from;
    VertexId to;
    Weight weight;
  };
  std::vector<Directed> directed;
  directed.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") references a vertex outside [0, " + std::to_string(vertex_count) + ")");
    }
    if (e.u == e.v) continue;
    directed.push_back({e.u, e.v, e.weight});
    directed.push_back({e.v, e.u, e.weight});
  }
  std::sort(directed.begin(), directed.end(), [](const Directed& a, const Directed& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.weight < b.weight;
  });

  auto offsets = std::make_shared<std::vector<std::size_t>>(std::size_t{vertex_count} + 1, 0);
  std::vector<Arc> arcs;
  arcs.reserve(directed.size());
  for (std::size_t i = 0; i < directed.size(); ++i) {
    // Sorted by weight within (from, to): the first copy is the minimum.
    if (i > 0 && directed[i].from == directed[i - 1].from && directed[i].to == directed[i - 1].to) continue;
    arcs.push_back({directed[i].to, directed[i].weight});
    ++(*offsets)[directed[i].from + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) (*offsets)[v + 1] += (*offsets)[v];
  return Graph(vertex_count, std::move(offsets), std::move(arcs));
}

std::size_t Graph::find_arc(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v, [](const Arc& a, VertexId x) { return a.to < x; });
  if (it == nb.end() || it->to != v) return arcs_.size();
  return static_cast<std::size_t>(it - nb.begin()) + (*offsets_)[u];
}

std::optional<Weight> Graph::weight_between(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  std::size_t i = find_arc(u, v);
  if (i == arcs_.size()) return std::nullopt;
  return arcs_[i].weight;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count_; ++u) {
    for (const Arc& a : neighbors(u)) {
      if (u < a.to) out.push_back({u, a.to, a.weight});
    }
  }
  return out;
}

Graph Graph::with_updated_weights(std::span<const Edge> updates) const {
  Graph copy(vertex_count_, offsets_, arcs_);
  for (const Edge& e : updates) {
    std::size_t forward = contains(e.u) && contains(e.v) ? find_arc(e.u, e.v) : arcs_.size();
    if (forward == arcs_.size()) {
      throw InputError("weight update names unknown edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ")");
    }
    copy.arcs_[forward].weight = e.weight;
    copy.arcs_[find_arc(e.v, e.u)].weight = e.weight;
  }
  return copy;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertex_count_ != b.vertex_count_ || a.arcs_.size() != b.arcs_.size()) return false;
  if (*a.offsets_ != *b.offsets_) return false;
  return std::equal(a.arcs_.begin(), a.arcs_.end(), b.arcs_.begin(),
                    [](const Arc& x, const Arc& y) { return x.to == y.to && x.weight == y.weight; });
}

void DijkstraScratch::resize(VertexId vertex_count) {
  dist_.assign(vertex_count, kInfinity);
  touched_.clear();
}

std::vector<Distance> dijkstra(const Graph& graph, VertexId source) {
  check_vertex(graph, source, "source");
  std::vector<Distance> dist(graph.vertex_count(), kInfinity);
  MinHeap heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;  // stale entry
    for (const Arc& a : graph.neighbors(v)) {
      Distance nd = d + a.weight;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        heap.push({nd, a.to});
      }
    }
  }
  return dist;
}

Distance dijkstra_pair(const Graph& graph, VertexId s, VertexId t) {
  DijkstraScratch scratch(graph.vertex_count());
  return dijkstra_pair(graph, s, t, scratch);
}

Distance dijkstra_pair(const Graph& graph, VertexId s, VertexId t, DijkstraScratch& scratch) {
  check_vertex(graph, s, "source");
  check_vertex(graph, t, "target");
  if (s == t) return 0;
  if (scratch.dist_.size() != graph.vertex_count()) scratch.resize(graph.vertex_count());

  auto& dist = scratch.dist_;
  auto& touched = scratch.touched_;
  for (VertexId v : touched) dist[v] = kInfinity;
  touched.clear();

  Distance result = kInfinity;
  MinHeap heap;
  dist[s] = 0;
  touched.push_back(s);
  heap.push({0, s});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    if (v == t) {
      result = d;
      break;
    }
    for (const Arc& a : graph.neighbors(v)) {
      Distance nd = d + a.weight;
      if (nd < dist[a.to]) {
        if (dist[a.to] == kInfinity) touched.push_back(a.to);
        dist[a.to] = nd;
        heap.push({nd, a.to});
      }
    }
  }
  return result;
}

}  // namespace edgehub
