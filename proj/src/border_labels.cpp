#include "edgehub/border_labels.hpp"

#include <algorithm>
#include <string>

#include "edgehub/label_io.hpp"

namespace edgehub {

VertexOrder border_order(const Graph& graph, const BorderSet& borders) {
  if (borders.size() == 0) return VertexOrder::from_sequence({}, graph.vertex_count());
  return degree_order(graph, borders.all());
}

BorderLabels build_border_labels(const Graph& graph, const BorderSet& borders, const VertexOrder& order) {
  if (order.size() != borders.size() || order.universe() != graph.vertex_count() ||
      !std::ranges::all_of(borders.all(), [&](VertexId b) { return order.contains(b); })) {
    throw InputError("border order must be a permutation of the " + std::to_string(borders.size()) + " border vertices");
  }
  return BorderLabels(push_pruned(graph, order), order);
}

BorderLabels build_border_labels(const Graph& graph, const BorderSet& borders) {
  return build_border_labels(graph, borders, border_order(graph, borders));
}

BorderLabels unpruned_border_labels(const Graph& graph, const BorderSet& borders) {
  std::vector<std::vector<LabelEntry>> labels(graph.vertex_count());
  // B is flattened per district; hubs must be pushed in ascending id so each
  // vertex's label stays sorted.
  std::vector<VertexId> ascending(borders.all().begin(), borders.all().end());
  std::sort(ascending.begin(), ascending.end());
  for (VertexId b : ascending) {
    std::vector<Distance> dist = dijkstra(graph, b);
    for (VertexId v = 0; v < graph.vertex_count(); ++v)
      if (dist[v] != kInfinity) labels[v].push_back({b, dist[v]});
  }
  return BorderLabels(LabelSet::from_sorted(std::move(labels)), border_order(graph, borders));
}

bool border_query_eligible(VertexId s, VertexId t, const Partition& partition, const BorderSet& borders) {
  return (borders.is_border(s) && borders.is_border(t)) || partition.district_of(s) != partition.district_of(t);
}

Distance border_query(VertexId s, VertexId t, const BorderLabels& labels, const Partition& partition,
                      const BorderSet& borders) {
  if (s >= partition.vertex_count() || t >= partition.vertex_count()) {
    throw InputError("query (" + std::to_string(s) + ", " + std::to_string(t) + ") has an id out of range");
  }
  if (!border_query_eligible(s, t, partition, borders)) {
    throw RoutingError("vertices " + std::to_string(s) + " and " + std::to_string(t) + " share district " +
                       std::to_string(partition.district_of(s)) +
                       " and are not both borders; use the district index");
  }
  return lambda_query(s, t, labels.labels());
}

void write_border_labels(std::ostream& out, const BorderLabels& labels) {
  write_label_file(out, labels.labels(), kLabelFlagBorderHubs, labels.order().sequence());
}

BorderLabels read_border_labels(std::istream& in) {
  LabelFile file = read_label_file(in);
  if ((file.flags & kLabelFlagBorderHubs) == 0) throw InputError("label file is not a border-label file");
  VertexOrder order = VertexOrder::from_sequence(std::move(file.border_order), file.labels.vertex_count());
  for (VertexId v = 0; v < file.labels.vertex_count(); ++v) {
    for (const LabelEntry& e : file.labels.of(v)) {
      if (!order.contains(e.hub)) throw InputError("border-label file stores a non-border hub");
    }
  }
  return BorderLabels(std::move(file.labels), std::move(order));
}

}  // namespace edgehub
