#pragma once

#include <algorithm>
#include <iosfwd>

#include "edgehub/labels.hpp"
#include "edgehub/partition.hpp"

namespace edgehub {

/// Labels over every vertex of the graph whose hubs are exclusively border
/// vertices, together with the push order over B that produced them.
class BorderLabels {
 public:
  BorderLabels() = default;
  BorderLabels(LabelSet labels, VertexOrder order) : labels_(std::move(labels)), order_(std::move(order)) {}

  const LabelSet& labels() const noexcept { return labels_; }
  const VertexOrder& order() const noexcept { return order_; }
  std::size_t border_count() const noexcept { return order_.size(); }

  friend bool operator==(const BorderLabels& a, const BorderLabels& b) {
    return a.labels_ == b.labels_ && std::ranges::equal(a.order_.sequence(), b.order_.sequence());
  }

 private:
  LabelSet labels_;
  VertexOrder order_;
};

// Degree order over B (empty order when there are no borders).
VertexOrder border_order(const Graph& graph, const BorderSet& borders);

/// Pruned Dijkstra from each border in `order` over the full graph. The
/// order must be a permutation of B.
BorderLabels build_border_labels(const Graph& graph, const BorderSet& borders, const VertexOrder& order);
BorderLabels build_border_labels(const Graph& graph, const BorderSet& borders);

// Every vertex stores every reachable border with its exact distance.
// Test oracle for the pruned build.
BorderLabels unpruned_border_labels(const Graph& graph, const BorderSet& borders);

// Border labels answer exactly when both ends are borders or the ends lie
// in different districts.
bool border_query_eligible(VertexId s, VertexId t, const Partition& partition, const BorderSet& borders);

// lambda(s, t, B) for eligible pairs; RoutingError otherwise (a same-district
// pair with a non-border end belongs to the district index).
Distance border_query(VertexId s, VertexId t, const BorderLabels& labels, const Partition& partition,
                      const BorderSet& borders);

void write_border_labels(std::ostream& out, const BorderLabels& labels);
BorderLabels read_border_labels(std::istream& in);

}  // namespace edgehub
