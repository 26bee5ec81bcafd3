#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "edgehub/border_labels.hpp"
#include "edgehub/labels.hpp"
#include "edgehub/partition.hpp"

namespace edgehub {

/// Auxiliary edge between two borders of one district, weighted with their
/// exact global distance. Endpoints are global ids, a < b.
struct ShortcutEdge {
  VertexId a;
  VertexId b;
  Distance weight;

  friend bool operator==(const ShortcutEdge&, const ShortcutEdge&) = default;
};

// One shortcut per unordered pair of district-i borders with finite border
// label distance; unreachable pairs produce none.
std::vector<ShortcutEdge> build_shortcuts(const BorderLabels& labels, const BorderSet& borders, DistrictId i);

struct CertifiedAnswer {
  Distance value = kInfinity;
  bool certified = false;
};

/// Exact per-district indexes.
///
/// `local_labels` is a 2-hop cover of the district subgraph alone and answers
/// d_{D_i}. `augmented_labels` covers the subgraph plus border shortcuts and
/// answers d_G for every in-district pair. Both label sets use local ids
/// (ascending global id); the public queries take global ids.
class DistrictIndex {
 public:
  DistrictIndex() = default;
  DistrictIndex(DistrictId district, std::vector<VertexId> to_global, std::vector<VertexId> local_borders,
                std::vector<ShortcutEdge> shortcuts, LabelSet local_labels, LabelSet augmented_labels);

  DistrictId district() const noexcept { return district_; }
  VertexId vertex_count() const noexcept { return static_cast<VertexId>(to_global_.size()); }
  std::span<const VertexId> to_global() const noexcept { return to_global_; }
  VertexId to_local(VertexId global) const;  // DistrictSubgraph::kNotInDistrict when absent
  bool contains(VertexId global) const { return to_local(global) != DistrictSubgraph::kNotInDistrict; }
  std::span<const VertexId> local_borders() const noexcept { return local_borders_; }
  std::span<const ShortcutEdge> shortcuts() const noexcept { return shortcuts_; }
  const LabelSet& local_labels() const noexcept { return local_labels_; }
  const LabelSet& augmented_labels() const noexcept { return augmented_labels_; }

  friend bool operator==(const DistrictIndex&, const DistrictIndex&) = default;

 private:
  DistrictId district_ = 0;
  std::vector<VertexId> to_global_;
  std::vector<VertexId> local_borders_;
  std::vector<ShortcutEdge> shortcuts_;
  LabelSet local_labels_;
  LabelSet augmented_labels_;
};

// The subgraph plus shortcut edges; parallel edges keep the minimum weight.
Graph augmented_subgraph(const DistrictSubgraph& sub, std::span<const ShortcutEdge> shortcuts);

/// Builds L_i on the raw subgraph and L+_i on the shortcut-augmented one,
/// each with its own degree order.
DistrictIndex build_district_index(const DistrictSubgraph& sub, std::span<const VertexId> district_borders,
                                   std::span<const ShortcutEdge> shortcuts);
// Same, with explicit local-id orders for L_i and L+_i.
DistrictIndex build_district_index(const DistrictSubgraph& sub, std::span<const VertexId> district_borders,
                                   std::span<const ShortcutEdge> shortcuts, const VertexOrder& local_order,
                                   const VertexOrder& augmented_order);

// All districts; `parallel` builds them on concurrent workers.
std::vector<DistrictIndex> build_district_indexes(const Graph& graph, const Partition& partition,
                                                  const BorderSet& borders, const BorderLabels& labels,
                                                  bool parallel = false);

// lambda over L_i and L+_i for global ids; InputError when either id lies
// outside the district.
Distance local_query(VertexId s, VertexId t, const DistrictIndex& index);
Distance augmented_query(VertexId s, VertexId t, const DistrictIndex& index);

/// min over ordered border pairs (b_i, b_j) of lambda(s, b_i, L_i) +
/// lambda(b_j, t, L_i); kInfinity when the district has no border. No walk
/// from s to t that leaves the district is shorter.
Distance local_bound(VertexId s, VertexId t, const DistrictIndex& index);

// lambda(s, t, L_i), certified when it does not exceed the local bound.
// A certified value equals the global distance.
CertifiedAnswer certified_local_query(VertexId s, VertexId t, const DistrictIndex& index);

/// District index file, version 1 (little-endian):
///   magic "EHDI" | version u32 | district u32 | local vertex count u32 |
///   border count u32 | local->global map | local border ids |
///   shortcut count u32 | (a u32, b u32, weight u32) per shortcut |
///   L_i label file | L+_i label file
void write_district_index(std::ostream& out, const DistrictIndex& index);
DistrictIndex read_district_index(std::istream& in);

}  // namespace edgehub
