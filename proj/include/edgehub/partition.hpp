#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "edgehub/graph.hpp"

namespace edgehub {

/// Mutually exclusive, exhaustive assignment of vertices to districts
/// [0, m). Every district is non-empty; district vertex lists are sorted.
class Partition {
 public:
  Partition() = default;

  // Validates that ids are contiguous from 0 (no unused district).
  static Partition from_assignment(std::vector<DistrictId> district_of);

  DistrictId district_of(VertexId v) const { return district_of_[v]; }
  DistrictId district_count() const noexcept { return static_cast<DistrictId>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  VertexId vertex_count() const noexcept { return static_cast<VertexId>(district_of_.size()); }
  std::span<const VertexId> vertices(DistrictId i) const {
    return {members_.data() + offsets_[i], members_.data() + offsets_[i + 1]};
  }
  const std::vector<DistrictId>& assignment() const noexcept { return district_of_; }

  friend bool operator==(const Partition& a, const Partition& b) { return a.district_of_ == b.district_of_; }

 private:
  std::vector<DistrictId> district_of_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> members_;
};

// Plumbing default for the district count: ceil(sqrt(n) / 4), at least 1.
DistrictId default_district_count(VertexId vertex_count);

/// Seeded multi-source BFS region growing.
///
/// Seeds are spread by farthest-point selection (hop distance) inside the
/// largest connected component; the smallest district with a non-empty
/// frontier always grows next, so districts stay contiguous. Components
/// without a seed are assigned whole to the smallest district.
Partition partition_region_growing(const Graph& graph, DistrictId m, std::uint64_t seed);

// One decimal district id per line; line i assigns vertex i.
Partition load_partition(std::istream& in, const Graph& graph);
Partition load_partition(std::istream& in, VertexId vertex_count);
Partition load_partition(std::string_view text, const Graph& graph);
void save_partition(std::ostream& out, const Partition& partition);

/// Border vertices per district: b is a border of its district iff some
/// neighbor lies in another district.
class BorderSet {
 public:
  BorderSet() = default;
  BorderSet(std::vector<std::vector<VertexId>> per_district, VertexId vertex_count);

  std::span<const VertexId> of(DistrictId i) const {
    return {all_.data() + offsets_[i], all_.data() + offsets_[i + 1]};
  }
  // Flattened B: district 0's borders, then district 1's, ...
  std::span<const VertexId> all() const noexcept { return all_; }
  std::size_t size() const noexcept { return all_.size(); }
  DistrictId district_count() const noexcept { return static_cast<DistrictId>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  bool is_border(VertexId v) const { return v < is_border_.size() && is_border_[v] != 0; }

 private:
  std::vector<VertexId> all_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint8_t> is_border_;
};

BorderSet compute_borders(const Graph& graph, const Partition& partition);

/// The district's induced subgraph over intra-district edges only. Local ids
/// follow ascending global id.
struct DistrictSubgraph {
  DistrictId district = 0;
  Graph local;
  std::vector<VertexId> to_global;

  // Returns local id or nullopt-equivalent kNotInDistrict.
  static constexpr VertexId kNotInDistrict = UINT32_MAX;
  VertexId to_local(VertexId global) const;
};

DistrictSubgraph extract_district_subgraph(const Graph& graph, const Partition& partition, DistrictId i);

}  // namespace edgehub
