#include "edgehub/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace edgehub {

namespace {

constexpr DistrictId kUnassigned = UINT32_MAX;

// Connected components by BFS; returns component id per vertex and sizes.
std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>> components(const Graph& g) {
  std::vector<std::uint32_t> comp(g.vertex_count(), UINT32_MAX);
  std::vector<std::size_t> sizes;
  std::vector<VertexId> queue;
  for (VertexId start = 0; start < g.vertex_count(); ++start) {
    if (comp[start] != UINT32_MAX) continue;
    auto id = static_cast<std::uint32_t>(sizes.size());
    queue.assign(1, start);
    comp[start] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Arc& a : g.neighbors(queue[head])) {
        if (comp[a.to] == UINT32_MAX) {
          comp[a.to] = id;
          queue.push_back(a.to);
        }
      }
    }
    sizes.push_back(queue.size());
  }
  return {std::move(comp), std::move(sizes)};
}

std::vector<VertexId> farthest_point_seeds(const Graph& g, DistrictId m, std::uint64_t seed) {
  auto [comp, sizes] = components(g);
  auto largest = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<VertexId> in_largest;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (comp[v] == largest) in_largest.push_back(v);

  std::mt19937_64 rng(seed);
  std::vector<VertexId> seeds;
  std::vector<std::uint8_t> is_seed(g.vertex_count(), 0);
  std::vector<std::uint32_t> hops(g.vertex_count(), UINT32_MAX);
  std::vector<VertexId> queue;

  auto add_seed = [&](VertexId s) {
    seeds.push_back(s);
    is_seed[s] = 1;
    hops[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      for (const Arc& a : g.neighbors(v)) {
        if (hops[v] + 1 < hops[a.to]) {
          hops[a.to] = hops[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
  };

  std::size_t in_component = std::min<std::size_t>(m, in_largest.size());
  if (in_component > 0) add_seed(in_largest[rng() % in_largest.size()]);
  while (seeds.size() < in_component) {
    VertexId best = in_largest.front();
    std::uint32_t best_hops = 0;
    bool found = false;
    for (VertexId v : in_largest) {
      if (is_seed[v]) continue;
      if (!found || hops[v] > best_hops) {
        best = v;
        best_hops = hops[v];
        found = true;
      }
    }
    add_seed(best);
  }
  for (VertexId v = 0; seeds.size() < m && v < g.vertex_count(); ++v) {
    if (!is_seed[v]) {
      seeds.push_back(v);
      is_seed[v] = 1;
    }
  }
  return seeds;
}

}  // namespace

Partition Partition::from_assignment(std::vector<DistrictId> district_of) {
  Partition p;
  DistrictId m = 0;
  for (DistrictId d : district_of) m = std::max(m, d + 1);
  std::vector<std::size_t> counts(m, 0);
  for (DistrictId d : district_of) ++counts[d];
  for (DistrictId i = 0; i < m; ++i) {
    if (counts[i] == 0) throw InputError("district " + std::to_string(i) + " is unused (ids must be contiguous from 0)");
  }
  p.offsets_.assign(std::size_t{m} + 1, 0);
  for (DistrictId i = 0; i < m; ++i) p.offsets_[i + 1] = p.offsets_[i] + counts[i];
  p.members_.resize(district_of.size());
  std::vector<std::size_t> cursor(p.offsets_.begin(), p.offsets_.end() - 1);
  for (VertexId v = 0; v < district_of.size(); ++v) p.members_[cursor[district_of[v]]++] = v;
  p.district_of_ = std::move(district_of);
  return p;
}

DistrictId default_district_count(VertexId vertex_count) {
  auto m = static_cast<DistrictId>(std::ceil(std::sqrt(static_cast<double>(vertex_count)) / 4.0));
  return std::clamp<DistrictId>(m, 1, std::max<VertexId>(vertex_count, 1));
}

Partition partition_region_growing(const Graph& graph, DistrictId m, std::uint64_t seed) {
  const VertexId n = graph.vertex_count();
  if (m == 0 || m > n) {
    throw InputError("district count " + std::to_string(m) + " must lie in [1, " + std::to_string(n) + "]");
  }

  std::vector<DistrictId> owner(n, kUnassigned);
  std::vector<std::size_t> size(m, 0);
  std::vector<std::deque<VertexId>> frontier(m);
  std::set<std::pair<std::size_t, DistrictId>> growing;

  auto claim = [&](VertexId v, DistrictId d) {
    owner[v] = d;
    ++size[d];
    for (const Arc& a : graph.neighbors(v))
      if (owner[a.to] == kUnassigned) frontier[d].push_back(a.to);
  };

  std::vector<VertexId> seeds = farthest_point_seeds(graph, m, seed);
  for (DistrictId d = 0; d < m; ++d) {
    claim(seeds[d], d);
    growing.insert({size[d], d});
  }

  while (!growing.empty()) {
    auto [_, d] = *growing.begin();
    growing.erase(growing.begin());
    auto& f = frontier[d];
    while (!f.empty() && owner[f.front()] != kUnassigned) f.pop_front();
    if (f.empty()) continue;  // enclosed: stops growing
    VertexId v = f.front();
    f.pop_front();
    claim(v, d);
    growing.insert({size[d], d});
  }

  // Vertices in seedless components: each component goes whole to the
  // currently smallest district.
  std::vector<VertexId> queue;
  for (VertexId start = 0; start < n; ++start) {
    if (owner[start] != kUnassigned) continue;
    auto d = static_cast<DistrictId>(std::min_element(size.begin(), size.end()) - size.begin());
    queue.assign(1, start);
    owner[start] = d;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Arc& a : graph.neighbors(queue[head])) {
        if (owner[a.to] == kUnassigned) {
          owner[a.to] = d;
          queue.push_back(a.to);
        }
      }
    }
    size[d] += queue.size();
  }
  return Partition::from_assignment(std::move(owner));
}

Partition load_partition(std::istream& in, const Graph& graph) { return load_partition(in, graph.vertex_count()); }

Partition load_partition(std::istream& in, VertexId vertex_count) {
  std::vector<DistrictId> assignment;
  assignment.reserve(vertex_count);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s(line);
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    DistrictId d = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(line_no, "expected a district id, got '" + line + "'");
    }
    assignment.push_back(d);
  }
  if (assignment.size() != vertex_count) {
    throw InputError("partition has " + std::to_string(assignment.size()) + " lines, graph has " +
                     std::to_string(vertex_count) + " vertices");
  }
  return Partition::from_assignment(std::move(assignment));
}

Partition load_partition(std::string_view text, const Graph& graph) {
  std::istringstream in{std::string(text)};
  return load_partition(in, graph);
}

void save_partition(std::ostream& out, const Partition& partition) {
  for (DistrictId d : partition.assignment()) out << d << '\n';
}

BorderSet::BorderSet(std::vector<std::vector<VertexId>> per_district, VertexId vertex_count)
    : is_border_(vertex_count, 0) {
  offsets_.assign(per_district.size() + 1, 0);
  for (std::size_t i = 0; i < per_district.size(); ++i) {
    std::sort(per_district[i].begin(), per_district[i].end());
    offsets_[i + 1] = offsets_[i] + per_district[i].size();
    for (VertexId b : per_district[i]) {
      all_.push_back(b);
      is_border_[b] = 1;
    }
  }
}

BorderSet compute_borders(const Graph& graph, const Partition& partition) {
  if (partition.vertex_count() != graph.vertex_count()) throw InputError("partition does not match graph size");
  std::vector<std::vector<VertexId>> per(partition.district_count());
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    DistrictId d = partition.district_of(v);
    for (const Arc& a : graph.neighbors(v)) {
      if (partition.district_of(a.to) != d) {
        per[d].push_back(v);
        break;
      }
    }
  }
  return BorderSet(std::move(per), graph.vertex_count());
}

VertexId DistrictSubgraph::to_local(VertexId global) const {
  auto it = std::lower_bound(to_global.begin(), to_global.end(), global);
  if (it == to_global.end() || *it != global) return kNotInDistrict;
  return static_cast<VertexId>(it - to_global.begin());
}

DistrictSubgraph extract_district_subgraph(const Graph& graph, const Partition& partition, DistrictId i) {
  if (i >= partition.district_count()) {
    throw InputError("district " + std::to_string(i) + " out of range [0, " + std::to_string(partition.district_count()) + ")");
  }
  DistrictSubgraph sub;
  sub.district = i;
  auto members = partition.vertices(i);
  sub.to_global.assign(members.begin(), members.end());
  std::vector<Edge> local_edges;
  for (VertexId lu = 0; lu < sub.to_global.size(); ++lu) {
    VertexId u = sub.to_global[lu];
    for (const Arc& a : graph.neighbors(u)) {
      if (a.to <= u || partition.district_of(a.to) != i) continue;
      local_edges.push_back({lu, sub.to_local(a.to), a.weight});
    }
  }
  sub.local = Graph::from_edges(static_cast<VertexId>(sub.to_global.size()), local_edges);
  return sub;
}

}  // namespace edgehub
