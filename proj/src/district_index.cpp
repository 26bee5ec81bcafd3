#include "edgehub/district_index.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "edgehub/label_io.hpp"

namespace edgehub {

namespace {

constexpr std::array<char, 4> kDistrictMagic{'E', 'H', 'D', 'I'};
constexpr std::uint32_t kDistrictFormatVersion = 1;

VertexId require_local(const DistrictIndex& index, VertexId global) {
  VertexId local = index.to_local(global);
  if (local == DistrictSubgraph::kNotInDistrict) {
    throw InputError("vertex " + std::to_string(global) + " is not in district " + std::to_string(index.district()));
  }
  return local;
}

}  // namespace

std::vector<ShortcutEdge> build_shortcuts(const BorderLabels& labels, const BorderSet& borders, DistrictId i) {
  auto bs = borders.of(i);
  std::vector<ShortcutEdge> out;
  for (std::size_t x = 0; x < bs.size(); ++x) {
    for (std::size_t y = x + 1; y < bs.size(); ++y) {
      Distance w = lambda_query(bs[x], bs[y], labels.labels());
      if (w != kInfinity) out.push_back({bs[x], bs[y], w});
    }
  }
  return out;
}

DistrictIndex::DistrictIndex(DistrictId district, std::vector<VertexId> to_global, std::vector<VertexId> local_borders,
                             std::vector<ShortcutEdge> shortcuts, LabelSet local_labels, LabelSet augmented_labels)
    : district_(district),
      to_global_(std::move(to_global)),
      local_borders_(std::move(local_borders)),
      shortcuts_(std::move(shortcuts)),
      local_labels_(std::move(local_labels)),
      augmented_labels_(std::move(augmented_labels)) {
  if (!std::is_sorted(to_global_.begin(), to_global_.end())) throw InputError("district id map must be ascending");
  if (local_labels_.vertex_count() != to_global_.size() || augmented_labels_.vertex_count() != to_global_.size()) {
    throw InputError("district label sets do not match the district size");
  }
  for (VertexId b : local_borders_)
    if (b >= to_global_.size()) throw InputError("district border id out of range");
}

VertexId DistrictIndex::to_local(VertexId global) const {
  auto it = std::lower_bound(to_global_.begin(), to_global_.end(), global);
  if (it == to_global_.end() || *it != global) return DistrictSubgraph::kNotInDistrict;
  return static_cast<VertexId>(it - to_global_.begin());
}

Graph augmented_subgraph(const DistrictSubgraph& sub, std::span<const ShortcutEdge> shortcuts) {
  std::vector<Edge> edges = sub.local.edges();
  for (const ShortcutEdge& s : shortcuts) {
    VertexId a = sub.to_local(s.a);
    VertexId b = sub.to_local(s.b);
    if (a == DistrictSubgraph::kNotInDistrict || b == DistrictSubgraph::kNotInDistrict) {
      throw InputError("shortcut (" + std::to_string(s.a) + ", " + std::to_string(s.b) + ") leaves district " +
                       std::to_string(sub.district));
    }
    if (s.weight > UINT32_MAX) throw RangeError("shortcut weight " + std::to_string(s.weight) + " does not fit 32 bits");
    edges.push_back({a, b, static_cast<Weight>(s.weight)});
  }
  return Graph::from_edges(sub.local.vertex_count(), edges);
}

DistrictIndex build_district_index(const DistrictSubgraph& sub, std::span<const VertexId> district_borders,
                                   std::span<const ShortcutEdge> shortcuts, const VertexOrder& local_order,
                                   const VertexOrder& augmented_order) {
  std::vector<VertexId> local_borders;
  for (VertexId b : district_borders) {
    VertexId l = sub.to_local(b);
    if (l == DistrictSubgraph::kNotInDistrict) throw InputError("border " + std::to_string(b) + " is not in the district");
    local_borders.push_back(l);
  }
  Graph augmented = augmented_subgraph(sub, shortcuts);
  LabelSet local = build_pll(sub.local, local_order);
  LabelSet plus = build_pll(augmented, augmented_order);
  return DistrictIndex(sub.district, sub.to_global, std::move(local_borders),
                       std::vector<ShortcutEdge>(shortcuts.begin(), shortcuts.end()), std::move(local), std::move(plus));
}

DistrictIndex build_district_index(const DistrictSubgraph& sub, std::span<const VertexId> district_borders,
                                   std::span<const ShortcutEdge> shortcuts) {
  std::vector<VertexId> all(sub.local.vertex_count());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
  if (all.empty()) throw InputError("district " + std::to_string(sub.district) + " is empty");
  Graph augmented = augmented_subgraph(sub, shortcuts);
  return build_district_index(sub, district_borders, shortcuts, degree_order(sub.local, all), degree_order(augmented, all));
}

std::vector<DistrictIndex> build_district_indexes(const Graph& graph, const Partition& partition,
                                                  const BorderSet& borders, const BorderLabels& labels,
                                                  bool parallel) {
  const DistrictId m = partition.district_count();
  std::vector<DistrictIndex> out(m);
  auto build_one = [&](DistrictId i) {
    DistrictSubgraph sub = extract_district_subgraph(graph, partition, i);
    std::vector<ShortcutEdge> shortcuts = build_shortcuts(labels, borders, i);
    out[i] = build_district_index(sub, borders.of(i), shortcuts);
  };
  if (!parallel || m <= 1) {
    for (DistrictId i = 0; i < m; ++i) build_one(i);
    return out;
  }

  std::atomic<DistrictId> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), m));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (DistrictId i = next++; i < m; i = next++) {
        try {
          build_one(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Distance local_query(VertexId s, VertexId t, const DistrictIndex& index) {
  return join_labels(index.local_labels().of(require_local(index, s)), index.local_labels().of(require_local(index, t)));
}

Distance augmented_query(VertexId s, VertexId t, const DistrictIndex& index) {
  return join_labels(index.augmented_labels().of(require_local(index, s)),
                     index.augmented_labels().of(require_local(index, t)));
}

Distance local_bound(VertexId s, VertexId t, const DistrictIndex& index) {
  const LabelSet& labels = index.local_labels();
  auto ls = labels.of(require_local(index, s));
  auto lt = labels.of(require_local(index, t));
  // Exit and entry borders are chosen independently, so the minimum over
  // ordered pairs splits into two separate minima.
  Distance to_exit = kInfinity;
  Distance from_entry = kInfinity;
  for (VertexId b : index.local_borders()) {
    to_exit = std::min(to_exit, join_labels(ls, labels.of(b)));
    from_entry = std::min(from_entry, join_labels(labels.of(b), lt));
  }
  return add_distance(to_exit, from_entry);
}

CertifiedAnswer certified_local_query(VertexId s, VertexId t, const DistrictIndex& index) {
  CertifiedAnswer answer;
  answer.value = local_query(s, t, index);
  answer.certified = answer.value <= local_bound(s, t, index);
  return answer;
}

void write_district_index(std::ostream& out, const DistrictIndex& index) {
  ByteWriter w(out);
  w.bytes(kDistrictMagic);
  w.u32(kDistrictFormatVersion);
  w.u32(index.district());
  w.u32(index.vertex_count());
  w.u32_checked(index.local_borders().size(), "border count");
  for (VertexId g : index.to_global()) w.u32(g);
  for (VertexId b : index.local_borders()) w.u32(b);
  w.u32_checked(index.shortcuts().size(), "shortcut count");
  for (const ShortcutEdge& s : index.shortcuts()) {
    w.u32(s.a);
    w.u32(s.b);
    w.u32_checked(s.weight, "shortcut weight");
  }
  write_label_set(out, index.local_labels());
  write_label_set(out, index.augmented_labels());
}

DistrictIndex read_district_index(std::istream& in) {
  ByteReader r(in);
  r.expect_magic(kDistrictMagic, "district index");
  std::uint32_t version = r.u32();
  if (version != kDistrictFormatVersion) throw InputError("unsupported district index version " + std::to_string(version));
  DistrictId district = r.u32();
  VertexId n = r.u32();
  std::uint32_t border_count = r.u32();
  if (border_count > n) throw InputError("district border count exceeds its size");
  std::vector<VertexId> to_global(n);
  for (auto& g : to_global) g = r.u32();
  std::vector<VertexId> borders(border_count);
  for (auto& b : borders) b = r.u32();
  std::uint32_t shortcut_count = r.u32();
  std::vector<ShortcutEdge> shortcuts;
  for (std::uint32_t k = 0; k < shortcut_count; ++k) {
    ShortcutEdge s{};
    s.a = r.u32();
    s.b = r.u32();
    s.weight = r.u32();
    shortcuts.push_back(s);
  }
  LabelSet local = read_label_set(in);
  LabelSet plus = read_label_set(in);
  return DistrictIndex(district, std::move(to_global), std::move(borders), std::move(shortcuts), std::move(local),
                       std::move(plus));
}

}  // namespace edgehub
