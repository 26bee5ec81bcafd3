#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "edgehub/border_labels.hpp"
#include "edgehub/district_index.hpp"

namespace edgehub {

// Everything a query server needs, built in two timed stages.
struct BuiltIndex {
  Partition partition;
  BorderSet borders;
  BorderLabels border_labels;
  std::vector<DistrictIndex> districts;
  double border_seconds = 0.0;     // border labeling
  double district_seconds = 0.0;   // shortcuts plus every L_i and L+_i
  bool parallel_districts = false;  // district_seconds is wall time across workers
};

BuiltIndex build_index(const Graph& graph, Partition partition, bool parallel_districts = false);

enum class QueryClass : std::uint8_t { border, augmented, certified_local };
std::string_view to_string(QueryClass c);

struct DispatchAnswer {
  Distance value = kInfinity;
  QueryClass via = QueryClass::border;
};

/// On-disk index directory:
///   partition.txt, border_labels.ehlb, district_<i>.ehdi
/// District files load on first use.
class IndexStore {
 public:
  IndexStore(Partition partition, BorderLabels border_labels, std::vector<DistrictIndex> districts);
  static IndexStore open(const std::filesystem::path& dir);  // InputError on missing or corrupt files

  const Partition& partition() const noexcept { return partition_; }
  const BorderSet& borders() const noexcept { return borders_; }
  const BorderLabels& border_labels() const noexcept { return border_labels_; }
  VertexId vertex_count() const noexcept { return partition_.vertex_count(); }

  const DistrictIndex& district(DistrictId i);
  void load_all();

  // Both borders or different districts: border labels. Otherwise L+_i.
  DispatchAnswer query(VertexId s, VertexId t);
  // Same-district pairs only; L_i with its local-bound certificate.
  CertifiedAnswer local_query(VertexId s, VertexId t);

 private:
  std::filesystem::path dir_;
  Partition partition_;
  BorderLabels border_labels_;
  BorderSet borders_;
  std::vector<std::optional<DistrictIndex>> districts_;
};

std::filesystem::path district_file(const std::filesystem::path& dir, DistrictId i);

// Writes every artifact; returns their on-disk sizes, border labels first,
// then one entry per district.
std::vector<std::uintmax_t> save_index(const std::filesystem::path& dir, const BuiltIndex& index);

// FNV-1a 64 over the file bytes.
std::uint64_t file_checksum(const std::filesystem::path& path);

}  // namespace edgehub
