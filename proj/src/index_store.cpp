#include "edgehub/index_store.hpp"

#include <chrono>
#include <fstream>
#include <string>

namespace edgehub {

namespace {

constexpr const char* kPartitionFile = "partition.txt";
constexpr const char* kBorderFile = "border_labels.ehlb";

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

// Border flags come from the border label order; the graph is not needed.
BorderSet borders_from_labels(const Partition& partition, const BorderLabels& labels) {
  std::vector<std::vector<VertexId>> per(partition.district_count());
  for (VertexId b : labels.order().sequence()) {
    if (b >= partition.vertex_count()) throw InputError("border id outside the partition");
    per[partition.district_of(b)].push_back(b);
  }
  return BorderSet(std::move(per), partition.vertex_count());
}

}  // namespace

BuiltIndex build_index(const Graph& graph, Partition partition, bool parallel_districts) {
  BuiltIndex out;
  out.borders = compute_borders(graph, partition);
  out.partition = std::move(partition);
  out.parallel_districts = parallel_districts;
  auto start = std::chrono::steady_clock::now();
  out.border_labels = build_border_labels(graph, out.borders);
  out.border_seconds = seconds_since(start);
  start = std::chrono::steady_clock::now();
  out.districts = build_district_indexes(graph, out.partition, out.borders, out.border_labels, parallel_districts);
  out.district_seconds = seconds_since(start);
  return out;
}

std::string_view to_string(QueryClass c) {
  switch (c) {
    case QueryClass::border: return "border";
    case QueryClass::augmented: return "augmented";
    case QueryClass::certified_local: return "certified_local";
  }
  return "?";
}

IndexStore::IndexStore(Partition partition, BorderLabels border_labels, std::vector<DistrictIndex> districts)
    : partition_(std::move(partition)),
      border_labels_(std::move(border_labels)),
      borders_(borders_from_labels(partition_, border_labels_)),
      districts_(partition_.district_count()) {
  if (border_labels_.labels().vertex_count() != partition_.vertex_count()) {
    throw InputError("border labels and partition disagree on the vertex count");
  }
  if (!districts.empty() && districts.size() != partition_.district_count()) {
    throw InputError("district index count does not match the partition");
  }
  for (std::size_t i = 0; i < districts.size(); ++i) districts_[i] = std::move(districts[i]);
}

IndexStore IndexStore::open(const std::filesystem::path& dir) {
  std::ifstream labels_in = open_in(dir / kBorderFile);
  BorderLabels labels = read_border_labels(labels_in);
  std::ifstream part_in = open_in(dir / kPartitionFile);
  Partition partition = load_partition(part_in, labels.labels().vertex_count());
  IndexStore store(std::move(partition), std::move(labels), {});
  store.dir_ = dir;
  return store;
}

const DistrictIndex& IndexStore::district(DistrictId i) {
  if (i >= districts_.size()) throw InputError("district " + std::to_string(i) + " out of range");
  if (!districts_[i]) {
    if (dir_.empty()) throw InputError("district " + std::to_string(i) + " not available");
    std::ifstream in = open_in(district_file(dir_, i));
    DistrictIndex d = read_district_index(in);
    if (d.district() != i) throw InputError(district_file(dir_, i).string() + " holds another district");
    districts_[i] = std::move(d);
  }
  return *districts_[i];
}

void IndexStore::load_all() {
  for (DistrictId i = 0; i < districts_.size(); ++i) district(i);
}

DispatchAnswer IndexStore::query(VertexId s, VertexId t) {
  if (s >= vertex_count() || t >= vertex_count()) throw InputError("vertex id out of range");
  if (border_query_eligible(s, t, partition_, borders_)) {
    return {border_query(s, t, border_labels_, partition_, borders_), QueryClass::border};
  }
  return {augmented_query(s, t, district(partition_.district_of(s))), QueryClass::augmented};
}

CertifiedAnswer IndexStore::local_query(VertexId s, VertexId t) {
  if (s >= vertex_count() || t >= vertex_count()) throw InputError("vertex id out of range");
  return certified_local_query(s, t, district(partition_.district_of(s)));
}

std::filesystem::path district_file(const std::filesystem::path& dir, DistrictId i) {
  return dir / ("district_" + std::to_string(i) + ".ehdi");
}

std::vector<std::uintmax_t> save_index(const std::filesystem::path& dir, const BuiltIndex& index) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out = open_out(dir / kPartitionFile);
    save_partition(out, index.partition);
  }
  {
    std::ofstream out = open_out(dir / kBorderFile);
    write_border_labels(out, index.border_labels);
  }
  std::vector<std::uintmax_t> sizes{std::filesystem::file_size(dir / kBorderFile)};
  for (const DistrictIndex& d : index.districts) {
    std::filesystem::path p = district_file(dir, d.district());
    {
      std::ofstream out = open_out(p);
      write_district_index(out, d);
    }
    sizes.push_back(std::filesystem::file_size(p));
  }
  return sizes;
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize k = 0; k < in.gcount(); ++k) {
      h ^= static_cast<unsigned char>(buf[k]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace edgehub
