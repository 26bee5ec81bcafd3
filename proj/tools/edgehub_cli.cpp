// edgehub: build, query, bench, simulate and verify border-labeling indexes.
//
// Exit status: 0 ok, 1 bad input, 2 correctness violation or internal fault.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "edgehub/bench.hpp"
#include "edgehub/dimacs.hpp"
#include "edgehub/edge_sim.hpp"
#include "edgehub/index_store.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace edgehub;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;

// Tags an error with the pipeline stage that raised it.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw InputError(std::string(name) + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(std::string(name) + ": " + e.what());
  } catch (const RangeError& e) {
    throw InputError(std::string(name) + ": " + e.what());
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::ifstream open_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

struct PartitionArgs {
  std::optional<DistrictId> districts;
  std::string partition_file;
  std::uint64_t seed = 1;

  void attach(CLI::App* cmd) {
    auto* m = cmd->add_option("--districts", districts, "number of districts (default ceil(sqrt(n)/4))")
                  ->check(CLI::PositiveNumber);
    auto* p = cmd->add_option("--partition", partition_file, "district id per line, line i for vertex i")
                  ->check(CLI::ExistingFile);
    m->excludes(p);
    cmd->add_option("--seed", seed, "seed for partitioning and query selection");
  }

  Partition make(const Graph& g) const {
    if (!partition_file.empty()) {
      std::ifstream in = open_text(partition_file);
      return load_partition(in, g);
    }
    return partition_region_growing(g, districts.value_or(default_district_count(g.vertex_count())), seed);
  }

  json describe(const Partition& p) const {
    json j;
    if (partition_file.empty()) {
      j["source"] = "region_growing";
      j["seed"] = seed;
    } else {
      j["source"] = "file";
      j["path"] = partition_file;
    }
    j["districts"] = p.district_count();
    return j;
  }
};

Graph load_graph(const std::string& path) {
  return stage("graph", [&] { return load_dimacs_file(path); });
}

int cmd_build(const std::string& graph_path, const fs::path& out_dir, const PartitionArgs& pa, bool parallel) {
  Graph g = load_graph(graph_path);
  Partition partition = stage("partition", [&] { return pa.make(g); });
  BuiltIndex built = stage("index", [&] { return build_index(g, std::move(partition), parallel); });
  std::vector<std::uintmax_t> file_sizes = stage("write", [&] { return save_index(out_dir, built); });

  json m;
  m["graph"] = {{"path", graph_path},
                {"checksum_fnv1a64", hex64(file_checksum(graph_path))},
                {"vertices", g.vertex_count()},
                {"edges", g.edge_count()}};
  m["partition"] = pa.describe(built.partition);
  m["borders"] = built.borders.size();
  m["timings_seconds"] = {{"BL", built.border_seconds},
                          {"Districts", built.district_seconds},
                          {"districts_parallel", parallel},
                          {"districts_timing", parallel ? "wall clock across concurrent workers"
                                                        : "sequential sum of shortcut and local index builds"}};
  LabelStats bs = label_stats(built.border_labels.labels());
  json sizes;
  sizes["border_labels"] = {{"file", "border_labels.ehlb"},
                            {"entries", bs.total_entries},
                            {"max_per_vertex", bs.max_per_vertex},
                            {"mean_per_vertex", bs.mean_per_vertex},
                            {"label_bytes", bs.bytes},
                            {"file_bytes", file_sizes[0]}};
  json districts = json::array();
  std::uintmax_t label_total = 0, file_total = 0;
  for (const DistrictIndex& d : built.districts) {
    LabelStats ls = label_stats(d.local_labels());
    LabelStats as = label_stats(d.augmented_labels());
    std::uintmax_t fb = file_sizes[d.district() + 1];
    districts.push_back({{"district", d.district()},
                         {"file", district_file("", d.district()).string()},
                         {"vertices", d.vertex_count()},
                         {"borders", d.local_borders().size()},
                         {"shortcuts", d.shortcuts().size()},
                         {"local_entries", ls.total_entries},
                         {"augmented_entries", as.total_entries},
                         {"label_bytes", ls.bytes + as.bytes},
                         {"file_bytes", fb}});
    label_total += ls.bytes + as.bytes;
    file_total += fb;
  }
  sizes["districts"] = districts;
  sizes["district_label_bytes_total"] = label_total;
  sizes["district_file_bytes_total"] = file_total;
  m["sizes"] = sizes;

  std::ofstream out(out_dir / "manifest.json");
  if (!out) throw InputError("write: cannot create manifest.json");
  out << m.dump(2) << '\n';
  std::cout << "built " << built.partition.district_count() << " districts, " << built.borders.size()
            << " borders; BL " << built.border_seconds << " s, Districts " << built.district_seconds << " s -> "
            << out_dir.string() << '\n';
  return kOk;
}

int cmd_query(const fs::path& dir, VertexId s, VertexId t) {
  IndexStore store = stage("index", [&] { return IndexStore::open(dir); });
  DispatchAnswer a = stage("query", [&] { return store.query(s, t); });
  std::cout << distance_to_string(a.value) << ' ' << to_string(a.via) << '\n';
  return kOk;
}

int cmd_bench(const fs::path& dir, const std::string& graph_path, std::size_t n, std::uint64_t seed,
              double fraction, const std::string& csv) {
  IndexStore store = stage("index", [&] { return IndexStore::open(dir); });
  Graph g = load_graph(graph_path);
  BenchReport r = stage("bench", [&] { return run_bench(store, g, n, seed, fraction); });
  print_bench_table(std::cout, r);
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw InputError("cannot write " + csv);
    write_bench_csv(out, r);
  }
  if (r.correct != r.verified) {
    std::cerr << "correctness violation: " << r.verified - r.correct << " of " << r.verified
              << " verified queries differ from Dijkstra\n";
    return kViolation;
  }
  return kOk;
}

int cmd_simulate(const std::string& graph_path, const std::string& topo_path, const std::string& workload_path,
                 const std::string& out_csv, const PartitionArgs& pa, bool stale, const std::string& epochs_csv) {
  Graph g = load_graph(graph_path);
  Topology topo = stage("topology", [&] {
    std::ifstream in = open_text(topo_path);
    return parse_topology(in);
  });
  if (stale) topo.stale_reads = true;
  Workload w = stage("workload", [&] {
    std::ifstream in = open_text(workload_path);
    return parse_workload(in);
  });
  Partition p = stage("partition", [&] { return pa.make(g); });
  SimulationResult r = stage("simulate", [&] { return run_simulation(g, p, topo, w, pa.seed); });

  std::ofstream out(out_csv);
  if (!out) throw InputError("cannot write " + out_csv);
  write_trace_csv(out, r);
  if (!epochs_csv.empty()) {
    std::ofstream ep(epochs_csv);
    if (!ep) throw InputError("cannot write " + epochs_csv);
    write_epoch_summary(ep, r);
  }

  std::map<int, std::size_t> rules;
  std::map<std::string_view, std::size_t> served;
  std::size_t stale_count = 0, certified = 0;
  for (const QueryRecord& q : r.queries) {
    ++rules[static_cast<int>(q.rule)];
    ++served[to_string(q.served_by)];
    stale_count += q.stale;
    certified += q.certified;
  }
  std::cout << "queries " << r.queries.size() << "  correct " << r.queries.size() - r.incorrect() << "  snapshots "
            << r.snapshots << '\n';
  std::cout << "rule1 " << rules[1] << "  rule2 " << rules[2] << "  rule3 " << rules[3] << '\n';
  std::cout << "served augmented " << served["augmented"] << "  certified_local " << served["certified_local"]
            << "  center " << served["center"] << "  stale " << stale_count << '\n';
  write_epoch_summary(std::cout, r);
  if (r.incorrect() != 0) {
    std::cerr << "correctness violation: " << r.incorrect() << " answers differ from their snapshot oracle\n";
    return kViolation;
  }
  return kOk;
}

int cmd_verify(const std::string& graph_path, const PartitionArgs& pa, bool parallel, double fraction) {
  Graph g = load_graph(graph_path);
  Partition p = stage("partition", [&] { return pa.make(g); });
  BuiltIndex built = stage("index", [&] { return build_index(g, std::move(p), parallel); });
  IndexStore store(built.partition, built.border_labels, built.districts);
  VerifyReport r = stage("verify", [&] { return run_verify(store, g, fraction, pa.seed); });
  std::cout << "sources " << r.sources << "  pairs " << r.pairs << "  mismatches " << r.mismatches << "  border "
            << r.border_pairs << "  augmented " << r.augmented_pairs << "  certified-local " << r.certified_pairs
            << "  certified mismatches " << r.certified_mismatches << '\n';
  if (r.mismatches || r.certified_mismatches) {
    std::cerr << "correctness violation\n";
    return kViolation;
  }
  return kOk;
}

int cmd_workload(const std::string& graph_path, const std::string& out_path, std::size_t queries, std::size_t updates,
                 const std::string& horizon, std::uint64_t seed) {
  Graph g = load_graph(graph_path);
  SimTime h = stage("workload", [&] { return parse_ms(horizon); });
  Workload w = stage("workload", [&] { return generate_workload(g, queries, updates, h, seed); });
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot write " + out_path);
  write_workload(out, w);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Border-labeling shortest-distance indexes for road networks"};
  app.require_subcommand(1);

  std::string graph_path, out_dir, index_dir, topo_path, workload_path, out_csv, csv, epochs_csv, horizon = "60000";
  PartitionArgs pa;
  bool parallel = false, stale = false;
  VertexId s = 0, t = 0;
  std::size_t n = 10'000, queries = 1000, updates = 100;
  std::uint64_t seed = 1;
  double fraction = 0.1;

  auto* build = app.add_subcommand("build", "partition, build and persist all indexes");
  build->add_option("graph", graph_path, "DIMACS .gr or .gr.gz")->required();
  build->add_option("-o,--out", out_dir, "output directory")->required();
  pa.attach(build);
  build->add_flag("--parallel-districts", parallel, "build district indexes on concurrent workers");

  auto* query = app.add_subcommand("query", "exact distance between two 0-based vertex ids");
  query->add_option("index_dir", index_dir)->required();
  query->add_option("s", s)->required();
  query->add_option("t", t)->required();

  auto* bench = app.add_subcommand("bench", "time random queries, verify a sampled subset");
  bench->add_option("index_dir", index_dir)->required();
  bench->add_option("graph", graph_path)->required();
  bench->add_option("-n,--queries", n, "number of queries")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed);
  bench->add_option("--verify-fraction", fraction, "share of queries checked against Dijkstra")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--csv", csv, "per-class latency CSV");

  auto* simulate = app.add_subcommand("simulate", "run the center/edge simulation over a workload");
  simulate->add_option("graph", graph_path)->required();
  simulate->add_option("topology", topo_path)->required();
  simulate->add_option("workload", workload_path)->required();
  simulate->add_option("out_csv", out_csv)->required();
  pa.attach(simulate);
  simulate->add_flag("--stale-reads", stale, "serve from pre-epoch indexes during rebuilds");
  simulate->add_option("--epochs-csv", epochs_csv, "epoch summary CSV");

  auto* verify = app.add_subcommand("verify", "build in memory and compare against Dijkstra");
  verify->add_option("graph", graph_path)->required();
  pa.attach(verify);
  verify->add_flag("--parallel-districts", parallel);
  verify->add_option("--verify-fraction", fraction, "share of sources swept (default 1)")
      ->check(CLI::Range(0.0, 1.0));

  auto* workload = app.add_subcommand("workload", "generate a random query/update workload");
  workload->add_option("graph", graph_path)->required();
  workload->add_option("out", out_csv)->required();
  workload->add_option("--queries", queries);
  workload->add_option("--updates", updates);
  workload->add_option("--horizon-ms", horizon);
  workload->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build) return cmd_build(graph_path, out_dir, pa, parallel);
    if (*query) return cmd_query(index_dir, s, t);
    if (*bench) return cmd_bench(index_dir, graph_path, n, seed, fraction, csv);
    if (*simulate) return cmd_simulate(graph_path, topo_path, workload_path, out_csv, pa, stale, epochs_csv);
    if (*verify) return cmd_verify(graph_path, pa, parallel, verify->count("--verify-fraction") ? fraction : 1.0);
    if (*workload) return cmd_workload(graph_path, out_csv, queries, updates, horizon, seed);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kViolation;
  }
  return kOk;
}
