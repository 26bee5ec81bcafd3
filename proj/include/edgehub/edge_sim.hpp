#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgehub/graph.hpp"
#include "edgehub/partition.hpp"

namespace edgehub {

/// Virtual time in microseconds. Files carry milliseconds with at most three
/// decimals, so conversions are exact.
using SimTime = std::int64_t;

SimTime parse_ms(std::string_view text);  // throws InputError
std::string format_ms(SimTime t);

// Rebuild duration model: fixed_us + per_vertex_us * vertices.
struct RebuildCost {
  SimTime fixed_us = 0;
  SimTime per_vertex_us = 0;

  SimTime duration(std::size_t vertices) const { return fixed_us + per_vertex_us * static_cast<SimTime>(vertices); }
  friend bool operator==(const RebuildCost&, const RebuildCost&) = default;
};

/// One edge server per district, one computing center. Delays are one-way;
/// edge to edge traffic relays through the center (two edge-center legs).
struct Topology {
  SimTime client_edge_us = 5'000;
  SimTime edge_center_us = 20'000;
  SimTime edge_service_us = 1;
  SimTime center_service_us = 1;
  SimTime epoch_us = 60'000'000;
  RebuildCost center_rebuild{0, 40};  // border labels over the whole graph
  RebuildCost local_rebuild{0, 12};  // L_i over one district
  RebuildCost plus_rebuild{0, 15};  // L+_i over one district plus shortcuts
  bool stale_reads = false;

  SimTime edge_edge_us() const { return 2 * edge_center_us; }
  friend bool operator==(const Topology&, const Topology&) = default;
};

/// key=value lines; '#' starts a comment. Delay and epoch keys are in ms,
/// service and per-vertex rebuild keys in microseconds:
///   client_edge_ms edge_center_ms edge_service_us center_service_us epoch_ms
///   center_rebuild_ms center_rebuild_us_per_vertex local_rebuild_ms
///   local_rebuild_us_per_vertex plus_rebuild_ms plus_rebuild_us_per_vertex
///   stale_reads (on|off)
/// Unset keys keep their defaults.
Topology parse_topology(std::istream& in);
Topology parse_topology(std::string_view text);
void write_topology(std::ostream& out, const Topology& topology);

struct WorkloadEntry {
  enum class Kind : std::uint8_t { query, update };

  Kind kind = Kind::query;
  SimTime time = 0;
  VertexId a = 0;  // s, or edge endpoint u
  VertexId b = 0;  // t, or edge endpoint v
  Weight weight = 0;               // updates only
  std::optional<VertexId> client;  // queries only; defaults to s

  friend bool operator==(const WorkloadEntry&, const WorkloadEntry&) = default;
};
using Workload = std::vector<WorkloadEntry>;

// Lines `Q <t_ms> <s> <t> [client]` and `U <t_ms> <u> <v> <w>`, 0-based ids.
// Blank lines and '#' comments are skipped. Syntax errors throw ParseError.
Workload parse_workload(std::istream& in);
Workload parse_workload(std::string_view text);
void write_workload(std::ostream& out, const Workload& workload);

/// Uniform s != t queries at uniform integer-ms times in [0, horizon]; the
/// client sits at s or at a uniform random vertex with equal odds. Updates
/// hit uniform random edges in time order and scale the then-current weight
/// by a factor in [0.5, 2.0], rounded, at least 1.
Workload generate_workload(const Graph& graph, std::size_t n_queries, std::size_t n_updates, SimTime horizon_us,
                           std::uint64_t seed);

enum class Rule : std::uint8_t { local = 1, via_center_to_edge = 2, center = 3 };

Rule route(VertexId s, VertexId t, const Partition& partition, DistrictId origin);

enum class ServedBy : std::uint8_t { augmented, certified_local, center };
std::string_view to_string(ServedBy s);

struct QueryRecord {
  std::size_t id = 0;
  VertexId s = 0;
  VertexId t = 0;
  VertexId client = 0;
  SimTime arrival = 0;
  SimTime answer = 0;
  Rule rule = Rule::local;
  ServedBy served_by = ServedBy::augmented;
  bool certified = false;  // answered by a certified local lookup
  bool stale = false;      // served by an index from before the current epoch
  Distance value = kInfinity;
  std::size_t snapshot = 0;  // weight version the serving index encodes
  bool correct = false;
};

// One row per epoch boundary that fell inside the workload horizon.
struct EpochSummary {
  std::size_t epoch = 0;
  SimTime start = 0;
  enum class Outcome : std::uint8_t { unchanged, rebuilt, skipped_busy } outcome = Outcome::unchanged;
  std::size_t snapshot = 0;
  std::size_t updates = 0;  // weight changes folded in since the previous rebuild
  SimTime center_ready = 0;
  SimTime edges_ready = 0;  // last L+_i installed
  std::size_t plus_rebuilds = 0;
};

struct SimEvent {
  enum class Kind : std::uint8_t {
    query_arrival,
    forward_to_center,
    forward_to_edge,
    answer,
    update_batch,
    rebuild_start,
    rebuild_complete,
    shortcut_distribution,
  };
  SimTime time = 0;
  Kind kind = Kind::query_arrival;
  std::int64_t query = -1;  // -1 when not about a query
  std::int64_t node = -1;   // district of an edge server, -1 for the center
  bool dropped = false;     // an answer that lost the race to an earlier one
};
std::string_view to_string(SimEvent::Kind k);

struct SimulationResult {
  std::vector<QueryRecord> queries;
  std::vector<EpochSummary> epochs;
  std::uint64_t seed = 0;
  std::size_t snapshots = 1;
  std::size_t incorrect() const;
};

/// Runs the center/edge/client protocol in virtual time. Indexes are rebuilt
/// inside the event loop and become visible only at their completion event.
/// Every answer is checked against Dijkstra on the weight snapshot its index
/// encodes. InputError for unsorted times, bad ids or unknown edges. The
/// simulator draws nothing at random; `seed` is recorded only.
SimulationResult run_simulation(const Graph& graph, const Partition& partition, const Topology& topology,
                                const Workload& workload, std::uint64_t seed, std::vector<SimEvent>* log = nullptr);

// query_id,arrival_ms,answer_ms,rule,certified,value,correct,served_by,snapshot,stale
void write_trace_csv(std::ostream& out, const SimulationResult& result);
void write_epoch_summary(std::ostream& out, const SimulationResult& result);

}  // namespace edgehub
