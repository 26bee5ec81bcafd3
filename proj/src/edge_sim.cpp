#include <functional>
#include <queue>
#include <string>

#include "edgehub/border_labels.hpp"
#include "edgehub/district_index.hpp"
#include "edgehub/edge_sim.hpp"

namespace edgehub {

namespace {

using Kind = SimEvent::Kind;

struct Event {
  SimTime time;
  std::uint64_t seq;
  Kind kind;
  std::int64_t query;
  std::int64_t node;
  std::function<void()> action;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const { return a.time != b.time ? a.time > b.time : a.seq > b.seq; }
};

// An uncertified in-district query parked at an edge server until L+ lands.
struct Waiter {
  std::size_t query;
  SimTime back;  // delay from the serving edge back to the client
};

// Same query, second chance at the center: min(border labels, local value)
// is exact once both describe the same district weights.
struct Fallback {
  std::size_t query;
  DistrictId district;
  Distance local_value;
  std::uint64_t local_weights;
};

struct EdgeServer {
  DistrictIndex local;  // serves L_i; its augmented half is unused
  std::size_t local_snapshot = 0;
  std::uint64_t local_weights = 0;  // intra-district updates reflected in L_i
  bool local_rebuilding = false;
  bool local_dirty = false;
  DistrictIndex pending_local;

  DistrictIndex plus;  // serves L+_i
  std::size_t plus_snapshot = 0;
  std::uint64_t plus_weights = 0;
  bool plus_current = true;  // shortcuts received for this epoch
  DistrictIndex pending_plus;
  std::vector<Waiter> waiting;
};

struct Center {
  BorderLabels labels;
  std::size_t snapshot = 0;
  bool rebuilding = false;
  BorderLabels pending;
  std::vector<std::size_t> waiting_cross;
  std::vector<Fallback> waiting_local;
};

class Simulator {
 public:
  Simulator(const Graph& graph, const Partition& partition, const Topology& topology, std::vector<SimEvent>* log)
      : partition_(partition), topo_(topology), log_(log), borders_(compute_borders(graph, partition)) {
    graphs_.push_back(graph);
    district_updates_.emplace_back(partition.district_count(), 0);
    center_.labels = build_border_labels(graph, borders_);
    std::vector<DistrictIndex> initial = build_district_indexes(graph, partition, borders_, center_.labels);
    edges_.resize(partition.district_count());
    for (DistrictId i = 0; i < edges_.size(); ++i) {
      edges_[i].local = initial[i];
      edges_[i].plus = std::move(initial[i]);
    }
  }

  SimulationResult run(const Workload& workload, std::uint64_t seed) {
    validate(workload);
    SimulationResult result;
    result.seed = seed;
    SimTime horizon = workload.empty() ? 0 : workload.back().time;
    for (const WorkloadEntry& e : workload) {
      if (e.kind == WorkloadEntry::Kind::query) {
        std::size_t id = records_.size();
        QueryRecord r;
        r.id = id;
        r.s = e.a;
        r.t = e.b;
        r.client = e.client.value_or(e.a);
        r.arrival = e.time;
        r.rule = route(r.s, r.t, partition_, partition_.district_of(r.client));
        records_.push_back(r);
        schedule(e.time, Kind::query_arrival, static_cast<std::int64_t>(id), -1, [this, id] { on_arrival(id); });
      } else {
        Edge edge{e.a, e.b, e.weight};
        std::int64_t node = partition_.district_of(e.a) == partition_.district_of(e.b) ? partition_.district_of(e.a) : -1;
        schedule(e.time, Kind::update_batch, -1, node, [this, edge] { on_update(edge); });
      }
    }
    // Workload entries at an epoch instant are folded into that epoch.
    for (SimTime t = topo_.epoch_us; !workload.empty() && t <= horizon; t += topo_.epoch_us) {
      schedule(t, Kind::update_batch, -1, -1, [this] { on_epoch(); });
    }

    while (!queue_.empty()) {
      Event ev = queue_.top();
      queue_.pop();
      now_ = ev.time;
      if (log_) log_->push_back({ev.time, ev.kind, ev.query, ev.node, false});
      ev.action();
    }

    for (const QueryRecord& r : records_) {
      if (!answered_[r.id]) throw std::logic_error("query " + std::to_string(r.id) + " was never answered");
    }
    result.queries = std::move(records_);
    result.epochs = std::move(epochs_);
    result.snapshots = graphs_.size();
    return result;
  }

 private:
  void validate(const Workload& workload) {
    const Graph& g = graphs_.front();
    SimTime prev = 0;
    for (std::size_t k = 0; k < workload.size(); ++k) {
      const WorkloadEntry& e = workload[k];
      std::string where = "workload entry " + std::to_string(k + 1) + ": ";
      if (e.time < prev) throw InputError(where + "timestamps must be non-decreasing");
      prev = e.time;
      if (!g.contains(e.a) || !g.contains(e.b)) throw InputError(where + "vertex id out of range");
      if (e.kind == WorkloadEntry::Kind::query) {
        if (e.client && !g.contains(*e.client)) throw InputError(where + "client vertex out of range");
      } else {
        if (!g.weight_between(e.a, e.b)) {
          throw InputError(where + "no edge " + std::to_string(e.a) + "-" + std::to_string(e.b));
        }
        if (e.weight < 1) throw InputError(where + "weights must be positive");
      }
    }
    answered_.assign(std::count_if(workload.begin(), workload.end(),
                                   [](const WorkloadEntry& e) { return e.kind == WorkloadEntry::Kind::query; }),
                     0);
  }

  void schedule(SimTime t, Kind kind, std::int64_t query, std::int64_t node, std::function<void()> action) {
    queue_.push(Event{t, seq_++, kind, query, node, std::move(action)});
  }

  void note(Kind kind, std::int64_t query, std::int64_t node) {
    if (log_) log_->push_back({now_, kind, query, node, false});
  }

  std::size_t live() const { return graphs_.size() - 1; }

  void deliver(std::size_t q, SimTime at, Distance value, ServedBy by, std::size_t snapshot, bool certified,
               bool stale) {
    schedule(at, Kind::answer, static_cast<std::int64_t>(q), -1, [=, this] {
      if (answered_[q]) {
        if (log_) log_->back().dropped = true;
        return;
      }
      answered_[q] = 1;
      QueryRecord& r = records_[q];
      r.answer = now_;
      r.value = value;
      r.served_by = by;
      r.snapshot = snapshot;
      r.certified = certified;
      r.stale = stale;
      r.correct = value == dijkstra_pair(graphs_[snapshot], r.s, r.t);
    });
  }

  void on_arrival(std::size_t q) {
    const QueryRecord& r = records_[q];
    DistrictId origin = partition_.district_of(r.client);
    SimTime c = topo_.client_edge_us, e = topo_.edge_center_us;
    schedule(now_ + c, Kind::forward_to_edge, static_cast<std::int64_t>(q), origin, [=, this] {
      switch (records_[q].rule) {
        case Rule::local:
          serve_at_edge(q, origin, c);
          break;
        case Rule::via_center_to_edge: {
          DistrictId target = partition_.district_of(records_[q].s);
          schedule(now_ + e, Kind::forward_to_center, static_cast<std::int64_t>(q), -1, [=, this] {
            schedule(now_ + e, Kind::forward_to_edge, static_cast<std::int64_t>(q), target,
                     [=, this] { serve_at_edge(q, target, 2 * e + c); });
          });
          break;
        }
        case Rule::center:
          schedule(now_ + e, Kind::forward_to_center, static_cast<std::int64_t>(q), -1, [=, this] { serve_cross(q); });
          break;
      }
    });
  }

  void serve_at_edge(std::size_t q, DistrictId j, SimTime back) {
    EdgeServer& es = edges_[j];
    const QueryRecord& r = records_[q];
    SimTime done = now_ + topo_.edge_service_us;
    if (es.plus_current || topo_.stale_reads) {
      deliver(q, done + back, augmented_query(r.s, r.t, es.plus), ServedBy::augmented, es.plus_snapshot, false,
              !es.plus_current);
      return;
    }
    CertifiedAnswer local = certified_local_query(r.s, r.t, es.local);
    if (local.certified) {
      deliver(q, done + back, local.value, ServedBy::certified_local, es.local_snapshot, true, false);
      return;
    }
    // Wait for whichever of L+_i and the center answers first.
    es.waiting.push_back({q, back});
    Fallback f{q, j, local.value, es.local_weights};
    schedule(done + topo_.edge_center_us, Kind::forward_to_center, static_cast<std::int64_t>(q), -1, [=, this] {
      if (center_.rebuilding) {
        center_.waiting_local.push_back(f);
      } else {
        center_fallback(f);
      }
    });
  }

  void center_fallback(const Fallback& f) {
    // A district whose weights moved past the center's snapshot cannot be
    // combined with it; L+_i will answer instead.
    if (district_updates_[center_.snapshot][f.district] != f.local_weights) return;
    const QueryRecord& r = records_[f.query];
    Distance value = std::min(lambda_query(r.s, r.t, center_.labels.labels()), f.local_value);
    deliver(f.query, now_ + topo_.center_service_us + topo_.edge_center_us + topo_.client_edge_us, value,
            ServedBy::center, center_.snapshot, false, false);
  }

  void serve_cross(std::size_t q) {
    if (center_.rebuilding && !topo_.stale_reads) {
      center_.waiting_cross.push_back(q);
      return;
    }
    const QueryRecord& r = records_[q];
    Distance value = border_query(r.s, r.t, center_.labels, partition_, borders_);
    deliver(q, now_ + topo_.center_service_us + topo_.edge_center_us + topo_.client_edge_us, value, ServedBy::center,
            center_.snapshot, false, center_.rebuilding);
  }

  void on_update(const Edge& edge) {
    graphs_.push_back(graphs_.back().with_updated_weights(std::span<const Edge>(&edge, 1)));
    district_updates_.push_back(district_updates_.back());
    DistrictId du = partition_.district_of(edge.u);
    if (du != partition_.district_of(edge.v)) return;
    ++district_updates_.back()[du];
    EdgeServer& es = edges_[du];
    if (es.local_rebuilding) {
      es.local_dirty = true;
    } else {
      start_local_rebuild(du);
    }
  }

  void start_local_rebuild(DistrictId i) {
    EdgeServer& es = edges_[i];
    note(Kind::rebuild_start, -1, i);
    es.local_rebuilding = true;
    es.local_dirty = false;
    std::size_t snapshot = live();
    std::uint64_t weights = district_updates_[snapshot][i];
    DistrictSubgraph sub = extract_district_subgraph(graphs_[snapshot], partition_, i);
    es.pending_local = build_district_index(sub, borders_.of(i), {});
    SimTime cost = topo_.local_rebuild.duration(sub.local.vertex_count());
    schedule(now_ + cost, Kind::rebuild_complete, -1, i, [=, this] {
      EdgeServer& s = edges_[i];
      s.local = std::move(s.pending_local);
      s.local_snapshot = snapshot;
      s.local_weights = weights;
      s.local_rebuilding = false;
      if (s.local_dirty) start_local_rebuild(i);
    });
  }

  void on_epoch() {
    EpochSummary row;
    row.epoch = epochs_.size() + 1;
    row.start = now_;
    row.snapshot = center_.snapshot;
    if (cycle_active_) {
      row.outcome = EpochSummary::Outcome::skipped_busy;
      epochs_.push_back(row);
      return;
    }
    if (live() == center_.snapshot) {
      epochs_.push_back(row);
      return;
    }
    row.outcome = EpochSummary::Outcome::rebuilt;
    row.snapshot = live();
    row.updates = live() - center_.snapshot;
    epochs_.push_back(row);
    std::size_t epoch_row = epochs_.size() - 1;

    // Epoch clocks are shared: every L+_i is outdated from this instant.
    cycle_active_ = true;
    center_.rebuilding = true;
    for (EdgeServer& es : edges_) es.plus_current = false;
    std::size_t target = live();
    SimTime e = topo_.edge_center_us;

    // Pull request out, fresh traffic back, then the border label rebuild.
    schedule(now_ + 2 * e, Kind::rebuild_start, -1, -1, [=, this] {
      center_.pending = build_border_labels(graphs_[target], borders_);
      SimTime cost = topo_.center_rebuild.duration(graphs_[target].vertex_count());
      schedule(now_ + cost, Kind::rebuild_complete, -1, -1, [=, this] { on_center_ready(target, epoch_row); });
    });
  }

  void on_center_ready(std::size_t target, std::size_t epoch_row) {
    center_.labels = std::move(center_.pending);
    center_.snapshot = target;
    center_.rebuilding = false;
    epochs_[epoch_row].center_ready = now_;

    std::vector<std::size_t> cross = std::move(center_.waiting_cross);
    std::vector<Fallback> local = std::move(center_.waiting_local);
    center_.waiting_cross.clear();
    center_.waiting_local.clear();
    for (std::size_t q : cross) serve_cross(q);
    for (const Fallback& f : local) center_fallback(f);

    edges_pending_ = edges_.size();
    for (DistrictId i = 0; i < edges_.size(); ++i) {
      std::vector<ShortcutEdge> shortcuts = build_shortcuts(center_.labels, borders_, i);
      schedule(now_ + topo_.edge_center_us, Kind::shortcut_distribution, -1, i,
               [this, i, target, epoch_row, shortcuts = std::move(shortcuts)] {
                 on_shortcuts(i, target, epoch_row, shortcuts);
               });
    }
  }

  void on_shortcuts(DistrictId i, std::size_t target, std::size_t epoch_row, const std::vector<ShortcutEdge>& shortcuts) {
    EdgeServer& es = edges_[i];
    std::uint64_t weights = district_updates_[target][i];
    bool same_edges = std::equal(shortcuts.begin(), shortcuts.end(), es.plus.shortcuts().begin(),
                                 es.plus.shortcuts().end());
    if (weights == es.plus_weights && same_edges) {
      install_plus(i, target, weights, epoch_row, false);
      return;
    }
    note(Kind::rebuild_start, -1, i);
    DistrictSubgraph sub = extract_district_subgraph(graphs_[target], partition_, i);
    es.pending_plus = build_district_index(sub, borders_.of(i), shortcuts);
    SimTime cost = topo_.plus_rebuild.duration(sub.local.vertex_count());
    schedule(now_ + cost, Kind::rebuild_complete, -1, i,
             [=, this] { install_plus(i, target, weights, epoch_row, true); });
  }

  void install_plus(DistrictId i, std::size_t target, std::uint64_t weights, std::size_t epoch_row, bool rebuilt) {
    EdgeServer& es = edges_[i];
    if (rebuilt) {
      es.plus = std::move(es.pending_plus);
      ++epochs_[epoch_row].plus_rebuilds;
    }
    es.plus_snapshot = target;
    es.plus_weights = weights;
    es.plus_current = true;
    std::vector<Waiter> waiting = std::move(es.waiting);
    es.waiting.clear();
    for (const Waiter& w : waiting) {
      const QueryRecord& r = records_[w.query];
      deliver(w.query, now_ + topo_.edge_service_us + w.back, augmented_query(r.s, r.t, es.plus), ServedBy::augmented,
              target, false, false);
    }
    if (--edges_pending_ == 0) {
      cycle_active_ = false;
      epochs_[epoch_row].edges_ready = now_;
    }
  }

  const Partition& partition_;
  const Topology& topo_;
  std::vector<SimEvent>* log_;
  BorderSet borders_;

  std::vector<Graph> graphs_;  // weight snapshots; index = version
  std::vector<std::vector<std::uint64_t>> district_updates_;  // per version, intra-district update counts
  Center center_;
  std::vector<EdgeServer> edges_;
  bool cycle_active_ = false;
  std::size_t edges_pending_ = 0;

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t seq_ = 0;
  SimTime now_ = 0;
  std::vector<QueryRecord> records_;
  std::vector<std::uint8_t> answered_;
  std::vector<EpochSummary> epochs_;
};

}  // namespace

SimulationResult run_simulation(const Graph& graph, const Partition& partition, const Topology& topology,
                                const Workload& workload, std::uint64_t seed, std::vector<SimEvent>* log) {
  if (partition.vertex_count() != graph.vertex_count()) throw InputError("partition does not match graph size");
  if (topology.client_edge_us < 0 || topology.edge_center_us < 0 || topology.edge_service_us < 0 ||
      topology.center_service_us < 0) {
    throw InputError("delays and service times must be non-negative");
  }
  if (topology.epoch_us <= 0) throw InputError("epoch length must be positive");
  Simulator sim(graph, partition, topology, log);
  return sim.run(workload, seed);
}

}  // namespace edgehub
