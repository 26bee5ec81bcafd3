#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "edgehub/edge_sim.hpp"
#include "text_tokens.hpp"

namespace edgehub {

using detail::LineTokens;
using detail::parse_int;

SimTime parse_ms(std::string_view text) {
  std::size_t dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (whole.empty() || !digits(whole) || !digits(frac) || (dot != std::string_view::npos && frac.empty())) {
    throw InputError("expected a non-negative millisecond value, got '" + std::string(text) + "'");
  }
  if (frac.size() > 3) throw InputError("at most three decimals allowed in '" + std::string(text) + "'");
  if (whole.size() > 12) throw InputError("time value too large: '" + std::string(text) + "'");
  SimTime us = 0;
  for (char c : whole) us = us * 10 + (c - '0');
  SimTime f = 0;
  for (std::size_t k = 0; k < 3; ++k) f = f * 10 + (k < frac.size() ? frac[k] - '0' : 0);
  return us * 1000 + f;
}

std::string format_ms(SimTime t) {
  std::string out = t < 0 ? "-" : "";
  SimTime a = t < 0 ? -t : t;
  out += std::to_string(a / 1000);
  if (SimTime frac = a % 1000; frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, 3 - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    out += '.' + f;
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) { return s.substr(0, s.find('#')); }

SimTime ms_field(std::string_view tok, std::size_t line_no, const char* what) {
  if (tok.empty()) throw ParseError(line_no, std::string("missing ") + what);
  try {
    return parse_ms(tok);
  } catch (const InputError& e) {
    throw ParseError(line_no, std::string(what) + ": " + e.what());
  }
}

VertexId id_field(std::string_view tok, std::size_t line_no, const char* what) {
  std::int64_t v = parse_int(tok, line_no, what);
  if (v < 0 || v >= std::int64_t{UINT32_MAX}) throw ParseError(line_no, std::string(what) + " out of range");
  return static_cast<VertexId>(v);
}

}  // namespace

Topology parse_topology(std::istream& in) {
  Topology topo;
  std::map<std::string, std::size_t, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(strip_comment(line));
    if (s.empty()) continue;
    std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    std::string key(trim(s.substr(0, eq)));
    std::string_view value = trim(s.substr(eq + 1));
    if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
    if (auto [it, fresh] = seen.emplace(key, line_no); !fresh) {
      throw ParseError(line_no, "duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")");
    }
    auto ms = [&] { return ms_field(value, line_no, key.c_str()); };
    auto us = [&] {
      std::int64_t v = parse_int(value, line_no, key.c_str());
      if (v < 0) throw ParseError(line_no, key + " must be >= 0");
      return SimTime{v};
    };
    if (key == "client_edge_ms") topo.client_edge_us = ms();
    else if (key == "edge_center_ms") topo.edge_center_us = ms();
    else if (key == "edge_service_us") topo.edge_service_us = us();
    else if (key == "center_service_us") topo.center_service_us = us();
    else if (key == "epoch_ms") topo.epoch_us = ms();
    else if (key == "center_rebuild_ms") topo.center_rebuild.fixed_us = ms();
    else if (key == "center_rebuild_us_per_vertex") topo.center_rebuild.per_vertex_us = us();
    else if (key == "local_rebuild_ms") topo.local_rebuild.fixed_us = ms();
    else if (key == "local_rebuild_us_per_vertex") topo.local_rebuild.per_vertex_us = us();
    else if (key == "plus_rebuild_ms") topo.plus_rebuild.fixed_us = ms();
    else if (key == "plus_rebuild_us_per_vertex") topo.plus_rebuild.per_vertex_us = us();
    else if (key == "stale_reads") {
      if (value == "on") topo.stale_reads = true;
      else if (value == "off") topo.stale_reads = false;
      else throw ParseError(line_no, "stale_reads must be 'on' or 'off'");
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }
  if (topo.epoch_us <= 0) throw InputError("epoch_ms must be positive");
  return topo;
}

Topology parse_topology(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_topology(in);
}

void write_topology(std::ostream& out, const Topology& t) {
  out << "client_edge_ms=" << format_ms(t.client_edge_us) << '\n'
      << "edge_center_ms=" << format_ms(t.edge_center_us) << '\n'
      << "edge_service_us=" << t.edge_service_us << '\n'
      << "center_service_us=" << t.center_service_us << '\n'
      << "epoch_ms=" << format_ms(t.epoch_us) << '\n'
      << "center_rebuild_ms=" << format_ms(t.center_rebuild.fixed_us) << '\n'
      << "center_rebuild_us_per_vertex=" << t.center_rebuild.per_vertex_us << '\n'
      << "local_rebuild_ms=" << format_ms(t.local_rebuild.fixed_us) << '\n'
      << "local_rebuild_us_per_vertex=" << t.local_rebuild.per_vertex_us << '\n'
      << "plus_rebuild_ms=" << format_ms(t.plus_rebuild.fixed_us) << '\n'
      << "plus_rebuild_us_per_vertex=" << t.plus_rebuild.per_vertex_us << '\n'
      << "stale_reads=" << (t.stale_reads ? "on" : "off") << '\n';
}

Workload parse_workload(std::istream& in) {
  Workload out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    LineTokens tokens(strip_comment(line));
    std::string_view kind = tokens.next();
    if (kind.empty()) continue;
    WorkloadEntry e;
    if (kind == "Q") {
      e.kind = WorkloadEntry::Kind::query;
      e.time = ms_field(tokens.next(), line_no, "time");
      e.a = id_field(tokens.next(), line_no, "source");
      e.b = id_field(tokens.next(), line_no, "target");
      if (std::string_view c = tokens.next(); !c.empty()) e.client = id_field(c, line_no, "client vertex");
    } else if (kind == "U") {
      e.kind = WorkloadEntry::Kind::update;
      e.time = ms_field(tokens.next(), line_no, "time");
      e.a = id_field(tokens.next(), line_no, "edge endpoint");
      e.b = id_field(tokens.next(), line_no, "edge endpoint");
      std::int64_t w = parse_int(tokens.next(), line_no, "weight");
      if (w < 1 || w > std::int64_t{UINT32_MAX}) throw ParseError(line_no, "weight must lie in [1, 2^32)");
      e.weight = static_cast<Weight>(w);
    } else {
      throw ParseError(line_no, "unknown record type '" + std::string(kind) + "'");
    }
    if (!tokens.next().empty()) throw ParseError(line_no, "trailing tokens");
    out.push_back(e);
  }
  return out;
}

Workload parse_workload(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_workload(in);
}

void write_workload(std::ostream& out, const Workload& workload) {
  for (const WorkloadEntry& e : workload) {
    if (e.kind == WorkloadEntry::Kind::query) {
      out << "Q " << format_ms(e.time) << ' ' << e.a << ' ' << e.b;
      if (e.client) out << ' ' << *e.client;
    } else {
      out << "U " << format_ms(e.time) << ' ' << e.a << ' ' << e.b << ' ' << e.weight;
    }
    out << '\n';
  }
}

Workload generate_workload(const Graph& graph, std::size_t n_queries, std::size_t n_updates, SimTime horizon_us,
                           std::uint64_t seed) {
  const VertexId n = graph.vertex_count();
  if (n_queries > 0 && n < 2) throw InputError("queries need at least two vertices");
  if (n_updates > 0 && graph.edge_count() == 0) throw InputError("updates need at least one edge");
  if (horizon_us < 0) throw InputError("negative horizon");
  std::mt19937_64 rng(seed);
  const std::uint64_t slots = static_cast<std::uint64_t>(horizon_us / 1000) + 1;

  Workload out;
  out.reserve(n_queries + n_updates);
  for (std::size_t k = 0; k < n_queries; ++k) {
    WorkloadEntry q;
    q.time = static_cast<SimTime>(rng() % slots) * 1000;
    q.a = static_cast<VertexId>(rng() % n);
    q.b = static_cast<VertexId>(rng() % (n - 1));
    if (q.b >= q.a) ++q.b;
    q.client = (rng() & 1) ? q.a : static_cast<VertexId>(rng() % n);
    out.push_back(q);
  }

  std::vector<SimTime> times(n_updates);
  for (SimTime& t : times) t = static_cast<SimTime>(rng() % slots) * 1000;
  std::sort(times.begin(), times.end());
  std::vector<Edge> edges = graph.edges();
  for (SimTime t : times) {
    Edge& e = edges[rng() % edges.size()];
    std::uint64_t factor_milli = 500 + rng() % 1501;
    std::uint64_t w = (std::uint64_t{e.weight} * factor_milli + 500) / 1000;
    e.weight = static_cast<Weight>(std::clamp<std::uint64_t>(w, 1, UINT32_MAX));
    WorkloadEntry u;
    u.kind = WorkloadEntry::Kind::update;
    u.time = t;
    u.a = e.u;
    u.b = e.v;
    u.weight = e.weight;
    out.push_back(u);
  }
  // Updates first on equal times; otherwise generation order.
  std::stable_sort(out.begin(), out.end(), [](const WorkloadEntry& x, const WorkloadEntry& y) {
    if (x.time != y.time) return x.time < y.time;
    return x.kind == WorkloadEntry::Kind::update && y.kind == WorkloadEntry::Kind::query;
  });
  return out;
}

Rule route(VertexId s, VertexId t, const Partition& partition, DistrictId origin) {
  DistrictId ds = partition.district_of(s);
  if (ds != partition.district_of(t)) return Rule::center;
  return ds == origin ? Rule::local : Rule::via_center_to_edge;
}

std::string_view to_string(ServedBy s) {
  switch (s) {
    case ServedBy::augmented: return "augmented";
    case ServedBy::certified_local: return "certified_local";
    case ServedBy::center: return "center";
  }
  return "?";
}

std::string_view to_string(SimEvent::Kind k) {
  using K = SimEvent::Kind;
  switch (k) {
    case K::query_arrival: return "query-arrival";
    case K::forward_to_center: return "forward-to-center";
    case K::forward_to_edge: return "forward-to-edge";
    case K::answer: return "answer";
    case K::update_batch: return "update-batch";
    case K::rebuild_start: return "rebuild-start";
    case K::rebuild_complete: return "rebuild-complete";
    case K::shortcut_distribution: return "shortcut-distribution";
  }
  return "?";
}

std::size_t SimulationResult::incorrect() const {
  return static_cast<std::size_t>(std::count_if(queries.begin(), queries.end(), [](const QueryRecord& r) { return !r.correct; }));
}

void write_trace_csv(std::ostream& out, const SimulationResult& result) {
  out << "query_id,arrival_ms,answer_ms,rule,certified,value,correct,served_by,snapshot,stale\n";
  for (const QueryRecord& r : result.queries) {
    out << r.id << ',' << format_ms(r.arrival) << ',' << format_ms(r.answer) << ',' << static_cast<int>(r.rule) << ','
        << r.certified << ',' << distance_to_string(r.value) << ',' << r.correct << ',' << to_string(r.served_by) << ','
        << r.snapshot << ',' << r.stale << '\n';
  }
}

void write_epoch_summary(std::ostream& out, const SimulationResult& result) {
  out << "epoch,start_ms,outcome,snapshot,updates,center_ready_ms,edges_ready_ms,plus_rebuilds\n";
  for (const EpochSummary& e : result.epochs) {
    const char* outcome = e.outcome == EpochSummary::Outcome::rebuilt        ? "rebuilt"
                          : e.outcome == EpochSummary::Outcome::skipped_busy ? "skipped_busy"
                                                                             : "unchanged";
    out << e.epoch << ',' << format_ms(e.start) << ',' << outcome << ',' << e.snapshot << ',' << e.updates << ',';
    if (e.outcome == EpochSummary::Outcome::rebuilt) {
      out << format_ms(e.center_ready) << ',' << format_ms(e.edges_ready);
    } else {
      out << ',';
    }
    out << ',' << e.plus_rebuilds << '\n';
  }
}

}  // namespace edgehub
