#include "edgehub/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>

namespace edgehub {

namespace {

using Clock = std::chrono::steady_clock;

double micros(Clock::time_point a, Clock::time_point b) { return std::chrono::duration<double, std::micro>(b - a).count(); }

// Seeded Bernoulli draw without std distributions (their output is not
// portable across standard libraries).
bool draw(std::mt19937_64& rng, double fraction) {
  if (fraction >= 1.0) return true;
  if (fraction <= 0.0) return false;
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < fraction;
}

}  // namespace

LatencySummary summarize_latencies(std::vector<double> samples) {
  LatencySummary s;
  s.count = samples.size();
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  auto rank = [&](double p) {
    auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(samples.size())));
    return samples[std::clamp<std::size_t>(k, 1, samples.size()) - 1];
  };
  s.mean_us = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  s.p50_us = rank(0.50);
  s.p99_us = rank(0.99);
  s.max_us = samples.back();
  return s;
}

BenchReport run_bench(IndexStore& store, const Graph& graph, std::size_t n, std::uint64_t seed, double verify_fraction) {
  const VertexId nv = store.vertex_count();
  if (graph.vertex_count() != nv) throw InputError("graph and index disagree on the vertex count");
  if (n == 0) throw InputError("bench needs at least one query");
  if (nv < 2) throw InputError("bench needs at least two vertices");
  if (!(verify_fraction >= 0.0 && verify_fraction <= 1.0)) throw InputError("verify fraction must lie in [0, 1]");
  store.load_all();

  BenchReport report;
  report.queries = n;
  report.seed = seed;
  report.verify_fraction = verify_fraction;
  std::mt19937_64 rng(seed);
  DijkstraScratch scratch(nv);
  std::vector<double> all;
  std::array<std::vector<double>, 3> per;
  all.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto s = static_cast<VertexId>(rng() % nv);
    auto t = static_cast<VertexId>(rng() % (nv - 1));
    if (t >= s) ++t;
    bool verify = draw(rng, verify_fraction);

    auto a = Clock::now();
    DispatchAnswer answer = store.query(s, t);
    auto b = Clock::now();
    double us = micros(a, b);
    all.push_back(us);
    per[static_cast<std::size_t>(answer.via)].push_back(us);

    CertifiedAnswer local;
    bool same = store.partition().district_of(s) == store.partition().district_of(t);
    if (same) {
      ++report.same_district;
      a = Clock::now();
      local = store.local_query(s, t);
      b = Clock::now();
      per[static_cast<std::size_t>(QueryClass::certified_local)].push_back(micros(a, b));
      report.certified += local.certified;
    }
    if (verify) {
      Distance d = dijkstra_pair(graph, s, t, scratch);
      ++report.verified;
      report.correct += answer.value == d && (!local.certified || local.value == d);
    }
  }
  report.dispatch = summarize_latencies(std::move(all));
  for (std::size_t c = 0; c < per.size(); ++c) report.by_class[c] = summarize_latencies(std::move(per[c]));
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& r) {
  out << "class,count,mean_us,p50_us,p99_us,max_us\n";
  auto row = [&](std::string_view name, const LatencySummary& s) {
    out << name << ',' << s.count << ',' << s.mean_us << ',' << s.p50_us << ',' << s.p99_us << ',' << s.max_us << '\n';
  };
  row("dispatch", r.dispatch);
  for (std::size_t c = 0; c < r.by_class.size(); ++c) row(to_string(static_cast<QueryClass>(c)), r.by_class[c]);
}

void print_bench_table(std::ostream& out, const BenchReport& r) {
  out << "queries " << r.queries << "  seed " << r.seed << "  verified " << r.verified << "  correct " << r.correct
      << "  same-district " << r.same_district << "  certified-local " << r.certified << '\n';
  out << std::left << std::setw(16) << "class" << std::right << std::setw(10) << "count" << std::setw(12) << "mean_us"
      << std::setw(12) << "p50_us" << std::setw(12) << "p99_us" << std::setw(12) << "max_us" << '\n';
  auto row = [&](std::string_view name, const LatencySummary& s) {
    out << std::left << std::setw(16) << name << std::right << std::setw(10) << s.count << std::fixed
        << std::setprecision(3) << std::setw(12) << s.mean_us << std::setw(12) << s.p50_us << std::setw(12) << s.p99_us
        << std::setw(12) << s.max_us << '\n';
    out.unsetf(std::ios::fixed);
  };
  row("dispatch", r.dispatch);
  for (std::size_t c = 0; c < r.by_class.size(); ++c) row(to_string(static_cast<QueryClass>(c)), r.by_class[c]);
}

VerifyReport run_verify(IndexStore& store, const Graph& graph, double source_fraction, std::uint64_t seed) {
  const VertexId nv = store.vertex_count();
  if (graph.vertex_count() != nv) throw InputError("graph and index disagree on the vertex count");
  if (!(source_fraction >= 0.0 && source_fraction <= 1.0)) throw InputError("verify fraction must lie in [0, 1]");
  store.load_all();
  VerifyReport report;
  std::mt19937_64 rng(seed);
  const Partition& p = store.partition();
  for (VertexId s = 0; s < nv; ++s) {
    if (!draw(rng, source_fraction)) continue;
    ++report.sources;
    std::vector<Distance> d = dijkstra(graph, s);
    for (VertexId t = 0; t < nv; ++t) {
      ++report.pairs;
      DispatchAnswer a = store.query(s, t);
      report.mismatches += a.value != d[t];
      (a.via == QueryClass::border ? report.border_pairs : report.augmented_pairs)++;
      if (p.district_of(s) == p.district_of(t)) {
        CertifiedAnswer c = store.local_query(s, t);
        if (c.certified) {
          ++report.certified_pairs;
          report.certified_mismatches += c.value != d[t];
        }
      }
    }
  }
  return report;
}

}  // namespace edgehub
