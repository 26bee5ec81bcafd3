#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include "edgehub/index_store.hpp"

namespace edgehub {

struct LatencySummary {
  std::size_t count = 0;
  double mean_us = 0.0;
  double p50_us = 0.0;
  double p99_us = 0.0;
  double max_us = 0.0;
};

// Nearest-rank percentiles over per-query microsecond samples.
LatencySummary summarize_latencies(std::vector<double> samples_us);

/// n seeded uniform s != t queries through IndexStore::query. Same-district
/// pairs are also timed through the certified L_i lookup. A seeded subset
/// (verify_fraction) is checked against Dijkstra.
struct BenchReport {
  std::size_t queries = 0;
  std::uint64_t seed = 0;
  double verify_fraction = 0.0;
  std::size_t verified = 0;
  std::size_t correct = 0;
  std::size_t same_district = 0;
  std::size_t certified = 0;
  LatencySummary dispatch;  // every query, whichever index answered
  std::array<LatencySummary, 3> by_class;  // indexed by QueryClass
};

BenchReport run_bench(IndexStore& store, const Graph& graph, std::size_t n, std::uint64_t seed, double verify_fraction);
void write_bench_csv(std::ostream& out, const BenchReport& report);
void print_bench_table(std::ostream& out, const BenchReport& report);

/// Oracle sweep: for a seeded fraction of sources, every target is checked
/// through the dispatcher, and same-district targets through the certified
/// local lookup (a certified value must be exact).
struct VerifyReport {
  std::size_t sources = 0;
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::size_t border_pairs = 0;
  std::size_t augmented_pairs = 0;
  std::size_t certified_pairs = 0;
  std::size_t certified_mismatches = 0;
};

VerifyReport run_verify(IndexStore& store, const Graph& graph, double source_fraction, std::uint64_t seed);

}  // namespace edgehub
