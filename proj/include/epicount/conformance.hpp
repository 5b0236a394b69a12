#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epicount/episode.hpp"
#include "epicount/event.hpp"
#include "epicount/oracle.hpp"

namespace epicount {

/// Randomized engine-vs-oracle equivalence runs.
struct ConformanceConfig {
  std::size_t trials = 10'000;
  std::size_t max_length = 30;
  std::size_t max_k = 4;
  std::size_t sigma = 4;
  Tick max_tau = 12;
  std::uint64_t seed = 1;
  /// Probability that a record is a multi-symbol batch.
  double batch_probability = 0.0;
  oracle::Limits limits{};
};

struct Instance {
  std::vector<EventBatch> records;
  TimeConstrainedEpisode episode;

  [[nodiscard]] std::vector<Event> events() const { return flatten(records); }
};

struct Discrepancy {
  Instance instance;
  FrequencyKind mode;
  std::size_t engine_count;
  std::size_t oracle_count;
  std::string oracle;  // which reference produced oracle_count
};

struct ConformanceReport {
  std::size_t trials = 0;
  std::size_t nonoverlapped_matches = 0;
  std::size_t distinct_matches = 0;          // engine == greedy_distinct
  std::size_t exhaustive_checked = 0;        // instances small enough for max_distinct
  std::size_t exhaustive_within_bound = 0;   // engine <= max_distinct
  std::size_t greedy_gaps = 0;               // greedy_distinct < max_distinct
  std::optional<Discrepancy> first_nonoverlapped_failure;
  std::optional<Discrepancy> first_distinct_failure;
  std::optional<Discrepancy> first_gap;
  double seconds = 0;

  [[nodiscard]] bool passed() const noexcept {
    return nonoverlapped_matches == trials && distinct_matches == trials &&
           exhaustive_within_bound == exhaustive_checked;
  }
};

/// Random small instance: symbols drawn from the first `sigma` letters,
/// timestamp gaps of 1..3 ticks, k in [1, max_k], tau in [1, max_tau].
Instance random_instance(std::mt19937_64& rng, const ConformanceConfig& cfg, SymbolTable& table);

/// Engine counts for one instance in both modes.
std::pair<std::size_t, std::size_t> engine_counts(const Instance& instance);

ConformanceReport run_conformance(const ConformanceConfig& cfg, SymbolTable& table);

/// Human-readable dump: the stream in line format plus the episode.
std::string describe(const Instance& instance, const SymbolTable& table);

}  // namespace epicount
