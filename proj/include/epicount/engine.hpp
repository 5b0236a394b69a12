#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "epicount/episode.hpp"
#include "epicount/event.hpp"
#include "epicount/occmap.hpp"
#include "epicount/occurrence.hpp"

namespace epicount {

struct CounterHandle {
  std::uint32_t id = 0;

  friend constexpr bool operator==(CounterHandle, CounterHandle) = default;
  friend constexpr auto operator<=>(CounterHandle, CounterHandle) = default;
};

/// One accepted occurrence for one counter.
struct Emission {
  CounterHandle handle;
  Occurrence occurrence;

  friend bool operator==(const Emission&, const Emission&) = default;
};

struct EngineMetrics {
  std::uint64_t events_processed = 0;
  /// Timestamps inserted into any OccMap.
  std::uint64_t matches = 0;
  std::map<CounterHandle, std::size_t> per_counter_entries;
  std::map<CounterHandle, std::size_t> per_counter_peak_entries;
  std::map<CounterHandle, std::uint64_t> per_counter_frequency;
};

class UnknownCounterError : public std::out_of_range {
 public:
  explicit UnknownCounterError(CounterHandle handle);
};

/// One-pass frequency counter for a group of episodes. Every event is offered
/// to each counter whose episode mentions its symbol; a non-empty bottom
/// layer triggers validation and, on acceptance, a frequency increment.
class Engine {
 public:
  Engine() = default;

  CounterHandle add_counter(TimeConstrainedEpisode episode, FrequencyKind mode);

  /// Throws StreamOrderError if the timestamp precedes the last processed
  /// one; the engine is left untouched in that case.
  std::vector<Emission> process_event(const Event& event);
  /// Allocation-free variant; appends to `out`.
  void process_event(const Event& event, std::vector<Emission>& out);

  /// Members are processed one after another with the shared timestamp.
  std::vector<Emission> process_batch(const EventBatch& batch);
  void process_batch(const EventBatch& batch, std::vector<Emission>& out);

  [[nodiscard]] std::uint64_t frequency(CounterHandle handle) const;
  [[nodiscard]] const OccMap& occmap(CounterHandle handle) const;
  [[nodiscard]] const TimeConstrainedEpisode& episode(CounterHandle handle) const;
  [[nodiscard]] FrequencyKind mode(CounterHandle handle) const;
  [[nodiscard]] std::size_t counter_count() const noexcept { return counters_.size(); }
  [[nodiscard]] std::vector<CounterHandle> handles() const;

  /// Counter state and frequency back to their registration state. Later
  /// events are still subject to the engine-wide ordering check.
  void reset(CounterHandle handle);

  [[nodiscard]] EngineMetrics metrics() const;
  [[nodiscard]] std::uint64_t events_processed() const noexcept { return events_processed_; }
  [[nodiscard]] std::optional<Tick> last_timestamp() const noexcept { return clock_; }

 private:
  struct Counter {
    OccMap map;
    std::uint64_t frequency = 0;
  };

  Counter& counter(CounterHandle handle);
  const Counter& counter(CounterHandle handle) const;
  void dispatch(const Event& event, std::vector<Emission>& out);

  std::vector<Counter> counters_;
  // symbol id -> counters interested in it, ascending by handle
  std::vector<std::vector<std::uint32_t>> by_symbol_;
  std::optional<Tick> clock_;
  std::uint64_t events_processed_ = 0;
  std::uint64_t retired_matches_ = 0;
};

}  // namespace epicount
