#pragma once

#include <span>
#include <vector>

#include "epicount/engine.hpp"

namespace epicount {

/// Counters partitioned round-robin over worker shards. Every shard sees every
/// event and owns its counters exclusively; emissions are merged back into
/// the order a single Engine would produce (event order, then handle).
class ShardedEngine {
 public:
  explicit ShardedEngine(std::size_t shards);

  CounterHandle add_counter(TimeConstrainedEpisode episode, FrequencyKind mode);

  /// Processes a chunk of records. Throws StreamOrderError before touching
  /// any shard if the chunk is out of order.
  std::vector<Emission> process(std::span<const EventBatch> batches);

  [[nodiscard]] std::uint64_t frequency(CounterHandle handle) const;
  [[nodiscard]] const TimeConstrainedEpisode& episode(CounterHandle handle) const;
  void reset(CounterHandle handle);
  [[nodiscard]] EngineMetrics metrics() const;
  [[nodiscard]] std::size_t shard_count() const noexcept { return shards_.size(); }
  [[nodiscard]] std::size_t counter_count() const noexcept { return next_id_; }

 private:
  [[nodiscard]] std::size_t shard_of(CounterHandle h) const noexcept { return h.id % shards_.size(); }
  [[nodiscard]] CounterHandle local(CounterHandle h) const noexcept {
    return CounterHandle{static_cast<std::uint32_t>(h.id / shards_.size())};
  }
  [[nodiscard]] CounterHandle global(std::size_t shard, CounterHandle l) const noexcept {
    return CounterHandle{static_cast<std::uint32_t>(l.id * shards_.size() + shard)};
  }

  std::vector<Engine> shards_;
  std::uint32_t next_id_ = 0;
  std::optional<Tick> clock_;
};

}  // namespace epicount
