#include "epicount/sharded_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace epicount {

ShardedEngine::ShardedEngine(std::size_t shards) : shards_(std::max<std::size_t>(shards, 1)) {}

CounterHandle ShardedEngine::add_counter(TimeConstrainedEpisode episode, FrequencyKind mode) {
  const CounterHandle h{next_id_++};
  const CounterHandle l = shards_[shard_of(h)].add_counter(std::move(episode), mode);
  if (l != local(h)) {
    throw std::logic_error("shard handle assignment out of step");
  }
  return h;
}

std::vector<Emission> ShardedEngine::process(std::span<const EventBatch> batches) {
  std::optional<Tick> clock = clock_;
  for (const auto& b : batches) {
    if (clock && b.timestamp() < *clock) throw StreamOrderError(*clock, b.timestamp());
    clock = b.timestamp();
  }
  clock_ = clock;

  struct Tagged {
    std::size_t seq;
    Emission emission;
  };
  std::vector<std::vector<Tagged>> per_shard(shards_.size());

  auto run = [&](std::size_t s) {
    Engine& engine = shards_[s];
    std::vector<Emission> scratch;
    std::size_t seq = 0;
    for (const auto& b : batches) {
      for (Symbol sym : b.symbols()) {
        engine.process_event(Event{sym, b.timestamp()}, scratch);
        for (auto& e : scratch) {
          per_shard[s].push_back(Tagged{seq, Emission{global(s, e.handle), std::move(e.occurrence)}});
        }
        scratch.clear();
        ++seq;
      }
    }
  };

  if (shards_.size() == 1) {
    run(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(shards_.size() - 1);
    for (std::size_t s = 1; s < shards_.size(); ++s) workers.emplace_back(run, s);
    run(0);
  }

  std::vector<Tagged> merged;
  for (auto& v : per_shard) {
    std::move(v.begin(), v.end(), std::back_inserter(merged));
  }
  std::stable_sort(merged.begin(), merged.end(), [](const Tagged& a, const Tagged& b) {
    return a.seq != b.seq ? a.seq < b.seq : a.emission.handle < b.emission.handle;
  });
  std::vector<Emission> out;
  out.reserve(merged.size());
  for (auto& t : merged) out.push_back(std::move(t.emission));
  return out;
}

std::uint64_t ShardedEngine::frequency(CounterHandle handle) const {
  if (handle.id >= next_id_) throw UnknownCounterError(handle);
  return shards_[shard_of(handle)].frequency(local(handle));
}

const TimeConstrainedEpisode& ShardedEngine::episode(CounterHandle handle) const {
  if (handle.id >= next_id_) throw UnknownCounterError(handle);
  return shards_[shard_of(handle)].episode(local(handle));
}

void ShardedEngine::reset(CounterHandle handle) {
  if (handle.id >= next_id_) throw UnknownCounterError(handle);
  shards_[shard_of(handle)].reset(local(handle));
}

EngineMetrics ShardedEngine::metrics() const {
  EngineMetrics out;
  out.events_processed = shards_.front().events_processed();
  for (std::size_t s = 0; s < shards_.size(); ++s) {
    const EngineMetrics m = shards_[s].metrics();
    out.matches += m.matches;
    for (const auto& [h, v] : m.per_counter_entries) out.per_counter_entries[global(s, h)] = v;
    for (const auto& [h, v] : m.per_counter_peak_entries) out.per_counter_peak_entries[global(s, h)] = v;
    for (const auto& [h, v] : m.per_counter_frequency) out.per_counter_frequency[global(s, h)] = v;
  }
  return out;
}

}  // namespace epicount
