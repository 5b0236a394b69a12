#include "epicount/engine.hpp"

#include <algorithm>
#include <string>

namespace epicount {

UnknownCounterError::UnknownCounterError(CounterHandle handle)
    : std::out_of_range("unknown counter handle " + std::to_string(handle.id)) {}

CounterHandle Engine::add_counter(TimeConstrainedEpisode episode, FrequencyKind mode) {
  const auto id = static_cast<std::uint32_t>(counters_.size());
  for (Symbol s : episode.symbols()) {
    if (s.id >= by_symbol_.size()) by_symbol_.resize(s.id + 1);
    auto& list = by_symbol_[s.id];
    if (list.empty() || list.back() != id) list.push_back(id);
  }
  counters_.push_back(Counter{OccMap(std::move(episode), mode), 0});
  return CounterHandle{id};
}

std::vector<Emission> Engine::process_event(const Event& event) {
  std::vector<Emission> out;
  process_event(event, out);
  return out;
}

void Engine::process_event(const Event& event, std::vector<Emission>& out) {
  if (clock_ && event.timestamp < *clock_) {
    throw StreamOrderError(*clock_, event.timestamp);
  }
  if (event.timestamp < 0) {
    throw std::invalid_argument("timestamp must be non-negative");
  }
  clock_ = event.timestamp;
  dispatch(event, out);
}

std::vector<Emission> Engine::process_batch(const EventBatch& batch) {
  std::vector<Emission> out;
  process_batch(batch, out);
  return out;
}

void Engine::process_batch(const EventBatch& batch, std::vector<Emission>& out) {
  if (clock_ && batch.timestamp() < *clock_) {
    throw StreamOrderError(*clock_, batch.timestamp());
  }
  clock_ = batch.timestamp();
  for (Symbol s : batch.symbols()) {
    dispatch(Event{s, batch.timestamp()}, out);
  }
}

void Engine::dispatch(const Event& event, std::vector<Emission>& out) {
  ++events_processed_;
  if (event.symbol.id >= by_symbol_.size()) return;
  for (const std::uint32_t id : by_symbol_[event.symbol.id]) {
    Counter& c = counters_[id];
    if (!c.map.list_update(event)) continue;
    ValidationResult result = c.map.validate();
    if (result.accepted) {
      ++c.frequency;
      out.push_back(Emission{CounterHandle{id}, std::move(*result.occurrence)});
    }
  }
}

Engine::Counter& Engine::counter(CounterHandle handle) {
  if (handle.id >= counters_.size()) throw UnknownCounterError(handle);
  return counters_[handle.id];
}

const Engine::Counter& Engine::counter(CounterHandle handle) const {
  if (handle.id >= counters_.size()) throw UnknownCounterError(handle);
  return counters_[handle.id];
}

std::uint64_t Engine::frequency(CounterHandle handle) const { return counter(handle).frequency; }

const OccMap& Engine::occmap(CounterHandle handle) const { return counter(handle).map; }

const TimeConstrainedEpisode& Engine::episode(CounterHandle handle) const {
  return counter(handle).map.episode();
}

FrequencyKind Engine::mode(CounterHandle handle) const { return counter(handle).map.mode(); }

std::vector<CounterHandle> Engine::handles() const {
  std::vector<CounterHandle> out;
  out.reserve(counters_.size());
  for (std::uint32_t i = 0; i < counters_.size(); ++i) out.push_back(CounterHandle{i});
  return out;
}

void Engine::reset(CounterHandle handle) {
  Counter& c = counter(handle);
  retired_matches_ += c.map.matches();
  c.map.reset();
  c.frequency = 0;
}

EngineMetrics Engine::metrics() const {
  EngineMetrics m;
  m.events_processed = events_processed_;
  m.matches = retired_matches_;
  for (std::uint32_t i = 0; i < counters_.size(); ++i) {
    const CounterHandle h{i};
    const Counter& c = counters_[i];
    m.matches += c.map.matches();
    m.per_counter_entries[h] = c.map.total_entries();
    m.per_counter_peak_entries[h] = c.map.peak_entries();
    m.per_counter_frequency[h] = c.frequency;
  }
  return m;
}

}  // namespace epicount
