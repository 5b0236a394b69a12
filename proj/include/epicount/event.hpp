#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "epicount/symbol.hpp"

namespace epicount {

/// Integer time units; resolution is whatever the producer chose.
using Tick = std::int64_t;

struct Event {
  Symbol symbol;
  Tick timestamp = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// A complex event: several symbols sharing one timestamp.
class EventBatch {
 public:
  /// Duplicate symbols are collapsed; the first-seen order of the remaining
  /// members is kept. Throws std::invalid_argument when `symbols` is empty or
  /// the timestamp is negative.
  EventBatch(Tick timestamp, std::vector<Symbol> symbols);

  [[nodiscard]] Tick timestamp() const noexcept { return timestamp_; }
  [[nodiscard]] const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }

  friend bool operator==(const EventBatch&, const EventBatch&) = default;

 private:
  Tick timestamp_;
  std::vector<Symbol> symbols_;
};

/// Raised when an event arrives with a timestamp earlier than one already
/// consumed.
class StreamOrderError : public std::runtime_error {
 public:
  StreamOrderError(Tick previous, Tick offending);

  Tick previous;
  Tick offending;
};

/// Flattens batches into individual events sharing their batch timestamp.
std::vector<Event> flatten(const std::vector<EventBatch>& batches);

}  // namespace epicount
