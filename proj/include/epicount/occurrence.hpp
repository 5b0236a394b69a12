#pragma once

#include <span>
#include <string>
#include <vector>

#include "epicount/episode.hpp"
#include "epicount/event.hpp"

namespace epicount {

/// Timestamps at which the episode positions were matched, one per position.
struct Occurrence {
  std::vector<Tick> timestamps;

  [[nodiscard]] std::size_t length() const noexcept { return timestamps.size(); }
  [[nodiscard]] Tick start() const { return timestamps.front(); }
  [[nodiscard]] Tick end() const { return timestamps.back(); }
  [[nodiscard]] Tick span() const { return end() - start(); }

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

std::string to_string(const Occurrence& occurrence);

/// True iff every t_i carries symbol phi_i in `events`, the tuple is strictly
/// increasing, and t_k - t_1 <= tau. `events` may contain several events with
/// one timestamp (flattened batches). Throws std::invalid_argument when the
/// tuple length differs from the episode length.
bool is_valid_occurrence(const TimeConstrainedEpisode& episode, std::span<const Event> events,
                         const Occurrence& occurrence);

/// Windows [t_1, t_k] are disjoint (strictly).
bool are_nonoverlapped(const Occurrence& a, const Occurrence& b);

/// No event instance (symbol, timestamp) is used by both occurrences.
bool are_distinct(const TimeConstrainedEpisode& episode, const Occurrence& a, const Occurrence& b);

}  // namespace epicount
