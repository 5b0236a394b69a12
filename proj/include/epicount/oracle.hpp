#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "epicount/episode.hpp"
#include "epicount/event.hpp"
#include "epicount/occurrence.hpp"

/// Exhaustive reference counters over small materialized sequences. Nothing
/// here is incremental or efficient; these functions define the expected
/// answers the streaming engine is checked against.
namespace epicount::oracle {

struct Limits {
  std::size_t max_events = 64;
  std::size_t max_occurrences = 200'000;
  /// Subset search in max_distinct is exponential in this.
  std::size_t max_distinct_candidates = 15;
};

class LimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Events ordered by timestamp; events sharing a timestamp must carry
/// different symbols (a flattened complex stream).
using FiniteSequence = std::vector<Event>;

/// Every strictly increasing tuple matching the episode with span <= tau, in
/// lexicographic order.
std::vector<Occurrence> enumerate_occurrences(std::span<const Event> events,
                                              const TimeConstrainedEpisode& episode,
                                              const Limits& limits = {});

/// Occurrences of the unconstrained episode whose window [t_1, t_k] contains
/// no other occurrence's window as a proper sub-window.
std::vector<Occurrence> minimal_occurrences(std::span<const Event> events,
                                            std::span<const Symbol> symbols,
                                            const Limits& limits = {});

/// For each end timestamp, the occurrence ending there with the latest start
/// (ties broken towards the lexicographically largest tuple). Unconstrained.
std::vector<Occurrence> latest_start_occurrences(std::span<const Event> events,
                                                 std::span<const Symbol> symbols,
                                                 const Limits& limits = {});

/// Maximum number of pairwise non-overlapped tau-valid occurrences
/// (earliest-end-first interval scheduling).
std::size_t max_nonoverlapped(std::span<const Event> events, const TimeConstrainedEpisode& episode,
                              const Limits& limits = {});

/// Maximum number of pairwise distinct tau-valid occurrences by exhaustive
/// set packing. Throws LimitExceeded above limits.max_distinct_candidates.
std::size_t max_distinct(std::span<const Event> events, const TimeConstrainedEpisode& episode,
                         const Limits& limits = {});

/// Repeatedly takes the lexicographically earliest tau-valid occurrence built
/// from unconsumed events and consumes those events.
std::vector<Occurrence> greedy_distinct_occurrences(std::span<const Event> events,
                                                    const TimeConstrainedEpisode& episode,
                                                    const Limits& limits = {});

std::size_t greedy_distinct(std::span<const Event> events, const TimeConstrainedEpisode& episode,
                            const Limits& limits = {});

}  // namespace epicount::oracle
