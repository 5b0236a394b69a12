#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "epicount/event.hpp"
#include "epicount/symbol.hpp"

namespace epicount {

enum class FrequencyKind {
  NonOverlapped,  // occurrence windows pairwise disjoint
  Distinct,       // occurrences pairwise share no event instance
};

std::string_view to_string(FrequencyKind kind);
/// Accepts "nonoverlapped" / "distinct" (case-insensitive).
FrequencyKind parse_frequency_kind(std::string_view text);

/// Serial episode with a maximum span. Symbols may repeat; each position is
/// matched independently.
class TimeConstrainedEpisode {
 public:
  /// Throws std::invalid_argument unless symbols is non-empty and tau > 0.
  TimeConstrainedEpisode(std::vector<Symbol> symbols, Tick tau);

  [[nodiscard]] const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  [[nodiscard]] Symbol at(std::size_t position) const { return symbols_.at(position); }
  [[nodiscard]] std::size_t length() const noexcept { return symbols_.size(); }
  [[nodiscard]] Tick tau() const noexcept { return tau_; }

  friend bool operator==(const TimeConstrainedEpisode&, const TimeConstrainedEpisode&) = default;

 private:
  std::vector<Symbol> symbols_;
  Tick tau_;
};

/// Parses `A,A,B@tau=3`. Symbol names are trimmed and interned into `table`.
/// Throws std::invalid_argument on malformed text.
TimeConstrainedEpisode parse_episode(std::string_view text, SymbolTable& table);

/// Inverse of parse_episode.
std::string format_episode(const TimeConstrainedEpisode& episode, const SymbolTable& table);

}  // namespace epicount
