#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epicount/episode.hpp"
#include "epicount/event.hpp"
#include "epicount/occurrence.hpp"

namespace epicount {

/// Ascending list of timestamps with O(1) amortized removal at the head.
class TimestampList {
 public:
  [[nodiscard]] bool empty() const noexcept { return head_ == buf_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return buf_.size() - head_; }
  [[nodiscard]] Tick front() const noexcept { return buf_[head_]; }
  [[nodiscard]] Tick back() const noexcept { return buf_.back(); }
  [[nodiscard]] std::span<const Tick> view() const noexcept {
    return {buf_.data() + head_, size()};
  }

  void push_back(Tick t) { buf_.push_back(t); }
  void pop_front() noexcept;
  void clear() noexcept {
    buf_.clear();
    head_ = 0;
  }
  /// Removes every entry <= t.
  void drop_through(Tick t);
  /// Removes the entry equal to t, if present.
  void erase_value(Tick t);
  /// Largest entry strictly below t.
  [[nodiscard]] std::optional<Tick> last_below(Tick t) const;
  /// Smallest entry strictly above t.
  [[nodiscard]] std::optional<Tick> first_above(Tick t) const;
  /// Smallest entry >= t.
  [[nodiscard]] std::optional<Tick> first_at_least(Tick t) const;

 private:
  void compact();

  std::vector<Tick> buf_;
  std::size_t head_ = 0;
};

struct ValidationResult {
  bool accepted = false;
  std::optional<Occurrence> occurrence;  // set iff accepted
};

/// Per-episode counting state: one timestamp list per episode position plus
/// the active-layer index. Layers are 0-based in this API; `active_layer()`
/// reports the 1-based index of the first empty layer (k + 1 when none).
///
/// Single writer. All mutating members must be externally serialized.
class OccMap {
 public:
  OccMap(TimeConstrainedEpisode episode, FrequencyKind mode);

  /// Rebuilds a map in an arbitrary state, e.g. to replay a documented trace.
  /// Each layer must be strictly ascending. The stream clock is set to the
  /// largest timestamp present.
  static OccMap from_layers(TimeConstrainedEpisode episode, FrequencyKind mode,
                            const std::vector<std::vector<Tick>>& layers);

  /// Appends the event timestamp to every eligible layer carrying its symbol,
  /// trims heads older than tau, and restores the layer invariants. Returns
  /// true when the bottom layer is non-empty afterwards, i.e. validation is
  /// due. Throws StreamOrderError on a timestamp regression (state untouched).
  bool list_update(const Event& event);

  /// Drops layer heads that have no strictly earlier predecessor in the layer
  /// above, top to bottom. NonOverlapped mode only; a no-op otherwise.
  void repair_monotonicity();

  /// Bottom-up extraction of the latest-starting occurrence ending at the
  /// bottom entry, followed by the time test and elimination.
  /// Requires NonOverlapped mode and a non-empty bottom layer.
  ValidationResult validate_eliminate();

  /// Top-down extraction of the earliest event-disjoint occurrence ending at
  /// the bottom entry. Requires Distinct mode and a non-empty bottom layer.
  ValidationResult validate_eliminate_plus();

  /// Dispatches to the validator matching the map's mode.
  ValidationResult validate();

  [[nodiscard]] std::size_t total_entries() const noexcept;
  [[nodiscard]] std::size_t peak_entries() const noexcept { return peak_entries_; }
  [[nodiscard]] std::size_t active_layer() const noexcept { return active_layer_; }
  [[nodiscard]] std::size_t length() const noexcept { return layers_.size(); }
  [[nodiscard]] std::span<const Tick> layer(std::size_t index) const { return layers_.at(index).view(); }
  [[nodiscard]] const TimeConstrainedEpisode& episode() const noexcept { return episode_; }
  [[nodiscard]] FrequencyKind mode() const noexcept { return mode_; }
  /// Timestamps inserted so far (the "matches" statistic).
  [[nodiscard]] std::uint64_t matches() const noexcept { return matches_; }

  /// One line per layer, `L<i>(<symbol>): t1 t2 ...`, then `ell=<l>`.
  [[nodiscard]] std::string snapshot(const SymbolTable& table) const;

  /// Back to the freshly constructed state (statistics included).
  void reset();

 private:
  struct Positions {
    Symbol symbol;
    std::vector<std::uint32_t> descending;
  };

  [[nodiscard]] const std::vector<std::uint32_t>* positions_of(Symbol symbol) const noexcept;
  void recompute_active_layer() noexcept;
  void cascade_empty_prefix() noexcept;
  void clear_layers() noexcept;

  TimeConstrainedEpisode episode_;
  FrequencyKind mode_;
  std::vector<TimestampList> layers_;
  std::vector<Positions> positions_;
  std::size_t active_layer_ = 1;
  std::optional<Tick> clock_;
  // NonOverlapped: end of the last accepted occurrence; nothing at or
  // before it may start a new one.
  std::optional<Tick> accepted_end_;
  std::uint64_t matches_ = 0;
  std::size_t peak_entries_ = 0;
};

}  // namespace epicount
