#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epicount/engine.hpp"
#include "epicount/symbol.hpp"

namespace epicount {

/// Either an absolute count or a percentage of a named per-group population.
struct Threshold {
  enum class Kind { Absolute, Percentage };
  Kind kind = Kind::Absolute;
  std::uint64_t count = 0;  // Absolute
  // Percentage, kept as an exact decimal: percent = numerator / denominator.
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  std::string population;

  /// Absolute trigger count for a group: the count itself, or
  /// ceil(percent / 100 * population), at least 1.
  [[nodiscard]] std::uint64_t resolve(std::optional<std::uint64_t> population_size) const;
};

struct IncidentRule {
  std::string name;
  std::vector<std::string> alarm_symbols;
  Tick tau = 0;
  Threshold threshold;
  std::string group_key;
  FrequencyKind mode = FrequencyKind::NonOverlapped;
};

struct Alert {
  std::string rule;
  std::string group;
  std::uint64_t count = 0;
  Tick timestamp = 0;

  friend bool operator==(const Alert&, const Alert&) = default;
};

/// `ALERT <rule> <group> count=<n> t=<ts>`
std::string format_alert(const Alert& alert);

struct RuleFileOptions {
  /// Ticks per minute for `m` / `h` suffixed time constraints.
  Tick ticks_per_minute = 60;
};

/// Parses rule lines of the form
///   name: sym,sym,... @tau=<n>[m|h] threshold=<n|n%> [of <population>] [mode=<m>] by <key>
/// `#` starts a comment line. Throws ParseError with the offending line.
std::vector<IncidentRule> load_rules(std::string_view text, const RuleFileOptions& options = {});

/// population name -> group value -> size
using Populations = std::map<std::string, std::map<std::string, std::uint64_t>, std::less<>>;

/// Lines `<population>,<group>,<size>`; `#` comments allowed.
Populations load_populations(std::string_view text);

/// Interns `base@group`. Rejects empty parts and parts containing the
/// separator characters '@', ',' or '|'.
Symbol compose_symbol(SymbolTable& table, std::string_view base, std::string_view group_value);

/// One NonOverlapped (or rule-selected mode) counter per group value, over
/// the rule's symbols composed with that group.
std::vector<CounterHandle> bind_rule(Engine& engine, SymbolTable& table, const IncidentRule& rule,
                                     const std::vector<std::string>& group_values);

/// Tracks thresholds and latches for bound (rule, group) counters and turns
/// engine emissions into alerts. Runs on the engine's emission path.
class RuleMonitor {
 public:
  RuleMonitor(Engine& engine, SymbolTable& table, std::vector<IncidentRule> rules,
              Populations populations = {});

  /// Binds the given groups of rule `rule_index`. Groups already bound are
  /// skipped. Percentage rules need a population entry for each group.
  std::vector<CounterHandle> bind(std::size_t rule_index, const std::vector<std::string>& groups);

  /// Binds every group listed for the rules' populations.
  void bind_declared_groups();

  /// Alert exactly when `new_count` first reaches the group's threshold.
  std::optional<Alert> on_count(CounterHandle handle, std::uint64_t new_count, Tick timestamp);

  /// Feeds one record to the engine. Composite symbols `base@group` whose base
  /// belongs to a rule bind that group on first sight when it can be bound.
  std::vector<Alert> process(const EventBatch& batch);

  /// Clears the latch and the counter of one (rule, group).
  void reset(std::string_view rule, std::string_view group);

  struct GroupState {
    std::size_t rule_index;
    std::string group;
    CounterHandle handle;
    std::uint64_t threshold;
    bool latched = false;
  };
  [[nodiscard]] const std::vector<GroupState>& groups() const noexcept { return groups_; }
  [[nodiscard]] const std::vector<IncidentRule>& rules() const noexcept { return rules_; }

 private:
  void discover(Symbol symbol);

  Engine* engine_;
  SymbolTable* table_;
  std::vector<IncidentRule> rules_;
  Populations populations_;
  std::vector<GroupState> groups_;
  std::map<std::uint32_t, std::size_t> by_handle_;
  std::vector<bool> seen_symbol_;
};

}  // namespace epicount
