#include "epicount/rules.hpp"

#include <algorithm>
#include <sstream>

#include "epicount/streamio.hpp"
#include "text_util.hpp"

namespace epicount {
namespace {

constexpr std::string_view kSeparators = "@,|";

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

Tick parse_tau(std::string_view text, const RuleFileOptions& options, std::size_t line) {
  Tick scale = 1;
  if (text.ends_with('m')) {
    scale = options.ticks_per_minute;
    text.remove_suffix(1);
  } else if (text.ends_with('h')) {
    scale = options.ticks_per_minute * 60;
    text.remove_suffix(1);
  }
  const auto n = detail::parse_int<Tick>(text);
  if (!n || *n <= 0) throw ParseError(line, "tau must be a positive integer with optional m/h unit");
  return *n * scale;
}

// "12.5" -> 125/10
std::pair<std::uint64_t, std::uint64_t> parse_decimal(std::string_view text, std::size_t line) {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_dot = false;
  bool any_digit = false;
  for (char c : text) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + static_cast<std::uint64_t>(c - '0');
      if (seen_dot) den *= 10;
      any_digit = true;
    } else {
      throw ParseError(line, "malformed percentage '" + std::string(text) + "'");
    }
  }
  if (!any_digit) throw ParseError(line, "malformed percentage '" + std::string(text) + "'");
  return {num, den};
}

}  // namespace

std::uint64_t Threshold::resolve(std::optional<std::uint64_t> population_size) const {
  if (kind == Kind::Absolute) return count;
  if (!population_size) {
    throw std::invalid_argument("percentage threshold needs a population size");
  }
  // ceil(numerator / denominator / 100 * population)
  const std::uint64_t scaled_den = denominator * 100;
  const std::uint64_t product = numerator * *population_size;
  return std::max<std::uint64_t>(1, (product + scaled_den - 1) / scaled_den);
}

std::string format_alert(const Alert& alert) {
  return "ALERT " + alert.rule + " " + alert.group + " count=" + std::to_string(alert.count) +
         " t=" + std::to_string(alert.timestamp);
}

std::vector<IncidentRule> load_rules(std::string_view text, const RuleFileOptions& options) {
  std::vector<IncidentRule> rules;
  std::size_t line_no = 0;
  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.starts_with('#')) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected '<name>: ...'");
    IncidentRule rule;
    rule.name = std::string(detail::trim(line.substr(0, colon)));
    if (rule.name.empty() || rule.name.find_first_of(" \t") != std::string::npos) {
      throw ParseError(line_no, "rule name must be a single non-empty word");
    }
    const auto rest = line.substr(colon + 1);
    const auto at = rest.find("@tau=");
    if (at == std::string_view::npos) throw ParseError(line_no, "missing @tau=");
    for (auto sym : detail::split(rest.substr(0, at), ',')) {
      sym = detail::trim(sym);
      if (sym.empty() || sym.find_first_of(kSeparators) != std::string_view::npos) {
        throw ParseError(line_no, "bad alarm symbol list");
      }
      rule.alarm_symbols.emplace_back(sym);
    }

    const auto words = tokens(rest.substr(at + 5));
    if (words.empty()) throw ParseError(line_no, "missing tau value");
    rule.tau = parse_tau(words[0], options, line_no);

    bool have_threshold = false;
    bool have_group = false;
    for (std::size_t i = 1; i < words.size(); ++i) {
      const auto w = words[i];
      if (w.starts_with("threshold=")) {
        auto value = w.substr(10);
        if (value.ends_with('%')) {
          value.remove_suffix(1);
          rule.threshold.kind = Threshold::Kind::Percentage;
          std::tie(rule.threshold.numerator, rule.threshold.denominator) = parse_decimal(value, line_no);
          if (rule.threshold.numerator == 0) throw ParseError(line_no, "threshold must be positive");
        } else {
          const auto n = detail::parse_int<std::uint64_t>(value);
          if (!n || *n == 0) throw ParseError(line_no, "threshold must be a positive count or percentage");
          rule.threshold.count = *n;
        }
        have_threshold = true;
      } else if (w == "of") {
        if (++i >= words.size()) throw ParseError(line_no, "'of' needs a population name");
        rule.threshold.population = std::string(words[i]);
      } else if (w.starts_with("mode=")) {
        try {
          rule.mode = parse_frequency_kind(w.substr(5));
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, e.what());
        }
      } else if (w == "by") {
        if (++i >= words.size()) throw ParseError(line_no, "'by' needs a group key");
        rule.group_key = std::string(words[i]);
        have_group = true;
      } else {
        throw ParseError(line_no, "unexpected token '" + std::string(w) + "'");
      }
    }
    if (!have_threshold) throw ParseError(line_no, "missing threshold=");
    if (!have_group) throw ParseError(line_no, "missing 'by <group_key>'");
    if (rule.threshold.kind == Threshold::Kind::Percentage && rule.threshold.population.empty()) {
      throw ParseError(line_no, "percentage threshold requires 'of <population>'");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

Populations load_populations(std::string_view text) {
  Populations out;
  std::size_t line_no = 0;
  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    const auto parts = detail::split(line, ',');
    if (parts.size() != 3) throw ParseError(line_no, "expected <population>,<group>,<size>");
    const auto size = detail::parse_int<std::uint64_t>(parts[2]);
    if (!size) throw ParseError(line_no, "bad population size");
    out[std::string(detail::trim(parts[0]))][std::string(detail::trim(parts[1]))] = *size;
  }
  return out;
}

Symbol compose_symbol(SymbolTable& table, std::string_view base, std::string_view group_value) {
  if (base.empty() || group_value.empty()) {
    throw std::invalid_argument("composite symbol parts must be non-empty");
  }
  if (base.find_first_of(kSeparators) != std::string_view::npos ||
      group_value.find_first_of(kSeparators) != std::string_view::npos) {
    throw std::invalid_argument("composite symbol parts must not contain '@', ',' or '|'");
  }
  std::string name;
  name.reserve(base.size() + 1 + group_value.size());
  name.append(base).append("@").append(group_value);
  return table.intern(name);
}

std::vector<CounterHandle> bind_rule(Engine& engine, SymbolTable& table, const IncidentRule& rule,
                                     const std::vector<std::string>& group_values) {
  std::vector<CounterHandle> handles;
  handles.reserve(group_values.size());
  for (const auto& group : group_values) {
    std::vector<Symbol> symbols;
    for (const auto& base : rule.alarm_symbols) symbols.push_back(compose_symbol(table, base, group));
    handles.push_back(engine.add_counter(TimeConstrainedEpisode(std::move(symbols), rule.tau), rule.mode));
  }
  return handles;
}

RuleMonitor::RuleMonitor(Engine& engine, SymbolTable& table, std::vector<IncidentRule> rules,
                         Populations populations)
    : engine_(&engine), table_(&table), rules_(std::move(rules)), populations_(std::move(populations)) {
  for (const auto& rule : rules_) {
    if (rule.threshold.kind == Threshold::Kind::Percentage &&
        populations_.find(rule.threshold.population) == populations_.end()) {
      throw std::invalid_argument("rule '" + rule.name + "' refers to undeclared population '" +
                                  rule.threshold.population + "'");
    }
  }
}

std::vector<CounterHandle> RuleMonitor::bind(std::size_t rule_index, const std::vector<std::string>& groups) {
  const IncidentRule& rule = rules_.at(rule_index);
  std::vector<std::string> fresh;
  std::vector<std::uint64_t> thresholds;
  for (const auto& g : groups) {
    const bool bound = std::any_of(groups_.begin(), groups_.end(), [&](const GroupState& s) {
      return s.rule_index == rule_index && s.group == g;
    });
    if (bound || std::find(fresh.begin(), fresh.end(), g) != fresh.end()) continue;
    std::optional<std::uint64_t> population;
    if (rule.threshold.kind == Threshold::Kind::Percentage) {
      const auto& sizes = populations_.at(rule.threshold.population);
      auto it = sizes.find(g);
      if (it == sizes.end()) {
        throw std::invalid_argument("no '" + rule.threshold.population + "' population for group '" + g + "'");
      }
      population = it->second;
    }
    thresholds.push_back(rule.threshold.resolve(population));
    fresh.push_back(g);
  }
  auto handles = bind_rule(*engine_, *table_, rule, fresh);
  for (std::size_t i = 0; i < handles.size(); ++i) {
    by_handle_[handles[i].id] = groups_.size();
    groups_.push_back(GroupState{rule_index, fresh[i], handles[i], thresholds[i]});
  }
  return handles;
}

void RuleMonitor::bind_declared_groups() {
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& rule = rules_[r];
    if (rule.threshold.kind != Threshold::Kind::Percentage) continue;
    std::vector<std::string> groups;
    for (const auto& [g, size] : populations_.at(rule.threshold.population)) groups.push_back(g);
    bind(r, groups);
  }
}

std::optional<Alert> RuleMonitor::on_count(CounterHandle handle, std::uint64_t new_count, Tick timestamp) {
  auto it = by_handle_.find(handle.id);
  if (it == by_handle_.end()) return std::nullopt;
  GroupState& state = groups_[it->second];
  if (state.latched || new_count < state.threshold) return std::nullopt;
  state.latched = true;
  return Alert{rules_[state.rule_index].name, state.group, new_count, timestamp};
}

void RuleMonitor::discover(Symbol symbol) {
  if (symbol.id < seen_symbol_.size() && seen_symbol_[symbol.id]) return;
  if (symbol.id >= seen_symbol_.size()) seen_symbol_.resize(symbol.id + 1, false);
  seen_symbol_[symbol.id] = true;

  const std::string& name = table_->name(symbol);
  const auto at = name.rfind('@');
  if (at == std::string::npos || at == 0 || at + 1 == name.size()) return;
  const std::string_view base(name.data(), at);
  const std::string group = name.substr(at + 1);
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& rule = rules_[r];
    if (std::find(rule.alarm_symbols.begin(), rule.alarm_symbols.end(), base) == rule.alarm_symbols.end()) {
      continue;
    }
    if (rule.threshold.kind == Threshold::Kind::Percentage) {
      const auto& sizes = populations_.at(rule.threshold.population);
      if (sizes.find(group) == sizes.end()) continue;  // no population, cannot resolve a threshold
    }
    bind(r, {group});
  }
}

std::vector<Alert> RuleMonitor::process(const EventBatch& batch) {
  for (Symbol s : batch.symbols()) discover(s);
  std::vector<Alert> alerts;
  std::vector<Emission> emissions;
  for (Symbol s : batch.symbols()) {
    emissions.clear();
    engine_->process_event(Event{s, batch.timestamp()}, emissions);
    for (const auto& e : emissions) {
      if (auto alert = on_count(e.handle, engine_->frequency(e.handle), batch.timestamp())) {
        alerts.push_back(std::move(*alert));
      }
    }
  }
  return alerts;
}

void RuleMonitor::reset(std::string_view rule, std::string_view group) {
  for (auto& state : groups_) {
    if (rules_[state.rule_index].name == rule && state.group == group) {
      state.latched = false;
      engine_->reset(state.handle);
      return;
    }
  }
  throw std::invalid_argument("no bound group '" + std::string(group) + "' for rule '" + std::string(rule) + "'");
}

}  // namespace epicount
