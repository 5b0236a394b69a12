#include "epicount/episode.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "text_util.hpp"

namespace epicount {

EventBatch::EventBatch(Tick timestamp, std::vector<Symbol> symbols) : timestamp_(timestamp) {
  if (symbols.empty()) {
    throw std::invalid_argument("event batch must contain at least one symbol");
  }
  if (timestamp < 0) {
    throw std::invalid_argument("timestamp must be non-negative");
  }
  symbols_.reserve(symbols.size());
  for (Symbol s : symbols) {
    if (std::find(symbols_.begin(), symbols_.end(), s) == symbols_.end()) {
      symbols_.push_back(s);
    }
  }
}

StreamOrderError::StreamOrderError(Tick prev, Tick off)
    : std::runtime_error("timestamp " + std::to_string(off) + " arrives after " +
                         std::to_string(prev)),
      previous(prev),
      offending(off) {}

std::vector<Event> flatten(const std::vector<EventBatch>& batches) {
  std::vector<Event> out;
  for (const auto& batch : batches) {
    for (Symbol s : batch.symbols()) {
      out.push_back(Event{s, batch.timestamp()});
    }
  }
  return out;
}

std::string_view to_string(FrequencyKind kind) {
  return kind == FrequencyKind::NonOverlapped ? "nonoverlapped" : "distinct";
}

FrequencyKind parse_frequency_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "nonoverlapped" || lower == "non-overlapped") return FrequencyKind::NonOverlapped;
  if (lower == "distinct") return FrequencyKind::Distinct;
  throw std::invalid_argument("unknown frequency mode '" + std::string(text) + "'");
}

TimeConstrainedEpisode::TimeConstrainedEpisode(std::vector<Symbol> symbols, Tick tau)
    : symbols_(std::move(symbols)), tau_(tau) {
  if (symbols_.empty()) {
    throw std::invalid_argument("episode must have at least one symbol");
  }
  if (tau_ <= 0) {
    throw std::invalid_argument("episode time constraint must be positive");
  }
}

TimeConstrainedEpisode parse_episode(std::string_view text, SymbolTable& table) {
  const auto at = text.rfind('@');
  if (at == std::string_view::npos) {
    throw std::invalid_argument("episode '" + std::string(text) + "' lacks an @tau=<ticks> suffix");
  }
  const auto suffix = detail::trim(text.substr(at + 1));
  constexpr std::string_view key = "tau=";
  if (!suffix.starts_with(key)) {
    throw std::invalid_argument("episode suffix must be tau=<ticks>, got '" + std::string(suffix) + "'");
  }
  const auto tau = detail::parse_int<Tick>(suffix.substr(key.size()));
  if (!tau) {
    throw std::invalid_argument("bad tau value in '" + std::string(text) + "'");
  }
  std::vector<Symbol> symbols;
  for (auto name : detail::split(text.substr(0, at), ',')) {
    name = detail::trim(name);
    if (name.empty()) {
      throw std::invalid_argument("empty symbol in episode '" + std::string(text) + "'");
    }
    symbols.push_back(table.intern(name));
  }
  return TimeConstrainedEpisode(std::move(symbols), *tau);
}

std::string format_episode(const TimeConstrainedEpisode& episode, const SymbolTable& table) {
  std::string out;
  for (std::size_t i = 0; i < episode.length(); ++i) {
    if (i) out += ',';
    out += table.name(episode.at(i));
  }
  out += "@tau=";
  out += std::to_string(episode.tau());
  return out;
}

}  // namespace epicount
