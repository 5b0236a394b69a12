#include "epicount/streamio.hpp"

#include <iostream>
#include <random>
#include <sstream>

#include "text_util.hpp"

namespace epicount {

ParseError::ParseError(std::size_t l, const std::string& what)
    : std::runtime_error(l ? "line " + std::to_string(l) + ": " + what : what), line(l) {}

StreamError::StreamError(std::size_t rec, std::size_t l, const std::string& what)
    : std::runtime_error("record " + std::to_string(rec) + " (line " + std::to_string(l) + "): " + what),
      record(rec),
      line(l) {}

std::variant<Event, EventBatch> parse_event_line(std::string_view line, SymbolTable& table,
                                                 std::size_t line_number) {
  line = detail::trim(line);
  const auto comma = line.find(',');
  if (comma == std::string_view::npos) {
    throw ParseError(line_number, "expected <timestamp>,<symbol>");
  }
  const auto ts_text = detail::trim(line.substr(0, comma));
  if (ts_text.starts_with('-')) {
    throw ParseError(line_number, "negative timestamp '" + std::string(ts_text) + "'");
  }
  const auto ts = detail::parse_int<Tick>(ts_text);
  if (!ts) {
    throw ParseError(line_number, "malformed timestamp '" + std::string(ts_text) + "'");
  }
  std::vector<Symbol> symbols;
  for (auto name : detail::split(line.substr(comma + 1), '|')) {
    name = detail::trim(name);
    if (name.empty() || name.find(',') != std::string_view::npos) {
      throw ParseError(line_number, "malformed symbol list");
    }
    symbols.push_back(table.intern(name));
  }
  if (symbols.size() == 1) {
    return Event{symbols.front(), *ts};
  }
  return EventBatch(*ts, std::move(symbols));
}

StreamReader::StreamReader(std::istream& in, SymbolTable& table) : in_(&in), table_(&table) {}

StreamReader StreamReader::open(const std::string& path, SymbolTable& table) {
  if (path == "-") return StreamReader(std::cin, table);
  auto file = std::make_unique<std::ifstream>(path);
  if (!*file) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  StreamReader reader(*file, table);
  reader.owned_ = std::move(file);
  return reader;
}

StreamReader StreamReader::from_string(std::string text, SymbolTable& table) {
  auto stream = std::make_unique<std::istringstream>(std::move(text));
  StreamReader reader(*stream, table);
  reader.owned_ = std::move(stream);
  return reader;
}

StreamReader::StreamReader(StreamReader&&) noexcept = default;
StreamReader& StreamReader::operator=(StreamReader&&) noexcept = default;
StreamReader::~StreamReader() = default;

std::optional<EventBatch> StreamReader::next() {
  while (std::getline(*in_, line_)) {
    ++line_number_;
    const auto body = detail::trim(line_);
    if (body.empty() || body.starts_with('#')) continue;
    auto parsed = parse_event_line(body, *table_, line_number_);
    EventBatch batch = std::holds_alternative<Event>(parsed)
                           ? EventBatch(std::get<Event>(parsed).timestamp, {std::get<Event>(parsed).symbol})
                           : std::get<EventBatch>(std::move(parsed));
    ++records_;
    if (clock_ && batch.timestamp() < *clock_) {
      throw StreamError(records_, line_number_,
                        "timestamp " + std::to_string(batch.timestamp()) + " precedes " +
                            std::to_string(*clock_));
    }
    clock_ = batch.timestamp();
    return batch;
  }
  return std::nullopt;
}

void write_events(std::ostream& out, const std::vector<Event>& events, const SymbolTable& table) {
  for (const auto& e : events) {
    out << e.timestamp << ',' << table.name(e.symbol) << '\n';
  }
}

void write_batches(std::ostream& out, const std::vector<EventBatch>& batches,
                   const SymbolTable& table) {
  for (const auto& b : batches) {
    out << b.timestamp() << ',';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out << '|';
      out << table.name(b.symbols()[i]);
    }
    out << '\n';
  }
}

std::string generated_symbol_name(std::size_t index) { return "S" + std::to_string(index); }

std::vector<Event> generate_uniform(const GeneratorSpec& spec, SymbolTable& table) {
  if (spec.alphabet_size == 0) throw std::invalid_argument("alphabet_size must be at least 1");
  if (spec.tick_interval < 1) throw std::invalid_argument("tick_interval must be at least 1");
  std::vector<Symbol> alphabet;
  alphabet.reserve(spec.alphabet_size);
  for (std::size_t i = 0; i < spec.alphabet_size; ++i) {
    alphabet.push_back(table.intern(generated_symbol_name(i)));
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> pick(0, spec.alphabet_size - 1);
  std::vector<Event> events;
  events.reserve(spec.length);
  for (std::size_t i = 0; i < spec.length; ++i) {
    events.push_back(Event{alphabet[pick(rng)], static_cast<Tick>(i) * spec.tick_interval});
  }
  return events;
}

Selectivity measure_selectivity(const EngineMetrics& metrics) {
  if (metrics.events_processed == 0) {
    throw std::domain_error("selectivity is undefined before any event is processed");
  }
  return Selectivity{metrics.matches, metrics.events_processed};
}

}  // namespace epicount
