#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epicount/engine.hpp"
#include "epicount/event.hpp"
#include "epicount/symbol.hpp"

namespace epicount {

/// Malformed input; `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line;
};

/// Timestamp regression inside a stream source; `record` is 1-based.
class StreamError : public std::runtime_error {
 public:
  StreamError(std::size_t record, std::size_t line, const std::string& what);
  std::size_t record;
  std::size_t line;
};

/// `<timestamp>,<symbol>` yields an Event, `<timestamp>,<a>|<b>|...` an
/// EventBatch. Throws ParseError (with `line_number`) on malformed input.
std::variant<Event, EventBatch> parse_event_line(std::string_view line, SymbolTable& table,
                                                 std::size_t line_number = 0);

/// Pull-based reader over the line format. Blank lines and `#` comments are
/// skipped. Holds one line at a time, so memory does not grow with the
/// stream.
class StreamReader {
 public:
  /// Reads from `in`, which must outlive the reader.
  StreamReader(std::istream& in, SymbolTable& table);
  /// Opens a file; "-" means standard input. Throws std::runtime_error if the
  /// file cannot be opened.
  static StreamReader open(const std::string& path, SymbolTable& table);
  /// Reads from an in-memory copy of `text`.
  static StreamReader from_string(std::string text, SymbolTable& table);

  StreamReader(StreamReader&&) noexcept;
  StreamReader& operator=(StreamReader&&) noexcept;
  ~StreamReader();

  /// Next record as a batch (single events are batches of one). Throws
  /// ParseError or StreamError; returns nullopt at end of input.
  std::optional<EventBatch> next();

  [[nodiscard]] std::size_t records_read() const noexcept { return records_; }

 private:
  std::unique_ptr<std::istream> owned_;
  std::istream* in_;
  SymbolTable* table_;
  std::string line_;
  std::size_t line_number_ = 0;
  std::size_t records_ = 0;
  std::optional<Tick> clock_;
};

/// Writes events in the line format, one event per line.
void write_events(std::ostream& out, const std::vector<Event>& events, const SymbolTable& table);
/// Writes batches; multi-symbol batches use the `a|b` form.
void write_batches(std::ostream& out, const std::vector<EventBatch>& batches,
                   const SymbolTable& table);

struct GeneratorSpec {
  std::size_t alphabet_size = 1;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  Tick tick_interval = 1;
};

/// Symbol name used for alphabet member `index` by the generator.
std::string generated_symbol_name(std::size_t index);

/// n events with i.i.d. uniform symbols named by generated_symbol_name and
/// timestamps 0, interval, 2*interval, ... Same spec, same output.
std::vector<Event> generate_uniform(const GeneratorSpec& spec, SymbolTable& table);

/// matches / events as an exact ratio.
struct Selectivity {
  std::uint64_t matches = 0;
  std::uint64_t events = 0;
  [[nodiscard]] double value() const noexcept {
    return static_cast<double>(matches) / static_cast<double>(events);
  }
};

/// Throws std::domain_error when no events were processed.
Selectivity measure_selectivity(const EngineMetrics& metrics);

}  // namespace epicount
