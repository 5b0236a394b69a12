#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "epicount/episode.hpp"
#include "epicount/event.hpp"
#include "epicount/streamio.hpp"
#include "epicount/symbol.hpp"

namespace epicount::test {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(EPICOUNT_TEST_DATA_DIR) / name;
}

inline std::vector<EventBatch> read_batches(const std::string& path, SymbolTable& table) {
  auto reader = StreamReader::open(path, table);
  std::vector<EventBatch> out;
  while (auto b = reader.next()) out.push_back(std::move(*b));
  return out;
}

inline std::vector<EventBatch> data_batches(const std::string& name, SymbolTable& table) {
  return read_batches(data_path(name).string(), table);
}

inline std::vector<Event> data_events(const std::string& name, SymbolTable& table) {
  return flatten(data_batches(name, table));
}

/// Events from inline text in the stream line format.
inline std::vector<Event> events_of(const std::string& text, SymbolTable& table) {
  auto reader = StreamReader::from_string(text, table);
  std::vector<EventBatch> out;
  while (auto b = reader.next()) out.push_back(std::move(*b));
  return flatten(out);
}

inline std::string layers(const std::vector<std::vector<Tick>>& want_layers, std::size_t ell,
                          const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < want_layers.size(); ++i) {
    out += "L" + std::to_string(i + 1) + "(" + names[i] + "):";
    for (Tick t : want_layers[i]) out += " " + std::to_string(t);
    out += "\n";
  }
  out += "ell=" + std::to_string(ell) + "\n";
  return out;
}

}  // namespace epicount::test
