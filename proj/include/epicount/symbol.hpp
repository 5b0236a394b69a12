#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace epicount {

/// Handle for one member of the event alphabet. Ids are dense and assigned
/// in interning order, so they can index per-symbol tables directly.
struct Symbol {
  std::uint32_t id = 0;

  friend constexpr bool operator==(Symbol, Symbol) = default;
  friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

/// Bijective name <-> Symbol map. Interning is serialized internally so a
/// single table can be shared between reader threads and a stream parser.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(const SymbolTable&) = delete;
  SymbolTable& operator=(const SymbolTable&) = delete;

  /// Returns the existing handle for `name` or assigns the next free id.
  /// Throws std::invalid_argument on an empty name.
  Symbol intern(std::string_view name);

  /// Lookup without inserting.
  [[nodiscard]] bool contains(std::string_view name) const;
  [[nodiscard]] Symbol at(std::string_view name) const;

  [[nodiscard]] const std::string& name(Symbol symbol) const;
  [[nodiscard]] std::size_t size() const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  mutable std::shared_mutex mutex_;
  // deque keeps element addresses stable so map keys can view into it
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, std::uint32_t, Hash, std::equal_to<>> ids_;
};

}  // namespace epicount

template <>
struct std::hash<epicount::Symbol> {
  std::size_t operator()(epicount::Symbol s) const noexcept { return s.id; }
};
