#include "epicount/symbol.hpp"

#include <stdexcept>

namespace epicount {

Symbol SymbolTable::intern(std::string_view name) {
  if (name.empty()) {
    throw std::invalid_argument("symbol name must not be empty");
  }
  {
    std::shared_lock lock(mutex_);
    if (auto it = ids_.find(name); it != ids_.end()) {
      return Symbol{it->second};
    }
  }
  std::unique_lock lock(mutex_);
  if (auto it = ids_.find(name); it != ids_.end()) {
    return Symbol{it->second};
  }
  const auto id = static_cast<std::uint32_t>(names_.size());
  const std::string& stored = names_.emplace_back(name);
  ids_.emplace(std::string_view(stored), id);
  return Symbol{id};
}

bool SymbolTable::contains(std::string_view name) const {
  std::shared_lock lock(mutex_);
  return ids_.find(name) != ids_.end();
}

Symbol SymbolTable::at(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = ids_.find(name);
  if (it == ids_.end()) {
    throw std::out_of_range("unknown symbol '" + std::string(name) + "'");
  }
  return Symbol{it->second};
}

const std::string& SymbolTable::name(Symbol symbol) const {
  std::shared_lock lock(mutex_);
  if (symbol.id >= names_.size()) {
    throw std::out_of_range("symbol id " + std::to_string(symbol.id) + " not interned");
  }
  return names_[symbol.id];
}

std::size_t SymbolTable::size() const {
  std::shared_lock lock(mutex_);
  return names_.size();
}

}  // namespace epicount
