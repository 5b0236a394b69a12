#include "epicount/occmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace epicount {

// ---------------------------------------------------------------------------
// TimestampList

void TimestampList::pop_front() noexcept {
  ++head_;
  if (head_ == buf_.size()) {
    clear();
  } else if (head_ >= 64 && head_ * 2 >= buf_.size()) {
    compact();
  }
}

void TimestampList::compact() {
  buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(head_));
  head_ = 0;
}

void TimestampList::drop_through(Tick t) {
  auto v = view();
  const auto n = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t) - v.begin());
  head_ += n;
  if (head_ == buf_.size()) {
    clear();
  } else if (head_ >= 64 && head_ * 2 >= buf_.size()) {
    compact();
  }
}

void TimestampList::erase_value(Tick t) {
  auto first = buf_.begin() + static_cast<std::ptrdiff_t>(head_);
  auto it = std::lower_bound(first, buf_.end(), t);
  if (it != buf_.end() && *it == t) {
    if (it == first) {
      pop_front();
    } else {
      buf_.erase(it);
    }
  }
}

std::optional<Tick> TimestampList::last_below(Tick t) const {
  auto v = view();
  // The answer usually sits at the tail, so probe there before bisecting.
  if (!v.empty() && v.back() < t) return v.back();
  auto it = std::lower_bound(v.begin(), v.end(), t);
  if (it == v.begin()) return std::nullopt;
  return *(it - 1);
}

std::optional<Tick> TimestampList::first_above(Tick t) const {
  auto v = view();
  auto it = std::upper_bound(v.begin(), v.end(), t);
  if (it == v.end()) return std::nullopt;
  return *it;
}

std::optional<Tick> TimestampList::first_at_least(Tick t) const {
  auto v = view();
  auto it = std::lower_bound(v.begin(), v.end(), t);
  if (it == v.end()) return std::nullopt;
  return *it;
}

// ---------------------------------------------------------------------------
// OccMap

OccMap::OccMap(TimeConstrainedEpisode episode, FrequencyKind mode)
    : episode_(std::move(episode)), mode_(mode), layers_(episode_.length()) {
  for (std::size_t i = episode_.length(); i-- > 0;) {
    const Symbol s = episode_.at(i);
    auto it = std::find_if(positions_.begin(), positions_.end(),
                           [s](const Positions& p) { return p.symbol == s; });
    if (it == positions_.end()) {
      positions_.push_back(Positions{s, {}});
      it = positions_.end() - 1;
    }
    it->descending.push_back(static_cast<std::uint32_t>(i));
  }
}

OccMap OccMap::from_layers(TimeConstrainedEpisode episode, FrequencyKind mode,
                           const std::vector<std::vector<Tick>>& layers) {
  OccMap map(std::move(episode), mode);
  if (layers.size() != map.layers_.size()) {
    throw std::invalid_argument("layer count does not match episode length");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    for (std::size_t j = 0; j < layers[i].size(); ++j) {
      if (j > 0 && layers[i][j] <= layers[i][j - 1]) {
        throw std::invalid_argument("layer " + std::to_string(i + 1) + " is not strictly ascending");
      }
      map.layers_[i].push_back(layers[i][j]);
      map.clock_ = std::max(map.clock_.value_or(layers[i][j]), layers[i][j]);
    }
  }
  map.recompute_active_layer();
  map.peak_entries_ = map.total_entries();
  return map;
}

const std::vector<std::uint32_t>* OccMap::positions_of(Symbol symbol) const noexcept {
  for (const auto& p : positions_) {
    if (p.symbol == symbol) return &p.descending;
  }
  return nullptr;
}

bool OccMap::list_update(const Event& event) {
  const Tick t = event.timestamp;
  if (clock_ && t < *clock_) {
    throw StreamOrderError(*clock_, t);
  }
  clock_ = t;

  const auto* positions = positions_of(event.symbol);
  if (positions == nullptr) {
    return !layers_.back().empty();
  }
  if (accepted_end_ && t <= *accepted_end_) {
    return !layers_.back().empty();
  }

  const Tick tau = episode_.tau();
  bool trimmed = false;
  // Bottom-up so each layer sees its predecessor as it was before this event.
  for (const std::uint32_t j : *positions) {
    if (j > 0) {
      const auto& above = layers_[j - 1];
      if (above.empty() || above.front() >= t) continue;
    }
    auto& list = layers_[j];
    if (!list.empty() && list.back() == t) continue;
    list.push_back(t);
    ++matches_;
    while (t - list.front() > tau) {
      list.pop_front();
      trimmed = true;
    }
  }
  if (trimmed) {
    repair_monotonicity();
  }
  recompute_active_layer();
  peak_entries_ = std::max(peak_entries_, total_entries());
  return !layers_.back().empty();
}

void OccMap::repair_monotonicity() {
  if (mode_ != FrequencyKind::NonOverlapped) return;
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    auto& above = layers_[i - 1];
    auto& list = layers_[i];
    if (above.empty()) {
      list.clear();
      continue;
    }
    while (!list.empty() && list.front() <= above.front()) {
      list.pop_front();
    }
  }
  recompute_active_layer();
}

ValidationResult OccMap::validate_eliminate() {
  if (mode_ != FrequencyKind::NonOverlapped) {
    throw std::logic_error("validate_eliminate requires NonOverlapped mode");
  }
  if (layers_.back().empty()) {
    throw std::logic_error("validate_eliminate called with an empty bottom layer");
  }
  const std::size_t k = layers_.size();
  std::vector<Tick> chain(k);
  chain[k - 1] = layers_[k - 1].front();
  for (std::size_t i = k - 1; i-- > 0;) {
    const auto found = layers_[i].last_below(chain[i + 1]);
    if (!found) {
      // Unreachable while minimum monotonicity holds.
      throw std::logic_error("occurrence map lost minimum monotonicity at layer " +
                             std::to_string(i + 1));
    }
    chain[i] = *found;
  }

  if (chain[k - 1] - chain[0] <= episode_.tau()) {
    clear_layers();
    accepted_end_ = chain[k - 1];
    return ValidationResult{true, Occurrence{std::move(chain)}};
  }

  for (std::size_t i = 0; i < k; ++i) {
    layers_[i].drop_through(chain[i]);
  }
  repair_monotonicity();
  return ValidationResult{false, std::nullopt};
}

ValidationResult OccMap::validate_eliminate_plus() {
  if (mode_ != FrequencyKind::Distinct) {
    throw std::logic_error("validate_eliminate_plus requires Distinct mode");
  }
  if (layers_.back().empty()) {
    throw std::logic_error("validate_eliminate_plus called with an empty bottom layer");
  }
  const std::size_t k = layers_.size();
  const Tick end = layers_[k - 1].front();
  const Tick horizon = end - episode_.tau();

  std::vector<Tick> chain(k);
  bool complete = false;
  if (k == 1) {
    chain[0] = end;
    complete = true;
  } else if (const auto first = layers_[0].first_at_least(horizon)) {
    chain[0] = *first;
    complete = true;
    for (std::size_t i = 1; i < k && complete; ++i) {
      const auto next = layers_[i].first_above(chain[i - 1]);
      if (next) {
        chain[i] = *next;
      } else {
        complete = false;
      }
    }
  }

  if (!complete) {
    // No occurrence ends at the bottom entry. Only the bottom entry and the
    // first-layer entries outside the window are useless from here on.
    layers_[k - 1].clear();
    while (!layers_[0].empty() && layers_[0].front() < horizon) {
      layers_[0].pop_front();
    }
    cascade_empty_prefix();
    return ValidationResult{false, std::nullopt};
  }

  for (std::size_t i = 0; i < k; ++i) {
    layers_[i].drop_through(chain[i]);
    for (std::size_t y = i + 1; y < k; ++y) {
      if (episode_.at(y) == episode_.at(i)) {
        layers_[i].erase_value(chain[y]);
      }
    }
  }
  cascade_empty_prefix();
  return ValidationResult{true, Occurrence{std::move(chain)}};
}

ValidationResult OccMap::validate() {
  return mode_ == FrequencyKind::NonOverlapped ? validate_eliminate() : validate_eliminate_plus();
}

std::size_t OccMap::total_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

std::string OccMap::snapshot(const SymbolTable& table) const {
  std::string out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    out += 'L';
    out += std::to_string(i + 1);
    out += '(';
    out += table.name(episode_.at(i));
    out += "):";
    for (Tick t : layers_[i].view()) {
      out += ' ';
      out += std::to_string(t);
    }
    out += '\n';
  }
  out += "ell=";
  out += std::to_string(active_layer_);
  out += '\n';
  return out;
}

void OccMap::reset() {
  clear_layers();
  clock_.reset();
  accepted_end_.reset();
  matches_ = 0;
  peak_entries_ = 0;
}

void OccMap::recompute_active_layer() noexcept {
  std::size_t i = 0;
  while (i < layers_.size() && !layers_[i].empty()) ++i;
  active_layer_ = i + 1;
}

void OccMap::cascade_empty_prefix() noexcept {
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    if (layers_[i - 1].empty()) layers_[i].clear();
  }
  recompute_active_layer();
}

void OccMap::clear_layers() noexcept {
  for (auto& l : layers_) l.clear();
  active_layer_ = 1;
}

}  // namespace epicount
