#include "epicount/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

namespace epicount::oracle {
namespace {

constexpr Tick kUnbounded = std::numeric_limits<Tick>::max();

void check_sequence(std::span<const Event> events, const Limits& limits) {
  if (events.size() > limits.max_events) {
    throw LimitExceeded("sequence of " + std::to_string(events.size()) +
                        " events exceeds oracle limit " + std::to_string(limits.max_events));
  }
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].timestamp < events[i - 1].timestamp) {
      throw std::invalid_argument("oracle input is not time ordered");
    }
    for (std::size_t j = i; j-- > 0 && events[j].timestamp == events[i].timestamp;) {
      if (events[j].symbol == events[i].symbol) {
        throw std::invalid_argument("duplicate event instance in oracle input");
      }
    }
  }
}

class Enumerator {
 public:
  Enumerator(std::span<const Event> events, std::span<const Symbol> symbols, Tick tau,
             const Limits& limits)
      : events_(events), symbols_(symbols), tau_(tau), limits_(limits), chain_(symbols.size()) {}

  std::vector<Occurrence> run() {
    descend(0, 0);
    return std::move(found_);
  }

 private:
  void descend(std::size_t position, std::size_t from) {
    if (position == symbols_.size()) {
      if (found_.size() == limits_.max_occurrences) {
        throw LimitExceeded("more than " + std::to_string(limits_.max_occurrences) + " occurrences");
      }
      found_.push_back(Occurrence{chain_});
      return;
    }
    for (std::size_t i = from; i < events_.size(); ++i) {
      const Event& e = events_[i];
      if (position > 0) {
        if (e.timestamp <= chain_[position - 1]) continue;
        if (tau_ != kUnbounded && e.timestamp - chain_[0] > tau_) break;
      }
      if (e.symbol != symbols_[position]) continue;
      chain_[position] = e.timestamp;
      descend(position + 1, i + 1);
    }
  }

  std::span<const Event> events_;
  std::span<const Symbol> symbols_;
  Tick tau_;
  const Limits& limits_;
  std::vector<Tick> chain_;
  std::vector<Occurrence> found_;
};

}  // namespace

std::vector<Occurrence> enumerate_occurrences(std::span<const Event> events,
                                              const TimeConstrainedEpisode& episode,
                                              const Limits& limits) {
  check_sequence(events, limits);
  return Enumerator(events, episode.symbols(), episode.tau(), limits).run();
}

std::vector<Occurrence> minimal_occurrences(std::span<const Event> events,
                                            std::span<const Symbol> symbols,
                                            const Limits& limits) {
  check_sequence(events, limits);
  const auto all = Enumerator(events, symbols, kUnbounded, limits).run();
  std::vector<Occurrence> out;
  for (const auto& o : all) {
    const bool nested = std::any_of(all.begin(), all.end(), [&](const Occurrence& p) {
      const bool same_window = p.start() == o.start() && p.end() == o.end();
      return !same_window && p.start() >= o.start() && p.end() <= o.end();
    });
    if (!nested) out.push_back(o);
  }
  return out;
}

std::vector<Occurrence> latest_start_occurrences(std::span<const Event> events,
                                                 std::span<const Symbol> symbols,
                                                 const Limits& limits) {
  check_sequence(events, limits);
  std::map<Tick, Occurrence> best;
  for (auto& o : Enumerator(events, symbols, kUnbounded, limits).run()) {
    auto it = best.find(o.end());
    if (it == best.end()) {
      best.emplace(o.end(), std::move(o));
      continue;
    }
    // Per end timestamp the componentwise maximum exists; keep the running max.
    for (std::size_t i = 0; i < o.length(); ++i) {
      it->second.timestamps[i] = std::max(it->second.timestamps[i], o.timestamps[i]);
    }
  }
  std::vector<Occurrence> out;
  for (auto& [end, o] : best) out.push_back(std::move(o));
  return out;
}

std::size_t max_nonoverlapped(std::span<const Event> events, const TimeConstrainedEpisode& episode,
                              const Limits& limits) {
  auto occurrences = enumerate_occurrences(events, episode, limits);
  std::stable_sort(occurrences.begin(), occurrences.end(),
                   [](const Occurrence& a, const Occurrence& b) { return a.end() < b.end(); });
  std::size_t count = 0;
  Tick last_end = std::numeric_limits<Tick>::min();
  for (const auto& o : occurrences) {
    if (count == 0 || o.start() > last_end) {
      ++count;
      last_end = o.end();
    }
  }
  return count;
}

namespace {

struct PackingSearch {
  const std::vector<std::vector<bool>>& compatible;
  std::vector<std::size_t> chosen;
  std::size_t best = 0;

  void run(std::size_t next) {
    const std::size_t n = compatible.size();
    best = std::max(best, chosen.size());
    if (chosen.size() + (n - next) <= best) return;
    for (std::size_t i = next; i < n; ++i) {
      const bool fits = std::all_of(chosen.begin(), chosen.end(),
                                    [&](std::size_t c) { return compatible[c][i]; });
      if (!fits) continue;
      chosen.push_back(i);
      run(i + 1);
      chosen.pop_back();
      if (chosen.size() + (n - i - 1) <= best) return;
    }
  }
};

}  // namespace

std::size_t max_distinct(std::span<const Event> events, const TimeConstrainedEpisode& episode,
                         const Limits& limits) {
  const auto occurrences = enumerate_occurrences(events, episode, limits);
  if (occurrences.size() > limits.max_distinct_candidates) {
    throw LimitExceeded(std::to_string(occurrences.size()) +
                        " candidate occurrences exceed the exhaustive distinct limit " +
                        std::to_string(limits.max_distinct_candidates));
  }
  const std::size_t n = occurrences.size();
  std::vector<std::vector<bool>> compatible(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      compatible[i][j] = i != j && are_distinct(episode, occurrences[i], occurrences[j]);
    }
  }
  PackingSearch search{compatible, {}, 0};
  search.run(0);
  return search.best;
}

namespace {

// Depth-first search over unconsumed events; the first complete tuple met is
// the lexicographically smallest one.
bool earliest_free(std::span<const Event> events, const TimeConstrainedEpisode& episode,
                   const std::vector<bool>& consumed, std::size_t position, std::size_t from,
                   std::vector<std::size_t>& picked) {
  if (position == episode.length()) return true;
  for (std::size_t i = from; i < events.size(); ++i) {
    if (consumed[i]) continue;
    const Event& e = events[i];
    if (position > 0) {
      const Event& prev = events[picked[position - 1]];
      if (e.timestamp <= prev.timestamp) continue;
      if (e.timestamp - events[picked[0]].timestamp > episode.tau()) break;
    }
    if (e.symbol != episode.at(position)) continue;
    picked[position] = i;
    if (earliest_free(events, episode, consumed, position + 1, i + 1, picked)) return true;
  }
  return false;
}

}  // namespace

std::vector<Occurrence> greedy_distinct_occurrences(std::span<const Event> events,
                                                    const TimeConstrainedEpisode& episode,
                                                    const Limits& limits) {
  check_sequence(events, limits);
  std::vector<bool> consumed(events.size(), false);
  std::vector<std::size_t> picked(episode.length());
  std::vector<Occurrence> out;
  while (earliest_free(events, episode, consumed, 0, 0, picked)) {
    Occurrence o;
    for (std::size_t idx : picked) {
      consumed[idx] = true;
      o.timestamps.push_back(events[idx].timestamp);
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::size_t greedy_distinct(std::span<const Event> events, const TimeConstrainedEpisode& episode,
                            const Limits& limits) {
  return greedy_distinct_occurrences(events, episode, limits).size();
}

}  // namespace epicount::oracle
