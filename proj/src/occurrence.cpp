#include "epicount/occurrence.hpp"

#include <algorithm>
#include <stdexcept>

namespace epicount {

std::string to_string(const Occurrence& occurrence) {
  std::string out = "<";
  for (std::size_t i = 0; i < occurrence.timestamps.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(occurrence.timestamps[i]);
  }
  out += '>';
  return out;
}

bool is_valid_occurrence(const TimeConstrainedEpisode& episode, std::span<const Event> events,
                         const Occurrence& occurrence) {
  const auto& ts = occurrence.timestamps;
  if (ts.size() != episode.length()) {
    throw std::invalid_argument("occurrence length " + std::to_string(ts.size()) +
                                " does not match episode length " +
                                std::to_string(episode.length()));
  }
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i] <= ts[i - 1]) return false;
  }
  if (ts.back() - ts.front() > episode.tau()) return false;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Event wanted{episode.at(i), ts[i]};
    if (std::find(events.begin(), events.end(), wanted) == events.end()) return false;
  }
  return true;
}

bool are_nonoverlapped(const Occurrence& a, const Occurrence& b) {
  return b.start() > a.end() || a.start() > b.end();
}

bool are_distinct(const TimeConstrainedEpisode& episode, const Occurrence& a, const Occurrence& b) {
  const std::size_t k = episode.length();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (episode.at(i) == episode.at(j) && a.timestamps[i] == b.timestamps[j]) return false;
    }
  }
  return true;
}

}  // namespace epicount
