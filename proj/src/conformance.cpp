#include "epicount/conformance.hpp"

#include <chrono>
#include <sstream>

#include "epicount/engine.hpp"
#include "epicount/streamio.hpp"

namespace epicount {

Instance random_instance(std::mt19937_64& rng, const ConformanceConfig& cfg, SymbolTable& table) {
  std::vector<Symbol> alphabet;
  for (std::size_t i = 0; i < std::max<std::size_t>(cfg.sigma, 1); ++i) {
    alphabet.push_back(table.intern(std::string(1, static_cast<char>('A' + i % 26)) +
                                    (i >= 26 ? std::to_string(i / 26) : "")));
  }
  std::uniform_int_distribution<std::size_t> len_dist(0, cfg.max_length);
  std::uniform_int_distribution<std::size_t> k_dist(1, std::max<std::size_t>(cfg.max_k, 1));
  std::uniform_int_distribution<Tick> tau_dist(1, std::max<Tick>(cfg.max_tau, 1));
  std::uniform_int_distribution<std::size_t> sym_dist(0, alphabet.size() - 1);
  std::uniform_int_distribution<Tick> gap_dist(1, 3);
  std::bernoulli_distribution batch_dist(cfg.batch_probability);

  const std::size_t n = len_dist(rng);
  std::vector<EventBatch> records;
  Tick t = gap_dist(rng) - 1;
  std::size_t produced = 0;
  while (produced < n) {
    std::vector<Symbol> members{alphabet[sym_dist(rng)]};
    if (batch_dist(rng)) {
      members.push_back(alphabet[sym_dist(rng)]);
      if (batch_dist(rng)) members.push_back(alphabet[sym_dist(rng)]);
    }
    EventBatch b(t, std::move(members));
    if (produced + b.size() > n) b = EventBatch(t, {b.symbols().front()});
    produced += b.size();
    records.push_back(std::move(b));
    t += gap_dist(rng);
  }

  const std::size_t k = k_dist(rng);
  std::vector<Symbol> symbols;
  for (std::size_t i = 0; i < k; ++i) symbols.push_back(alphabet[sym_dist(rng)]);
  return Instance{std::move(records), TimeConstrainedEpisode(std::move(symbols), tau_dist(rng))};
}

std::pair<std::size_t, std::size_t> engine_counts(const Instance& instance) {
  Engine engine;
  const auto no = engine.add_counter(instance.episode, FrequencyKind::NonOverlapped);
  const auto di = engine.add_counter(instance.episode, FrequencyKind::Distinct);
  std::vector<Emission> sink;
  for (const auto& r : instance.records) engine.process_batch(r, sink);
  return {engine.frequency(no), engine.frequency(di)};
}

ConformanceReport run_conformance(const ConformanceConfig& cfg, SymbolTable& table) {
  ConformanceReport report;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Instance inst = random_instance(rng, cfg, table);
    const auto events = inst.events();
    const auto [engine_no, engine_di] = engine_counts(inst);
    ++report.trials;

    const std::size_t oracle_no = oracle::max_nonoverlapped(events, inst.episode, cfg.limits);
    if (engine_no == oracle_no) {
      ++report.nonoverlapped_matches;
    } else if (!report.first_nonoverlapped_failure) {
      report.first_nonoverlapped_failure =
          Discrepancy{inst, FrequencyKind::NonOverlapped, engine_no, oracle_no, "max_nonoverlapped"};
    }

    const std::size_t greedy = oracle::greedy_distinct(events, inst.episode, cfg.limits);
    if (engine_di == greedy) {
      ++report.distinct_matches;
    } else if (!report.first_distinct_failure) {
      report.first_distinct_failure =
          Discrepancy{inst, FrequencyKind::Distinct, engine_di, greedy, "greedy_distinct"};
    }

    const auto candidates = oracle::enumerate_occurrences(events, inst.episode, cfg.limits).size();
    if (candidates <= cfg.limits.max_distinct_candidates) {
      ++report.exhaustive_checked;
      const std::size_t best = oracle::max_distinct(events, inst.episode, cfg.limits);
      if (engine_di <= best) ++report.exhaustive_within_bound;
      if (greedy < best) {
        ++report.greedy_gaps;
        if (!report.first_gap) {
          report.first_gap = Discrepancy{inst, FrequencyKind::Distinct, greedy, best, "max_distinct"};
        }
      }
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string describe(const Instance& instance, const SymbolTable& table) {
  std::ostringstream os;
  os << "episode " << format_episode(instance.episode, table) << '\n';
  write_batches(os, instance.records, table);
  return os.str();
}

}  // namespace epicount
