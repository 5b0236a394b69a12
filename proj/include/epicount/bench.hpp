#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "epicount/episode.hpp"
#include "epicount/event.hpp"

namespace epicount::bench {

struct Config {
  std::size_t sigma = 622;        // alphabet size of the synthetic stream
  std::size_t n = 100'000;        // events per stream
  std::size_t episodes = 10;      // random target episodes averaged per point
  std::size_t runs = 5;           // repetitions; the median is reported
  std::uint64_t seed = 1;
  Tick tick_interval = 1;
  FrequencyKind mode = FrequencyKind::NonOverlapped;
  bool preparse = true;           // exclude line parsing from the timed region
};

struct Row {
  std::string sweep;
  std::size_t k = 0;
  Tick tau = 0;
  std::size_t n = 0;
  std::size_t sigma = 0;
  FrequencyKind mode = FrequencyKind::NonOverlapped;
  std::uint64_t events = 0;            // per episode pass
  double seconds = 0;                  // median over runs of the summed episode passes
  double throughput = 0;               // events per second, averaged over episodes
  double selectivity = 0;              // matches / events, averaged over episodes
  double mean_peak_entries = 0;
  std::size_t max_peak_entries = 0;
  double mean_frequency = 0;
  std::string note;                    // per-row failure annotation
};

/// One sweep point: a uniform stream of cfg.n events, cfg.episodes random
/// episodes of length k. Episode j of length k is the k-prefix of a fixed
/// random symbol sequence j, so different k share their leading symbols.
Row run_point(const Config& cfg, std::size_t k, Tick tau, const std::string& sweep = "point");

std::vector<Row> sweep_tau(const Config& cfg, std::size_t k, const std::vector<Tick>& taus);
std::vector<Row> sweep_k(const Config& cfg, Tick tau, const std::vector<std::size_t>& ks);
std::vector<Row> sweep_n(const Config& cfg, std::size_t k, Tick tau, const std::vector<std::size_t>& ns);
/// Selectivity is steered through the stream alphabet size.
std::vector<Row> sweep_selectivity(const Config& cfg, std::size_t k, Tick tau,
                                   const std::vector<std::size_t>& sigmas);

void write_csv(std::ostream& out, const std::vector<Row>& rows);
void write_table(std::ostream& out, const std::vector<Row>& rows);

/// Coefficient of determination of the least-squares line through (x, y).
double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace epicount::bench
