#include "epicount/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "epicount/engine.hpp"
#include "epicount/streamio.hpp"

namespace epicount::bench {
namespace {

std::vector<std::vector<Symbol>> episode_bases(const Config& cfg, std::size_t k, SymbolTable& table) {
  // Fixed maximal length so the k-prefixes line up across k sweeps.
  constexpr std::size_t kBaseLength = 32;
  const std::size_t length = std::max(k, kBaseLength);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick(0, cfg.sigma - 1);
  std::vector<std::vector<Symbol>> bases(cfg.episodes);
  for (auto& base : bases) {
    for (std::size_t i = 0; i < length; ++i) {
      base.push_back(table.intern(generated_symbol_name(pick(rng))));
    }
  }
  return bases;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct Point {
  Config cfg;
  std::size_t k = 0;
  Tick tau = 0;
  std::unique_ptr<SymbolTable> table = std::make_unique<SymbolTable>();
  std::vector<Event> stream;
  std::string text;
  std::vector<std::vector<Symbol>> bases;
  Row row;
  std::vector<double> run_seconds;
  std::vector<double> run_throughput;
};

Point prepare(const Config& cfg, std::size_t k, Tick tau, const std::string& sweep) {
  Point p;
  p.cfg = cfg;
  p.k = k;
  p.tau = tau;
  p.row.sweep = sweep;
  p.row.k = k;
  p.row.tau = tau;
  p.row.n = cfg.n;
  p.row.sigma = cfg.sigma;
  p.row.mode = cfg.mode;
  p.row.events = cfg.n;
  try {
    p.stream = generate_uniform(GeneratorSpec{cfg.sigma, cfg.n, cfg.seed, cfg.tick_interval}, *p.table);
    if (!cfg.preparse) {
      std::ostringstream os;
      write_events(os, p.stream, *p.table);
      p.text = os.str();
      p.stream.clear();
      p.stream.shrink_to_fit();
    }
    p.bases = episode_bases(cfg, k, *p.table);
  } catch (const std::exception& e) {
    p.row.note = e.what();
  }
  return p;
}

// One run: every episode once over the whole stream.
void measure(Point& p) {
  if (!p.row.note.empty()) return;
  try {
    double total = 0;
    double throughput_sum = 0;
    double selectivity_sum = 0;
    double peak_sum = 0;
    double freq_sum = 0;
    std::size_t peak_max = 0;
    for (const auto& base : p.bases) {
      Engine engine;
      const auto h = engine.add_counter(
          TimeConstrainedEpisode(std::vector<Symbol>(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(p.k)),
                                 p.tau),
          p.cfg.mode);
      std::vector<Emission> sink;
      sink.reserve(64);
      const auto t0 = std::chrono::steady_clock::now();
      if (p.cfg.preparse) {
        for (const auto& e : p.stream) {
          engine.process_event(e, sink);
          sink.clear();
        }
      } else {
        auto reader = StreamReader::from_string(p.text, *p.table);
        while (auto batch = reader.next()) {
          engine.process_batch(*batch, sink);
          sink.clear();
        }
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      total += secs;
      throughput_sum += static_cast<double>(p.cfg.n) / std::max(secs, 1e-12);
      const auto m = engine.metrics();
      selectivity_sum += m.events_processed ? measure_selectivity(m).value() : 0.0;
      const std::size_t peak = engine.occmap(h).peak_entries();
      peak_sum += static_cast<double>(peak);
      peak_max = std::max(peak_max, peak);
      freq_sum += static_cast<double>(engine.frequency(h));
    }
    const double ne = static_cast<double>(p.bases.size());
    p.run_seconds.push_back(total);
    p.run_throughput.push_back(throughput_sum / ne);
    p.row.selectivity = selectivity_sum / ne;
    p.row.mean_peak_entries = peak_sum / ne;
    p.row.max_peak_entries = peak_max;
    p.row.mean_frequency = freq_sum / ne;
  } catch (const std::exception& e) {
    p.row.note = e.what();
  }
}

// Runs are interleaved across points so that slow phases of the host hit
// every point alike instead of skewing one of them.
std::vector<Row> run_points(std::vector<Point>& points) {
  const std::size_t runs = std::max<std::size_t>(points.empty() ? 1 : points.front().cfg.runs, 1);
  for (std::size_t r = 0; r < runs; ++r) {
    for (auto& p : points) measure(p);
  }
  std::vector<Row> rows;
  for (auto& p : points) {
    if (!p.run_seconds.empty()) {
      p.row.seconds = median(p.run_seconds);
      p.row.throughput = median(p.run_throughput);
    }
    rows.push_back(p.row);
  }
  return rows;
}

}  // namespace

Row run_point(const Config& cfg, std::size_t k, Tick tau, const std::string& sweep) {
  std::vector<Point> points;
  points.push_back(prepare(cfg, k, tau, sweep));
  return run_points(points).front();
}

std::vector<Row> sweep_tau(const Config& cfg, std::size_t k, const std::vector<Tick>& taus) {
  std::vector<Point> points;
  for (Tick tau : taus) points.push_back(prepare(cfg, k, tau, "tau"));
  return run_points(points);
}

std::vector<Row> sweep_k(const Config& cfg, Tick tau, const std::vector<std::size_t>& ks) {
  std::vector<Point> points;
  for (std::size_t k : ks) points.push_back(prepare(cfg, k, tau, "k"));
  return run_points(points);
}

std::vector<Row> sweep_n(const Config& cfg, std::size_t k, Tick tau, const std::vector<std::size_t>& ns) {
  std::vector<Point> points;
  for (std::size_t n : ns) {
    Config c = cfg;
    c.n = n;
    points.push_back(prepare(c, k, tau, "n"));
  }
  return run_points(points);
}

std::vector<Row> sweep_selectivity(const Config& cfg, std::size_t k, Tick tau,
                                   const std::vector<std::size_t>& sigmas) {
  std::vector<Point> points;
  for (std::size_t sigma : sigmas) {
    Config c = cfg;
    c.sigma = sigma;
    points.push_back(prepare(c, k, tau, "selectivity"));
  }
  return run_points(points);
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << "sweep,mode,k,tau,n,sigma,events,seconds,throughput_eps,selectivity,mean_peak_entries,"
         "max_peak_entries,mean_frequency,note\n";
  for (const auto& r : rows) {
    out << r.sweep << ',' << to_string(r.mode) << ',' << r.k << ',' << r.tau << ',' << r.n << ','
        << r.sigma << ',' << r.events << ',' << std::setprecision(9) << r.seconds << ','
        << std::setprecision(6) << r.throughput << ',' << r.selectivity << ',' << r.mean_peak_entries
        << ',' << r.max_peak_entries << ',' << r.mean_frequency << ',' << '"' << r.note << '"' << '\n';
  }
}

void write_table(std::ostream& out, const std::vector<Row>& rows) {
  out << std::left << std::setw(12) << "sweep" << std::setw(5) << "k" << std::setw(8) << "tau"
      << std::setw(9) << "n" << std::setw(7) << "sigma" << std::setw(12) << "seconds" << std::setw(14)
      << "events/s" << std::setw(12) << "selectivity" << std::setw(11) << "peak(avg)" << std::setw(10)
      << "peak(max)" << "freq(avg)\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(12) << r.sweep << std::setw(5) << r.k << std::setw(8) << r.tau
        << std::setw(9) << r.n << std::setw(7) << r.sigma << std::setw(12) << std::setprecision(5)
        << r.seconds << std::setw(14) << std::setprecision(6) << r.throughput << std::setw(12)
        << std::setprecision(4) << r.selectivity << std::setw(11) << r.mean_peak_entries << std::setw(10)
        << r.max_peak_entries << r.mean_frequency;
    if (!r.note.empty()) out << "  [" << r.note << ']';
    out << '\n';
  }
}

double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 1.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0) return 1.0;
  if (sxx == 0) return 0.0;
  return (sxy * sxy) / (sxx * syy);
}

}  // namespace epicount::bench
