// epicount: count time-constrained serial episodes over event streams.
//
// Exit codes: 0 success, 1 usage, 2 input error, 3 conformance failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "epicount/bench.hpp"
#include "epicount/conformance.hpp"
#include "epicount/engine.hpp"
#include "epicount/rules.hpp"
#include "epicount/sharded_engine.hpp"
#include "epicount/streamio.hpp"

using namespace epicount;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitConformance = 3;

struct CountOptions {
  std::string input = "-";
  std::vector<std::string> episodes;
  std::string mode = "nonoverlapped";
  std::size_t shards = 1;
  std::size_t chunk = 65536;
  double replay_us_per_tick = 0;
  bool emissions = false;
};

struct GenOptions {
  std::size_t n = 1000;
  std::size_t sigma = 622;
  std::uint64_t seed = 1;
  Tick interval = 1;
  std::string out = "-";
};

struct OracleOptions {
  ConformanceConfig cfg;
};

struct BenchOptions {
  std::string sweep = "all";
  std::vector<Tick> taus{10, 100, 1000, 10000};
  std::vector<std::size_t> ks{3, 5, 7, 9, 11};
  std::vector<std::size_t> ns{100000, 200000, 300000, 400000, 500000, 600000, 700000};
  std::vector<std::size_t> sigmas{2, 5, 20, 100, 622};
  std::size_t k = 5;
  Tick tau = 100;
  std::string mode = "nonoverlapped";
  std::string csv;
  bench::Config cfg;
};

struct MonitorOptions {
  std::string input = "-";
  std::string rules;
  std::string populations;
  Tick ticks_per_minute = 60;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_count(const CountOptions& opt) {
  SymbolTable table;
  const FrequencyKind mode = parse_frequency_kind(opt.mode);
  std::vector<TimeConstrainedEpisode> episodes;
  for (const auto& spec : opt.episodes) episodes.push_back(parse_episode(spec, table));

  auto reader = StreamReader::open(opt.input, table);
  auto report = [&](const std::vector<Emission>& emissions, const auto& engine) {
    if (!opt.emissions) return;
    for (const auto& e : emissions) {
      std::cout << "MATCH " << format_episode(engine.episode(e.handle), table) << ' '
                << to_string(e.occurrence) << '\n';
    }
  };

  std::vector<CounterHandle> handles;
  std::vector<std::uint64_t> freqs;
  if (opt.shards <= 1) {
    Engine engine;
    for (const auto& ep : episodes) handles.push_back(engine.add_counter(ep, mode));
    std::vector<Emission> emissions;
    std::optional<Tick> last;
    while (auto batch = reader.next()) {
      if (opt.replay_us_per_tick > 0 && last) {
        std::this_thread::sleep_for(std::chrono::duration<double, std::micro>(
            opt.replay_us_per_tick * static_cast<double>(batch->timestamp() - *last)));
      }
      last = batch->timestamp();
      emissions.clear();
      engine.process_batch(*batch, emissions);
      report(emissions, engine);
    }
    for (auto h : handles) freqs.push_back(engine.frequency(h));
  } else {
    ShardedEngine engine(opt.shards);
    for (const auto& ep : episodes) handles.push_back(engine.add_counter(ep, mode));
    std::vector<EventBatch> chunk;
    auto flush = [&] {
      auto emissions = engine.process(chunk);
      report(emissions, engine);
      chunk.clear();
    };
    while (auto batch = reader.next()) {
      chunk.push_back(std::move(*batch));
      if (chunk.size() >= opt.chunk) flush();
    }
    flush();
    for (auto h : handles) freqs.push_back(engine.frequency(h));
  }
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    std::cout << format_episode(episodes[i], table) << ' ' << to_string(mode) << ' ' << freqs[i] << '\n';
  }
  return 0;
}

int run_gen(const GenOptions& opt) {
  SymbolTable table;
  const auto events = generate_uniform(GeneratorSpec{opt.sigma, opt.n, opt.seed, opt.interval}, table);
  auto emit = [&](std::ostream& out) {
    out << "# epicount gen n=" << opt.n << " sigma=" << opt.sigma << " seed=" << opt.seed
        << " interval=" << opt.interval << '\n';
    write_events(out, events, table);
  };
  if (opt.out == "-") {
    emit(std::cout);
  } else {
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("cannot write '" + opt.out + "'");
    emit(out);
  }
  return 0;
}

int run_oracle_check(const OracleOptions& opt) {
  SymbolTable table;
  const auto report = run_conformance(opt.cfg, table);
  std::cout << "trials " << report.trials << '\n'
            << "nonoverlapped " << report.nonoverlapped_matches << '/' << report.trials
            << " match max_nonoverlapped\n"
            << "distinct " << report.distinct_matches << '/' << report.trials
            << " match greedy_distinct\n"
            << "distinct-bound " << report.exhaustive_within_bound << '/' << report.exhaustive_checked
            << " within max_distinct\n";
  auto dump = [&](const char* tag, const Discrepancy& d) {
    std::cout << tag << ' ' << to_string(d.mode) << " engine=" << d.engine_count << ' ' << d.oracle
              << '=' << d.oracle_count << '\n'
              << describe(d.instance, table);
  };
  if (report.first_nonoverlapped_failure) dump("FAIL", *report.first_nonoverlapped_failure);
  if (report.first_distinct_failure) dump("FAIL", *report.first_distinct_failure);
  if (report.greedy_gaps > 0) {
    std::cout << "WARN greedy_distinct below max_distinct on " << report.greedy_gaps << " instance(s)\n";
    dump("WARN", *report.first_gap);
  }
  std::cout << "seconds " << report.seconds << '\n';
  return report.passed() ? 0 : kExitConformance;
}

int run_bench(BenchOptions opt) {
  opt.cfg.mode = parse_frequency_kind(opt.mode);
  std::vector<bench::Row> rows;
  const bool all = opt.sweep == "all";
  if (all || opt.sweep == "tau") {
    auto r = bench::sweep_tau(opt.cfg, opt.k, opt.taus);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (all || opt.sweep == "k") {
    auto r = bench::sweep_k(opt.cfg, opt.tau, opt.ks);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (all || opt.sweep == "n") {
    auto r = bench::sweep_n(opt.cfg, opt.k, opt.tau, opt.ns);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (all || opt.sweep == "selectivity") {
    auto r = bench::sweep_selectivity(opt.cfg, opt.k, opt.tau, opt.sigmas);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (rows.empty()) {
    std::cerr << "unknown sweep '" << opt.sweep << "'\n";
    return kExitUsage;
  }
  bench::write_table(std::cout, rows);
  if (!opt.csv.empty()) {
    std::ofstream out(opt.csv);
    if (!out) throw std::runtime_error("cannot write '" + opt.csv + "'");
    bench::write_csv(out, rows);
  }
  return 0;
}

int run_monitor(const MonitorOptions& opt) {
  SymbolTable table;
  RuleFileOptions ropt;
  ropt.ticks_per_minute = opt.ticks_per_minute;
  auto rules = load_rules(read_file(opt.rules), ropt);
  Populations populations;
  if (!opt.populations.empty()) populations = load_populations(read_file(opt.populations));

  Engine engine;
  RuleMonitor monitor(engine, table, std::move(rules), std::move(populations));
  monitor.bind_declared_groups();

  auto reader = StreamReader::open(opt.input, table);
  while (auto batch = reader.next()) {
    for (const auto& alert : monitor.process(*batch)) {
      std::cout << format_alert(alert) << std::endl;
    }
  }
  for (const auto& g : monitor.groups()) {
    std::cout << "COUNT " << monitor.rules()[g.rule_index].name << ' ' << g.group << ' '
              << engine.frequency(g.handle) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count time-constrained serial episodes in event streams"};
  app.require_subcommand(1);

  CountOptions count;
  auto* c = app.add_subcommand("count", "Count episode frequencies over a stream");
  c->add_option("input", count.input, "Event file, '-' for stdin");
  c->add_option("--episode", count.episodes, "Episode spec, e.g. A,A,B@tau=3 (repeatable)")->required();
  c->add_option("--mode", count.mode, "nonoverlapped|distinct");
  c->add_option("--shards", count.shards, "Worker shards for counters");
  c->add_option("--replay-us-per-tick", count.replay_us_per_tick,
                "Sleep this many microseconds per tick between records");
  c->add_flag("--emissions", count.emissions, "Print every accepted occurrence");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a uniform synthetic stream");
  g->add_option("--n", gen.n, "Number of events");
  g->add_option("--sigma", gen.sigma, "Alphabet size");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--interval", gen.interval, "Ticks between events");
  g->add_option("--out", gen.out, "Output path, '-' for stdout");

  OracleOptions orc;
  auto* o = app.add_subcommand("oracle-check", "Randomized engine-vs-oracle conformance");
  o->add_option("--trials", orc.cfg.trials, "Random instances");
  o->add_option("--max-len", orc.cfg.max_length, "Maximum events per instance");
  o->add_option("--max-k", orc.cfg.max_k, "Maximum episode length");
  o->add_option("--sigma", orc.cfg.sigma, "Alphabet size");
  o->add_option("--max-tau", orc.cfg.max_tau, "Maximum time constraint");
  o->add_option("--seed", orc.cfg.seed, "Random seed");
  o->add_option("--batch-prob", orc.cfg.batch_probability, "Probability of a multi-symbol record");

  BenchOptions bopt;
  auto* b = app.add_subcommand("bench", "Throughput / memory sweeps");
  b->add_option("--sweep", bopt.sweep, "tau|k|n|selectivity|all");
  b->add_option("--tau", bopt.taus, "Tau values for the tau sweep")->delimiter(',');
  b->add_option("--k", bopt.ks, "Episode lengths for the k sweep")->delimiter(',');
  b->add_option("--n", bopt.ns, "Stream lengths for the n sweep")->delimiter(',');
  b->add_option("--sigma-list", bopt.sigmas, "Alphabet sizes for the selectivity sweep")->delimiter(',');
  b->add_option("--fixed-k", bopt.k, "k used by tau, n and selectivity sweeps");
  b->add_option("--fixed-tau", bopt.tau, "tau used by k, n and selectivity sweeps");
  b->add_option("--sigma", bopt.cfg.sigma, "Alphabet size of the synthetic stream");
  b->add_option("--length", bopt.cfg.n, "Stream length for tau/k/selectivity sweeps");
  b->add_option("--episodes", bopt.cfg.episodes, "Random episodes per point");
  b->add_option("--runs", bopt.cfg.runs, "Repetitions per point (median reported)");
  b->add_option("--seed", bopt.cfg.seed, "Random seed");
  b->add_option("--mode", bopt.mode, "nonoverlapped|distinct");
  b->add_flag("--preparse", bopt.cfg.preparse, "Exclude line parsing from timing");
  b->add_option("--csv", bopt.csv, "Write rows as CSV");
  bopt.cfg.preparse = false;

  MonitorOptions mon;
  auto* m = app.add_subcommand("monitor", "Apply incident rules to a live stream");
  m->add_option("input", mon.input, "Event file, '-' for stdin");
  m->add_option("--rules", mon.rules, "Rule file")->required();
  m->add_option("--populations", mon.populations, "Population file <name>,<group>,<size>");
  m->add_option("--tau-unit", mon.ticks_per_minute, "Ticks per minute for m/h rule units");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c) return run_count(count);
    if (*g) return run_gen(gen);
    if (*o) return run_oracle_check(orc);
    if (*b) return run_bench(bopt);
    if (*m) return run_monitor(mon);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
