#include <gtest/gtest.h>

#include "epicount/rules.hpp"
#include "epicount/streamio.hpp"
#include "test_util.hpp"

using namespace epicount;

TEST(LoadRules, PercentageRuleWithMinutes) {
  const auto rules = load_rules(
      "# incidents\n"
      "cell_out: low_voltage,bs_disconnect,carrier_wave @tau=3m threshold=10% of cells by district\n");
  ASSERT_EQ(rules.size(), 1u);
  const auto& r = rules[0];
  EXPECT_EQ(r.name, "cell_out");
  EXPECT_EQ(r.alarm_symbols, (std::vector<std::string>{"low_voltage", "bs_disconnect", "carrier_wave"}));
  EXPECT_EQ(r.tau, 180);
  EXPECT_EQ(r.threshold.kind, Threshold::Kind::Percentage);
  EXPECT_EQ(r.threshold.population, "cells");
  EXPECT_EQ(r.group_key, "district");
  EXPECT_EQ(r.mode, FrequencyKind::NonOverlapped);
}

TEST(LoadRules, AbsoluteRule) {
  RuleFileOptions opt;
  opt.ticks_per_minute = 1;
  const auto rules =
      load_rules("ne_sync: sync_path_fault,sync_fault @tau=5m threshold=5 by NE\n", opt);
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(rules[0].tau, 5);
  EXPECT_EQ(rules[0].threshold.kind, Threshold::Kind::Absolute);
  EXPECT_EQ(rules[0].threshold.count, 5u);
  EXPECT_EQ(rules[0].group_key, "NE");
}

TEST(LoadRules, UnitsAndMode) {
  const auto rules = load_rules("a: x,y @tau=2h threshold=1 mode=distinct by g\nb: x @tau=7 threshold=2 by g\n");
  EXPECT_EQ(rules[0].tau, 7200);
  EXPECT_EQ(rules[0].mode, FrequencyKind::Distinct);
  EXPECT_EQ(rules[1].tau, 7);
}

TEST(LoadRules, Errors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      load_rules(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return 0;
  };
  EXPECT_EQ(line_of("\n# c\nr: a,b @tau=3 threshold=10% by district\n"), 3u);
  EXPECT_EQ(line_of("r a,b @tau=3 threshold=1 by g\n"), 1u);
  EXPECT_EQ(line_of("r: a,b threshold=1 by g\n"), 1u);
  EXPECT_EQ(line_of("r: a,b @tau=0 threshold=1 by g\n"), 1u);
  EXPECT_EQ(line_of("r: a,b @tau=3 threshold=0 by g\n"), 1u);
  EXPECT_EQ(line_of("r: a,b @tau=3 by g\n"), 1u);
  EXPECT_EQ(line_of("r: a,b @tau=3 threshold=1\n"), 1u);
  EXPECT_EQ(line_of("r: a,b @tau=3 threshold=1 by g extra\n"), 1u);
  EXPECT_EQ(line_of("r: a@x,b @tau=3 threshold=1 by g\n"), 1u);
  EXPECT_EQ(line_of("r: a,b @tau=3 threshold=1 mode=window by g\n"), 1u);
}

TEST(Threshold, Resolve) {
  Threshold pct{Threshold::Kind::Percentage, 0, 10, 1, "cells"};
  EXPECT_EQ(pct.resolve(80), 8u);
  EXPECT_EQ(pct.resolve(81), 9u);
  EXPECT_EQ(pct.resolve(5), 1u);
  EXPECT_THROW((void)pct.resolve(std::nullopt), std::invalid_argument);
  Threshold fine{Threshold::Kind::Percentage, 0, 125, 10, "cells"};  // 12.5%
  EXPECT_EQ(fine.resolve(40), 5u);
  EXPECT_EQ(fine.resolve(41), 6u);
  Threshold abs{Threshold::Kind::Absolute, 5};
  EXPECT_EQ(abs.resolve(std::nullopt), 5u);
}

TEST(Populations, Load) {
  const auto p = load_populations("# pop\ncells,district1,80\ncells, district2 ,20\n");
  EXPECT_EQ(p.at("cells").at("district1"), 80u);
  EXPECT_EQ(p.at("cells").at("district2"), 20u);
  EXPECT_THROW(load_populations("cells,d1\n"), ParseError);
  EXPECT_THROW(load_populations("cells,d1,x\n"), ParseError);
}

TEST(ComposeSymbol, Deterministic) {
  SymbolTable t;
  const Symbol a = compose_symbol(t, "low voltage", "district7");
  EXPECT_EQ(t.name(a), "low voltage@district7");
  EXPECT_EQ(compose_symbol(t, "low voltage", "district7"), a);
  EXPECT_NE(compose_symbol(t, "low voltage", "district8"), a);
  EXPECT_THROW(compose_symbol(t, "a@b", "g"), std::invalid_argument);
  EXPECT_THROW(compose_symbol(t, "a", "g|h"), std::invalid_argument);
  EXPECT_THROW(compose_symbol(t, "a", "g,h"), std::invalid_argument);
  EXPECT_THROW(compose_symbol(t, "", "g"), std::invalid_argument);
}

TEST(BindRule, OneCounterPerGroup) {
  SymbolTable t;
  Engine engine;
  const auto rules = load_rules("r: x,y @tau=3 threshold=1 by g\ns: x @tau=3 threshold=1 by g\n");
  EXPECT_EQ(bind_rule(engine, t, rules[0], {"d1", "d2", "d3"}).size(), 3u);
  EXPECT_TRUE(bind_rule(engine, t, rules[0], {}).empty());
  const auto a = bind_rule(engine, t, rules[0], {"d1"});
  const auto b = bind_rule(engine, t, rules[1], {"d1"});
  EXPECT_NE(a[0], b[0]);
  EXPECT_EQ(t.name(engine.episode(a[0]).at(1)), "y@d1");
  EXPECT_EQ(engine.episode(a[0]).tau(), 3);
}

TEST(RuleMonitor, AbsoluteThresholdLatches) {
  SymbolTable t;
  Engine engine;
  RuleMonitor monitor(engine, t, load_rules("r: x @tau=3 threshold=5 by g\n"));
  const auto h = monitor.bind(0, {"d1"});
  for (std::uint64_t c = 1; c <= 4; ++c) EXPECT_FALSE(monitor.on_count(h[0], c, 10));
  const auto alert = monitor.on_count(h[0], 5, 11);
  ASSERT_TRUE(alert);
  EXPECT_EQ(format_alert(*alert), "ALERT r d1 count=5 t=11");
  EXPECT_FALSE(monitor.on_count(h[0], 6, 12));
  monitor.reset("r", "d1");
  EXPECT_TRUE(monitor.on_count(h[0], 5, 13));
  EXPECT_THROW(monitor.reset("r", "nowhere"), std::invalid_argument);
}

TEST(RuleMonitor, PercentageNeedsPopulation) {
  SymbolTable t;
  Engine engine;
  const auto rules = load_rules("r: x @tau=3 threshold=10% of cells by district\n");
  EXPECT_THROW(RuleMonitor(engine, t, rules), std::invalid_argument);
  RuleMonitor monitor(engine, t, rules, load_populations("cells,d1,80\n"));
  EXPECT_THROW(monitor.bind(0, {"d2"}), std::invalid_argument);
  monitor.bind_declared_groups();
  ASSERT_EQ(monitor.groups().size(), 1u);
  EXPECT_EQ(monitor.groups()[0].threshold, 8u);
}

TEST(RuleMonitor, DiscoversGroupsFromStream) {
  SymbolTable t;
  Engine engine;
  RuleMonitor monitor(engine, t, load_rules("r: x,y @tau=3 threshold=2 by g\n"));
  auto stream = StreamReader::from_string(
      "1,x@d1\n2,y@d1\n3,x@d2\n4,y@d2\n5,x@d1\n6,y@d1\n7,z@d3\n8,x\n", t);
  std::vector<Alert> alerts;
  while (auto b = stream.next()) {
    auto a = monitor.process(*b);
    alerts.insert(alerts.end(), a.begin(), a.end());
  }
  ASSERT_EQ(alerts.size(), 1u);
  EXPECT_EQ(alerts[0], (Alert{"r", "d1", 2, 6}));
  EXPECT_EQ(monitor.groups().size(), 2u);
}

TEST(RuleMonitor, NoMatchingAlarms) {
  SymbolTable t;
  Engine engine;
  RuleMonitor monitor(engine, t, load_rules("r: x,y @tau=3 threshold=1 by g\n"));
  auto stream = StreamReader::from_string("1,q@d1\n2,w@d1\n", t);
  while (auto b = stream.next()) EXPECT_TRUE(monitor.process(*b).empty());
  EXPECT_TRUE(monitor.groups().empty());
}
