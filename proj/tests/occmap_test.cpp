#include <gtest/gtest.h>

#include <map>

#include "epicount/engine.hpp"
#include "epicount/occmap.hpp"
#include "epicount/oracle.hpp"
#include "test_util.hpp"

using namespace epicount;
using test::layers;

namespace {

const std::vector<std::string> kAAB{"A", "A", "B"};

// Feeds one event the way the engine does: update, then validate if due.
std::optional<Occurrence> feed(OccMap& map, const Event& e) {
  if (!map.list_update(e)) return std::nullopt;
  auto r = map.validate();
  return r.occurrence;
}

}  // namespace

TEST(TimestampList, HeadOperations) {
  TimestampList l;
  for (Tick t : {2, 4, 6, 8}) l.push_back(t);
  EXPECT_EQ(l.last_below(6), 4);
  EXPECT_EQ(l.last_below(9), 8);
  EXPECT_EQ(l.last_below(2), std::nullopt);
  EXPECT_EQ(l.first_above(4), 6);
  EXPECT_EQ(l.first_above(8), std::nullopt);
  EXPECT_EQ(l.first_at_least(4), 4);
  l.erase_value(6);
  EXPECT_EQ(std::vector<Tick>(l.view().begin(), l.view().end()), (std::vector<Tick>{2, 4, 8}));
  l.drop_through(4);
  EXPECT_EQ(l.front(), 8);
  l.pop_front();
  EXPECT_TRUE(l.empty());
}

TEST(TimestampList, LongRunCompacts) {
  TimestampList l;
  for (Tick t = 0; t < 1000; ++t) {
    l.push_back(t);
    if (t >= 10) l.pop_front();
  }
  EXPECT_EQ(l.size(), 10u);
  EXPECT_EQ(l.front(), 990);
}

class OccMapTest : public ::testing::Test {
 protected:
  SymbolTable t;
  Symbol A = t.intern("A"), B = t.intern("B"), C = t.intern("C");
  TimeConstrainedEpisode aab(Tick tau) { return TimeConstrainedEpisode({A, A, B}, tau); }
};

TEST_F(OccMapTest, FreshMapIsEmpty) {
  OccMap m(aab(3), FrequencyKind::NonOverlapped);
  EXPECT_EQ(m.length(), 3u);
  EXPECT_EQ(m.active_layer(), 1u);
  EXPECT_EQ(m.total_entries(), 0u);
  EXPECT_EQ(m.snapshot(t), layers({{}, {}, {}}, 1, kAAB));

  OccMap single(TimeConstrainedEpisode({A}, 1), FrequencyKind::NonOverlapped);
  EXPECT_EQ(single.length(), 1u);
  EXPECT_EQ(single.active_layer(), 1u);
}

TEST_F(OccMapTest, FirstTwoUpdates) {
  OccMap m(aab(3), FrequencyKind::NonOverlapped);
  EXPECT_FALSE(m.list_update({A, 1}));
  EXPECT_EQ(m.snapshot(t), layers({{1}, {}, {}}, 2, kAAB));
  EXPECT_FALSE(m.list_update({A, 2}));
  EXPECT_EQ(m.snapshot(t), layers({{1, 2}, {2}, {}}, 3, kAAB));
  EXPECT_EQ(m.total_entries(), 3u);
}

TEST_F(OccMapTest, UnrelatedSymbolIgnored) {
  OccMap m(aab(3), FrequencyKind::NonOverlapped);
  m.list_update({A, 1});
  m.list_update({C, 2});
  EXPECT_EQ(m.snapshot(t), layers({{1}, {}, {}}, 2, kAAB));
  EXPECT_EQ(m.matches(), 1u);
}

TEST_F(OccMapTest, HeadTrimLoopsUntilWithinTau) {
  OccMap m(TimeConstrainedEpisode({A, B}, 3), FrequencyKind::NonOverlapped);
  for (Tick ts : {1, 2, 3}) m.list_update({A, ts});
  m.list_update({A, 6});
  // 1, 2 are stale (6-1 > 3, 6-2 > 3); 3 stays.
  EXPECT_EQ(std::vector<Tick>(m.layer(0).begin(), m.layer(0).end()), (std::vector<Tick>{3, 6}));
}

TEST_F(OccMapTest, OutOfOrderRejectedWithoutChange) {
  OccMap m(aab(3), FrequencyKind::NonOverlapped);
  m.list_update({A, 5});
  const auto before = m.snapshot(t);
  EXPECT_THROW(m.list_update({A, 4}), StreamOrderError);
  EXPECT_EQ(m.snapshot(t), before);
}

TEST_F(OccMapTest, RepairDropsHeadWithoutEarlierPredecessor) {
  auto m = OccMap::from_layers(TimeConstrainedEpisode({A, B}, 3), FrequencyKind::NonOverlapped,
                               {{5, 6}, {3}});
  m.repair_monotonicity();
  EXPECT_EQ(m.snapshot(t), layers({{5, 6}, {}}, 2, {"A", "B"}));
}

TEST_F(OccMapTest, RepairKeepsValidHeads) {
  auto m = OccMap::from_layers(TimeConstrainedEpisode({A, B}, 3), FrequencyKind::NonOverlapped,
                               {{5, 6}, {6}});
  m.repair_monotonicity();
  EXPECT_EQ(m.snapshot(t), layers({{5, 6}, {6}}, 3, {"A", "B"}));
}

TEST_F(OccMapTest, RepairCascadesOnEmptyPredecessor) {
  auto m = OccMap::from_layers(TimeConstrainedEpisode({A, B}, 3), FrequencyKind::NonOverlapped,
                               {{}, {7}});
  m.repair_monotonicity();
  EXPECT_EQ(m.snapshot(t), layers({{}, {}}, 1, {"A", "B"}));
}

// Dangling head produced by an actual stream: A at 1, A at 5 (trims 1) and a
// B-layer head that only 1 could precede.
TEST_F(OccMapTest, RepairAfterTrimMatchesOracle) {
  const TimeConstrainedEpisode e({A, A, B}, 3);
  OccMap m(e, FrequencyKind::NonOverlapped);
  const std::vector<Event> s{{A, 1}, {A, 2}, {A, 5}, {B, 6}};
  std::size_t accepted = 0;
  for (const auto& ev : s) accepted += feed(m, ev).has_value();
  EXPECT_EQ(accepted, oracle::max_nonoverlapped(s, e));
}

TEST_F(OccMapTest, RunningExampleTrace) {
  SymbolTable table;
  const auto events = test::data_events("example2.txt", table);
  const auto e = parse_episode("A,A,B@tau=3", table);
  OccMap m(e, FrequencyKind::NonOverlapped);
  std::map<Tick, std::string> after;
  std::vector<Occurrence> accepted;
  for (const auto& ev : events) {
    if (auto occ = feed(m, ev)) accepted.push_back(*occ);
    after[ev.timestamp] = m.snapshot(table);
  }
  EXPECT_EQ(after[3], layers({{}, {}, {}}, 1, kAAB));
  EXPECT_EQ(after[8], layers({{}, {}, {}}, 1, kAAB));
  EXPECT_EQ(after[13], layers({{12}, {}, {}}, 2, kAAB));
  EXPECT_EQ(after[15], layers({{}, {}, {}}, 1, kAAB));
  EXPECT_EQ(accepted, (std::vector<Occurrence>{{{1, 2, 3}}, {{6, 7, 8}}, {{12, 14, 15}}}));
  // Appends by hand: 1 | 2,2 | 3 | 4 | 6,6 | 7,7 | 8 | 9 | 12,12 | 13 | 14,14 | 15
  EXPECT_EQ(m.matches(), 17u);
}

TEST_F(OccMapTest, ValidateAcceptsAndClears) {
  auto m = OccMap::from_layers(aab(3), FrequencyKind::NonOverlapped, {{1, 2}, {2}, {3}});
  const auto r = m.validate_eliminate();
  ASSERT_TRUE(r.accepted);
  EXPECT_EQ(*r.occurrence, (Occurrence{{1, 2, 3}}));
  EXPECT_EQ(m.total_entries(), 0u);
  EXPECT_EQ(m.active_layer(), 1u);
}

TEST_F(OccMapTest, ValidateRejectsSpanBeyondTau) {
  auto m = OccMap::from_layers(aab(3), FrequencyKind::NonOverlapped, {{9, 12}, {12}, {13}});
  const auto r = m.validate_eliminate();
  EXPECT_FALSE(r.accepted);
  EXPECT_FALSE(r.occurrence.has_value());
  EXPECT_EQ(m.snapshot(t), layers({{12}, {}, {}}, 2, kAAB));
}

TEST_F(OccMapTest, ValidateAcceptsAfterEarlierRejection) {
  auto m = OccMap::from_layers(aab(3), FrequencyKind::NonOverlapped, {{12, 14}, {14}, {15}});
  const auto r = m.validate_eliminate();
  ASSERT_TRUE(r.accepted);
  EXPECT_EQ(*r.occurrence, (Occurrence{{12, 14, 15}}));
}

TEST_F(OccMapTest, ValidateRequiresMatchingModeAndBottomEntry) {
  OccMap m(aab(3), FrequencyKind::NonOverlapped);
  EXPECT_THROW(m.validate_eliminate(), std::logic_error);
  EXPECT_THROW(m.validate_eliminate_plus(), std::logic_error);
  OccMap d(aab(3), FrequencyKind::Distinct);
  EXPECT_THROW(d.validate_eliminate(), std::logic_error);
}

TEST_F(OccMapTest, DistinctFirstHit) {
  auto m = OccMap::from_layers(aab(9), FrequencyKind::Distinct, {{1, 3, 5, 7}, {3, 5, 7}, {9}});
  const auto r = m.validate_eliminate_plus();
  ASSERT_TRUE(r.accepted);
  EXPECT_EQ(*r.occurrence, (Occurrence{{1, 3, 9}}));
  EXPECT_EQ(m.snapshot(t), layers({{5, 7}, {5, 7}, {}}, 3, kAAB));
}

TEST_F(OccMapTest, DistinctSecondHit) {
  auto m = OccMap::from_layers(aab(9), FrequencyKind::Distinct, {{5, 7}, {5, 7}, {10}});
  const auto r = m.validate_eliminate_plus();
  ASSERT_TRUE(r.accepted);
  EXPECT_EQ(*r.occurrence, (Occurrence{{5, 7, 10}}));
  EXPECT_EQ(m.total_entries(), 0u);
}

TEST_F(OccMapTest, DistinctFailedSearchDropsOnlyUselessEntries) {
  auto m = OccMap::from_layers(aab(7), FrequencyKind::Distinct, {{7}, {7}, {10}});
  const auto r = m.validate_eliminate_plus();
  EXPECT_FALSE(r.accepted);
  // The bottom entry has no occurrence; 7 may still start a later one.
  EXPECT_EQ(m.snapshot(t), layers({{7}, {7}, {}}, 3, kAAB));
}

// Clearing everything on a failed search would lose <15,21,22> here.
TEST_F(OccMapTest, DistinctFailedSearchKeepsReusableEntries) {
  const TimeConstrainedEpisode e({A, B, C}, 10);
  const std::vector<Event> s{{A, 1}, {B, 2}, {A, 15}, {C, 20}, {B, 21}, {C, 22}};
  OccMap m(e, FrequencyKind::Distinct);
  std::vector<Occurrence> got;
  for (const auto& ev : s)
    if (auto occ = feed(m, ev)) got.push_back(*occ);
  EXPECT_EQ(got, (std::vector<Occurrence>{{{15, 21, 22}}}));
  EXPECT_EQ(got.size(), oracle::greedy_distinct(s, e));
}

TEST_F(OccMapTest, DistinctTimeTestIsInclusive) {
  auto m = OccMap::from_layers(TimeConstrainedEpisode({A, B}, 4), FrequencyKind::Distinct, {{1}, {5}});
  const auto r = m.validate_eliminate_plus();
  ASSERT_TRUE(r.accepted);
  EXPECT_EQ(*r.occurrence, (Occurrence{{1, 5}}));
}

TEST_F(OccMapTest, NonOverlappedTimeTestIsInclusive) {
  auto m = OccMap::from_layers(TimeConstrainedEpisode({A, B}, 4), FrequencyKind::NonOverlapped,
                               {{1}, {5}});
  EXPECT_TRUE(m.validate_eliminate().accepted);
}

TEST_F(OccMapTest, DistinctTraces) {
  SymbolTable table;
  const auto events = test::data_events("distinct_trace.txt", table);
  auto run = [&](Tick tau, FrequencyKind mode) {
    OccMap m(TimeConstrainedEpisode(parse_episode("A,A,B@tau=1", table).symbols(), tau), mode);
    std::vector<Occurrence> got;
    std::map<Tick, std::string> after;
    for (const auto& ev : events) {
      if (auto occ = feed(m, ev)) got.push_back(*occ);
      after[ev.timestamp] = m.snapshot(table);
    }
    return std::pair{got, after};
  };
  auto [d9, s9] = run(9, FrequencyKind::Distinct);
  EXPECT_EQ(d9, (std::vector<Occurrence>{{{1, 3, 9}}, {{5, 7, 10}}}));
  EXPECT_EQ(s9[9], layers({{5, 7}, {5, 7}, {}}, 3, kAAB));

  auto [d7, s7] = run(7, FrequencyKind::Distinct);
  EXPECT_EQ(d7, (std::vector<Occurrence>{{{3, 5, 9}}}));
  EXPECT_EQ(s7[9], layers({{7}, {7}, {}}, 3, kAAB));
  EXPECT_EQ(s7[10], layers({{7}, {7}, {}}, 3, kAAB));

  for (Tick tau : {7, 9}) {
    auto [n, _] = run(tau, FrequencyKind::NonOverlapped);
    EXPECT_EQ(n, (std::vector<Occurrence>{{{5, 7, 9}}})) << "tau=" << tau;
  }
}

TEST_F(OccMapTest, DistinctModeSkipsRepair) {
  auto m = OccMap::from_layers(aab(9), FrequencyKind::Distinct, {{5, 7}, {5, 7}, {}});
  m.repair_monotonicity();
  EXPECT_EQ(m.snapshot(t), layers({{5, 7}, {5, 7}, {}}, 3, kAAB));
}

TEST_F(OccMapTest, SingleSymbolEpisodeAcceptsEveryMatch) {
  for (auto mode : {FrequencyKind::NonOverlapped, FrequencyKind::Distinct}) {
    OccMap m(TimeConstrainedEpisode({A}, 1), mode);
    int n = 0;
    for (Tick ts = 1; ts <= 5; ++ts) n += feed(m, {A, ts}).has_value();
    EXPECT_EQ(n, 5);
  }
}

TEST_F(OccMapTest, BatchMembersDoNotChainAtOneTimestamp) {
  OccMap m(TimeConstrainedEpisode({A, B}, 5), FrequencyKind::NonOverlapped);
  feed(m, {A, 1});
  // A second A at the same timestamp is a duplicate.
  EXPECT_FALSE(m.list_update({A, 1}));
  EXPECT_EQ(m.layer(0).size(), 1u);
  OccMap n(TimeConstrainedEpisode({A, B}, 5), FrequencyKind::NonOverlapped);
  EXPECT_FALSE(feed(n, {A, 2}).has_value());
  EXPECT_FALSE(feed(n, {B, 2}).has_value());
  EXPECT_EQ(n.active_layer(), 2u);
}

TEST_F(OccMapTest, PeakEntriesTracksMaximum) {
  OccMap m(aab(3), FrequencyKind::NonOverlapped);
  m.list_update({A, 1});
  m.list_update({A, 2});
  EXPECT_EQ(m.peak_entries(), 3u);
  feed(m, {B, 3});
  EXPECT_EQ(m.total_entries(), 0u);
  EXPECT_EQ(m.peak_entries(), 4u);
  m.reset();
  EXPECT_EQ(m.peak_entries(), 0u);
  EXPECT_EQ(m.matches(), 0u);
}

TEST_F(OccMapTest, FromLayersRejectsBadInput) {
  EXPECT_THROW(OccMap::from_layers(aab(3), FrequencyKind::Distinct, {{1}, {2}}), std::invalid_argument);
  EXPECT_THROW(OccMap::from_layers(aab(3), FrequencyKind::Distinct, {{2, 1}, {}, {}}),
               std::invalid_argument);
}
