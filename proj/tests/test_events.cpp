#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "threatstream/events.hpp"

using namespace threatstream;

namespace {

NoveltyMemory memory_of(std::set<std::string> tokens) {
  NoveltyMemory m;
  m.absorb(tokens);
  return m;
}

EventRecord event(int id, double score, std::size_t tweets) {
  EventRecord e;
  e.cluster_id = id;
  e.total_score = score;
  e.tweet_count = tweets;
  e.event_type = EventType::first_story;
  return e;
}

}  // namespace

TEST(Novelty, Similarity) {
  const std::set<std::string> a{"a", "b", "c", "d"};
  EXPECT_DOUBLE_EQ(novelty_similarity(a, memory_of(a)), 1.0);
  EXPECT_DOUBLE_EQ(novelty_similarity(a, NoveltyMemory{}), 0.0);
  EXPECT_DOUBLE_EQ(novelty_similarity({}, memory_of(a)), 0.0);
  std::set<std::string> b{"a", "b"};
  for (int i = 0; i < 14; ++i) b.insert("m" + std::to_string(i));
  EXPECT_DOUBLE_EQ(novelty_similarity(a, memory_of(b)), 0.25);
}

TEST(Novelty, TokensAreEntityOnlyPlusCommon) {
  TermSets s;
  s.common = {"c"};
  s.entity_only = {"e"};
  s.keyword_only = {"k"};
  EXPECT_EQ(novelty_tokens(s), (std::set<std::string>{"c", "e"}));
}

TEST(Novelty, UpdateMemory) {
  TermSets s;
  s.entity_only = {"b"};
  s.common = {"c"};
  const auto once = update_memory(memory_of({"a"}), s);
  EXPECT_EQ(once.tokens(), (std::set<std::string>{"a", "b", "c"}));
  EXPECT_EQ(update_memory(once, s).tokens(), once.tokens());
}

TEST(Novelty, MemoryMonotoneAndResubmissionIsSimilarProperty) {
  std::mt19937_64 rng(8);
  NoveltyMemory m;
  for (int step = 0; step < 300; ++step) {
    TermSets s;
    for (std::size_t i = rng() % 5; i > 0; --i) s.common.insert("t" + std::to_string(rng() % 200));
    for (std::size_t i = rng() % 6; i > 0; --i) s.entity_only.insert("t" + std::to_string(rng() % 200));
    const auto before = m.size();
    const auto tokens = novelty_tokens(s);
    std::size_t fresh = 0;
    for (const auto& t : tokens) fresh += m.tokens().count(t) ? 0 : 1;
    m = update_memory(m, s);
    ASSERT_EQ(m.size(), before + fresh);
    if (!tokens.empty()) {
      // the cluster's own tokens are all remembered now
      const double sim = novelty_similarity(tokens, memory_of(tokens));
      ASSERT_DOUBLE_EQ(sim, 1.0);
      for (const auto& t : tokens) ASSERT_TRUE(m.tokens().count(t));
    }
  }
}

TEST(Classify, Examples) {
  const DetectionParams p;
  EXPECT_EQ(classify_event(51, 0.3, fixture::sized_sets(1, 4), p, false), EventType::novel_and_trendy);
  EXPECT_EQ(classify_event(2, 0.3, fixture::sized_sets(1, 4), p, false), EventType::not_event);
  EXPECT_EQ(classify_event(20, 0.8, fixture::sized_sets(1, 10), p, false), EventType::not_event);
}

TEST(Classify, DecisionTable) {
  const DetectionParams p;
  for (const auto& c : fixture::classification_table()) {
    EXPECT_EQ(classify_event(c.tweet_count, c.sim, fixture::sized_sets(c.common, c.entity_only), p, c.first_cluster),
              c.expected)
        << c.name;
  }
}

TEST(Classify, Boundaries) {
  const DetectionParams p;
  // sim exactly at the threshold counts as similar
  EXPECT_EQ(classify_event(20, 0.5, fixture::sized_sets(3, 5), p, false), EventType::just_trendy);
  EXPECT_EQ(classify_event(5, 0.5, fixture::sized_sets(3, 5), p, false), EventType::not_event);
  // ratio must be strictly exceeded
  EXPECT_EQ(classify_event(20, 0.9, fixture::sized_sets(2, 10), p, false), EventType::not_event);
  EXPECT_EQ(classify_event(20, 0.9, fixture::sized_sets(3, 10), p, false), EventType::just_trendy);
}

TEST(Classify, FullEntitySetOverride) {
  DetectionParams p;
  auto s = fixture::sized_sets(3, 12);  // |N - K| = 12, |N| = 15
  EXPECT_EQ(classify_event(20, 0.9, s, p, false), EventType::just_trendy);
  p.ratio_uses_full_entity_set = true;
  EXPECT_EQ(classify_event(20, 0.9, s, p, false), EventType::not_event);
}

TEST(Classify, TotalityProperty) {
  std::mt19937_64 rng(12);
  const DetectionParams p;
  for (int i = 0; i < 5000; ++i) {
    const auto t = classify_event(rng() % 60, static_cast<double>(rng() % 101) / 100.0,
                                  fixture::sized_sets(rng() % 6, rng() % 20), p, rng() % 2 == 0);
    ASSERT_TRUE(t == EventType::just_trendy || t == EventType::novel_and_trendy || t == EventType::first_story ||
                t == EventType::not_event);
  }
}

TEST(Score, HandFixtures) {
  const DetectionParams p;
  for (const auto& f : fixture::score_fixtures()) {
    const auto s = score_event(f.type, f.sets, f.tweet_count, f.weights, f.phrases, p);
    EXPECT_NEAR(s.entity, f.entity, 1e-9) << f.name;
    EXPECT_NEAR(s.influence, f.influence, 1e-9) << f.name;
    EXPECT_NEAR(s.total, f.total, 1e-9) << f.name;
  }
}

TEST(Score, ScoringSets) {
  TermSets s;
  s.common = {"c"};
  s.keyword_only = {"k"};
  s.entity_only = {"e"};
  s.union_all = {"c", "e", "k"};
  EXPECT_EQ(scoring_set(EventType::just_trendy, s), (std::set<std::string>{"c"}));
  EXPECT_EQ(scoring_set(EventType::novel_and_trendy, s), (std::set<std::string>{"c", "k"}));
  EXPECT_EQ(scoring_set(EventType::first_story, s), (std::set<std::string>{"c", "e"}));
  EXPECT_THROW(scoring_set(EventType::not_event, s), ArgumentError);
}

TEST(Score, UnknownPhraseContributesZero) {
  TermSets s;
  PhraseWeights w;
  w.weights = {{"known", 0.4}};
  const auto r = score_event(EventType::just_trendy, s, 5, w, {"known", "unknown"}, DetectionParams{});
  EXPECT_DOUBLE_EQ(r.influence, 0.4);
}

TEST(Score, MonotoneInTweetCountAndFirstStoryFloor) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  DetectionParams p;
  for (int trial = 0; trial < 200; ++trial) {
    TermSets s;
    for (int i = 0; i < 4; ++i) {
      const auto t = "t" + std::to_string(i);
      (i % 2 ? s.common : s.keyword_only).insert(t);
      s.union_all.insert(t);
      s.token_scores[t] = u(rng);
    }
    p.tweet_thresh = 3 + rng() % 20;
    const PhraseWeights none;
    for (auto type : {EventType::just_trendy, EventType::novel_and_trendy}) {
      const auto lo = score_event(type, s, 5, none, {}, p).entity;
      const auto hi = score_event(type, s, 6, none, {}, p).entity;
      ASSERT_LT(lo, hi);
    }
    // first_story scores like a just_trendy event of exactly tweet_thresh tweets over the same set
    TermSets same = s;
    same.common = scoring_set(EventType::first_story, s);
    const auto fs = score_event(EventType::first_story, s, 4, none, {}, p).entity;
    const auto jt = score_event(EventType::just_trendy, same, p.tweet_thresh, none, {}, p).entity;
    ASSERT_NEAR(fs, jt, 1e-12);
  }
}

TEST(Rank, ReportedScoresAndTies) {
  auto ranked = rank_events({event(1, 211.033, 7), event(12, 391.3391, 51), event(9, 389.7082, 5)});
  EXPECT_EQ(ranked[0].cluster_id, 12);
  EXPECT_EQ(ranked[0].rank, 1);
  EXPECT_EQ(ranked[1].cluster_id, 9);
  EXPECT_EQ(ranked[2].rank, 3);

  ranked = rank_events({event(0, 1.0, 5), event(1, 1.0, 7)});
  EXPECT_EQ(ranked[0].cluster_id, 1);
  ranked = rank_events({event(4, 1.0, 5), event(2, 1.0, 5)});
  EXPECT_EQ(ranked[0].cluster_id, 2);

  ranked = rank_events({event(3, 0.0, 3)});
  EXPECT_EQ(ranked[0].rank, 1);
  EXPECT_TRUE(rank_events({}).empty());

  auto bad = event(0, 1.0, 3);
  bad.event_type = EventType::not_event;
  EXPECT_THROW(rank_events({bad}), ArgumentError);
}

TEST(Rank, PermutationInvarianceProperty) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<EventRecord> events;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 12); ++i) {
      events.push_back(event(i, static_cast<double>(rng() % 5), 3 + rng() % 4));
    }
    const auto ref = rank_events(events);
    std::shuffle(events.begin(), events.end(), rng);
    const auto again = rank_events(events);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_EQ(ref[i].cluster_id, again[i].cluster_id);
      ASSERT_EQ(ref[i].rank, static_cast<int>(i + 1));
      if (i > 0) {
        ASSERT_GE(ref[i - 1].total_score, ref[i].total_score);
      }
    }
  }
}

TEST(EventType, RoundTrip) {
  for (auto t : {EventType::just_trendy, EventType::novel_and_trendy, EventType::first_story, EventType::not_event}) {
    EXPECT_EQ(parse_event_type(to_string(t)), t);
  }
  EXPECT_THROW(parse_event_type("trendy"), ParseError);
}
