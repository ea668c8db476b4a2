// Hand-derived and reported fixtures shared by the unit and acceptance tests.
#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "threatstream/events.hpp"

namespace fixture {

using threatstream::EventType;

// (system rank, annotator rank) for the fifteen matched events of the first
// interval, in event-number order.
inline constexpr std::array<std::pair<int, int>, 15> kReportedRankPairs{{
    {5, 4}, {3, 2}, {4, 3}, {10, 13}, {9, 7}, {8, 8}, {14, 10}, {7, 5},
    {6, 6}, {2, 9}, {13, 14}, {12, 12}, {1, 1}, {11, 11}, {15, 15},
}};
inline constexpr long long kReportedSse = 86;

struct ClassificationCase {
  const char* name;
  std::size_t tweet_count;
  double sim;
  std::size_t common;
  std::size_t entity_only;
  bool first_cluster;
  EventType expected;
};

// tweet_thresh 10, min_event_tweets 3, cosine_thresh 0.5, ratio 0.20.
// "ratio pass" means common > 0.2 * entity_only.
inline const std::vector<ClassificationCase>& classification_table() {
  static const std::vector<ClassificationCase> cases{
      {"similar, 2 tweets, ratio pass", 2, 0.8, 3, 5, false, EventType::not_event},
      {"similar, 5 tweets, ratio pass", 5, 0.8, 3, 5, false, EventType::not_event},
      {"similar, 20 tweets, ratio pass", 20, 0.8, 3, 5, false, EventType::just_trendy},
      {"similar, 20 tweets, ratio fail", 20, 0.8, 1, 10, false, EventType::not_event},
      {"similar, exactly thresh tweets, ratio pass", 10, 0.8, 3, 5, false, EventType::just_trendy},
      {"dissimilar, 2 tweets", 2, 0.3, 3, 5, false, EventType::not_event},
      {"dissimilar, exactly 3 tweets", 3, 0.3, 3, 5, false, EventType::first_story},
      {"dissimilar, 9 tweets, ratio fail", 9, 0.3, 1, 10, false, EventType::first_story},
      {"dissimilar, 51 tweets", 51, 0.3, 1, 10, false, EventType::novel_and_trendy},
      {"first cluster, similar, 51 tweets", 51, 0.8, 3, 5, true, EventType::novel_and_trendy},
      {"first cluster, similar, 5 tweets", 5, 0.8, 3, 5, true, EventType::first_story},
      {"first cluster, similar, 2 tweets", 2, 0.8, 3, 5, true, EventType::not_event},
  };
  return cases;
}

// TermSets with `common` and `entity_only` of the given sizes.
inline threatstream::TermSets sized_sets(std::size_t common, std::size_t entity_only) {
  threatstream::TermSets s;
  for (std::size_t i = 0; i < common; ++i) s.common.insert("c" + std::to_string(i));
  for (std::size_t i = 0; i < entity_only; ++i) s.entity_only.insert("e" + std::to_string(i));
  s.entities = s.entity_only;
  s.entities.insert(s.common.begin(), s.common.end());
  s.union_all = s.entities;
  return s;
}

struct ScoreFixture {
  const char* name;
  EventType type;
  threatstream::TermSets sets;
  std::size_t tweet_count;
  threatstream::PhraseWeights weights;
  std::set<std::string> phrases;
  double entity;
  double influence;
  double total;
};

// Hand-evaluated score examples (tweet_thresh 10).
inline std::vector<ScoreFixture> score_fixtures() {
  std::vector<ScoreFixture> out;

  ScoreFixture jt{"just_trendy, common scores 0.9 + 0.6, 4 tweets, phrases 0.5 + 0.25", EventType::just_trendy,
                  {}, 4, {}, {"apache struts", "patch"}, 6.0, 0.75, 6.75};
  jt.sets.common = {"apache", "struts"};
  jt.sets.keyword_only = {"flaw"};
  jt.sets.union_all = {"apache", "struts", "flaw"};
  jt.sets.token_scores = {{"apache", 0.9}, {"struts", 0.6}, {"flaw", 5.0}};
  jt.weights.weights = {{"apache struts", 0.5}, {"patch", 0.25}, {"unused", 1.0}};
  out.push_back(jt);

  ScoreFixture fs{"first_story, scoring set sums to 1.2, tweet_thresh 10, no phrases", EventType::first_story,
                  {}, 4, {}, {}, 12.0, 0.0, 12.0};
  fs.sets.common = {"b"};
  fs.sets.keyword_only = {"c"};
  fs.sets.entity_only = {"a"};
  fs.sets.union_all = {"a", "b", "c"};
  fs.sets.token_scores = {{"a", 0.5}, {"b", 0.7}, {"c", 5.0}};
  out.push_back(fs);

  out.push_back({"empty scoring set, no phrases", EventType::just_trendy, {}, 25, {}, {}, 0.0, 0.0, 0.0});
  return out;
}

}  // namespace fixture
