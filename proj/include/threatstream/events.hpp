#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/influence.hpp"
#include "threatstream/term_sets.hpp"

namespace threatstream {

enum class EventType { just_trendy, novel_and_trendy, first_story, not_event };

inline std::string to_string(EventType t) {
  switch (t) {
    case EventType::just_trendy: return "just_trendy";
    case EventType::novel_and_trendy: return "novel_and_trendy";
    case EventType::first_story: return "first_story";
    case EventType::not_event: return "not_event";
  }
  return "unknown";
}

inline EventType parse_event_type(std::string_view s) {
  if (s == "just_trendy") return EventType::just_trendy;
  if (s == "novel_and_trendy") return EventType::novel_and_trendy;
  if (s == "first_story") return EventType::first_story;
  if (s == "not_event") return EventType::not_event;
  throw ParseError("unknown event type '" + std::string(s) + "'");
}

struct DetectionParams {
  double cosine_thresh = 0.5;
  std::size_t tweet_thresh = 10;
  std::size_t min_event_tweets = 3;
  double common_to_entity_ratio = 0.20;
  // Ratio rule compares against all entities N instead of N − K.
  bool ratio_uses_full_entity_set = false;
};

/// Tokens of every cluster processed so far. Only grows.
class NoveltyMemory {
 public:
  const std::set<std::string>& tokens() const { return tokens_; }
  bool empty() const { return tokens_.empty(); }
  std::size_t size() const { return tokens_.size(); }

  void absorb(const std::set<std::string>& tokens) { tokens_.insert(tokens.begin(), tokens.end()); }

 private:
  std::set<std::string> tokens_;
};

/// What a cluster contributes to (and is compared against) the memory:
/// entity_only ∪ common.
inline std::set<std::string> novelty_tokens(const TermSets& sets) {
  std::set<std::string> out = sets.entity_only;
  out.insert(sets.common.begin(), sets.common.end());
  return out;
}

/// Cosine of the binary indicator vectors, |A∩B| / sqrt(|A||B|).
inline double novelty_similarity(const std::set<std::string>& cluster_tokens, const NoveltyMemory& memory) {
  if (cluster_tokens.empty() || memory.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& t : cluster_tokens) shared += memory.tokens().count(t);
  return static_cast<double>(shared) /
         std::sqrt(static_cast<double>(cluster_tokens.size()) * static_cast<double>(memory.size()));
}

inline NoveltyMemory update_memory(NoveltyMemory memory, const TermSets& sets) {
  memory.absorb(novelty_tokens(sets));
  return memory;
}

/// Similar clusters can only be just_trendy (big enough and focused enough);
/// dissimilar clusters, and the very first cluster, are novel_and_trendy,
/// first_story, or too small to count.
inline EventType classify_event(std::size_t tweet_count, double sim, const TermSets& sets,
                                const DetectionParams& params, bool is_first_cluster_ever) {
  if (sim >= params.cosine_thresh && !is_first_cluster_ever) {
    const std::size_t entity_count =
        params.ratio_uses_full_entity_set ? sets.entities.size() : sets.entity_only.size();
    const bool focused =
        static_cast<double>(sets.common.size()) > params.common_to_entity_ratio * static_cast<double>(entity_count);
    return tweet_count >= params.tweet_thresh && focused ? EventType::just_trendy : EventType::not_event;
  }
  if (tweet_count < params.min_event_tweets) return EventType::not_event;
  return tweet_count >= params.tweet_thresh ? EventType::novel_and_trendy : EventType::first_story;
}

struct EventScores {
  double entity = 0.0;
  double influence = 0.0;
  double total = 0.0;
};

/// Tokens whose scores make up the entity score of an event type.
inline std::set<std::string> scoring_set(EventType type, const TermSets& sets) {
  std::set<std::string> out;
  switch (type) {
    case EventType::just_trendy:
      out = sets.common;
      break;
    case EventType::novel_and_trendy:
      out = sets.keyword_only;
      out.insert(sets.common.begin(), sets.common.end());
      break;
    case EventType::first_story:
      std::set_difference(sets.union_all.begin(), sets.union_all.end(), sets.keyword_only.begin(),
                          sets.keyword_only.end(), std::inserter(out, out.end()));
      out.insert(sets.common.begin(), sets.common.end());
      break;
    case EventType::not_event:
      throw ArgumentError("not_event clusters are not scored");
  }
  return out;
}

/// entity = multiplier * sum of token scores over the scoring set, where the
/// multiplier is the tweet count for trendy types and tweet_thresh for first
/// stories; influence = sum of the weights of the distinct phrases used.
inline EventScores score_event(EventType type, const TermSets& sets, std::size_t tweet_count,
                               const PhraseWeights& phrase_weights, const std::set<std::string>& event_phrases,
                               const DetectionParams& params) {
  double token_sum = 0.0;
  for (const auto& t : scoring_set(type, sets)) token_sum += sets.score(t);
  const double multiplier = type == EventType::first_story ? static_cast<double>(params.tweet_thresh)
                                                           : static_cast<double>(tweet_count);
  EventScores s;
  s.entity = multiplier * token_sum;
  for (const auto& p : event_phrases) s.influence += phrase_weights.weight(p);
  s.total = s.entity + s.influence;
  return s;
}

struct EventRecord {
  std::size_t interval_index = 0;
  int cluster_id = 0;
  EventType event_type = EventType::not_event;
  std::size_t tweet_count = 0;
  double entity_score = 0.0;
  double influence_score = 0.0;
  double total_score = 0.0;
  int rank = 0;
  std::vector<std::string> keywords;
  std::vector<std::string> tweet_ids;
};

/// Orders by total score (then tweet count, then cluster id) and assigns ranks 1..E.
inline std::vector<EventRecord> rank_events(std::vector<EventRecord> events) {
  for (const auto& e : events) {
    if (e.event_type == EventType::not_event) throw ArgumentError("not_event clusters cannot be ranked");
  }
  std::sort(events.begin(), events.end(), [](const EventRecord& a, const EventRecord& b) {
    if (a.total_score != b.total_score) return a.total_score > b.total_score;
    if (a.tweet_count != b.tweet_count) return a.tweet_count > b.tweet_count;
    return a.cluster_id < b.cluster_id;
  });
  for (std::size_t i = 0; i < events.size(); ++i) events[i].rank = static_cast<int>(i + 1);
  return events;
}

}  // namespace threatstream
