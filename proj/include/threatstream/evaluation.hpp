#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "threatstream/error.hpp"
#include "threatstream/eval.hpp"
#include "threatstream/ingest.hpp"
#include "threatstream/report.hpp"

namespace threatstream {

struct EvaluationResult {
  ConfusionReport confusion;
  std::int64_t ranking_sse = 0;
  // matched event keys with their dense system / annotator ranks
  std::map<std::string, int> system_ranks;
  std::map<std::string, int> annotator_ranks;
  std::vector<std::string> unaligned_events;
};

/// Scores a detection report against annotations through an explicit
/// cluster -> event_key alignment.
///
/// Every detected event counts as one detection: aligned ones under their
/// event key, unaligned ones as false positives. Ranking error is measured
/// over the true positives after re-ranking both sides densely (1..k) within
/// that set, system order being (interval, rank).
inline EvaluationResult evaluate_report(const DetectionReport& report, const AnnotationSet& annotations,
                                        const std::vector<AlignmentEntry>& alignment) {
  std::map<std::pair<std::size_t, int>, const EventRecord*> events;
  for (const auto& iv : report.intervals) {
    for (const auto& e : iv.events) events.emplace(std::make_pair(iv.interval, e.cluster_id), &e);
  }

  std::map<std::pair<std::size_t, int>, std::string> key_of;
  for (const auto& a : alignment) {
    const auto id = std::make_pair(a.interval, a.detected_cluster_id);
    if (!events.count(id)) {
      throw AlignmentError("alignment names cluster " + std::to_string(a.detected_cluster_id) + " of interval " +
                           std::to_string(a.interval) + ", which is not a detected event");
    }
    key_of[id] = a.event_key;
  }

  EvaluationResult result;
  std::set<std::string> detected;
  // best (interval, rank) per detected key
  std::map<std::string, std::pair<std::size_t, int>> position;
  for (const auto& [id, e] : events) {
    auto it = key_of.find(id);
    if (it == key_of.end()) {
      const auto key = "unaligned:" + std::to_string(id.first) + ":" + std::to_string(id.second);
      result.unaligned_events.push_back(key);
      detected.insert(key);
      continue;
    }
    detected.insert(it->second);
    const auto pos = std::make_pair(id.first, e->rank);
    auto [slot, inserted] = position.emplace(it->second, pos);
    if (!inserted) slot->second = std::min(slot->second, pos);
  }

  std::set<std::string> truth;
  std::map<std::string, int> annotator_rank;
  for (const auto& ev : annotations.events) {
    truth.insert(ev.event_key);
    annotator_rank[ev.event_key] = ev.annotator_rank;
  }
  result.confusion = confusion(detected, truth, annotations.non_event_clusters);

  std::vector<std::string> matched;
  for (const auto& k : detected) {
    if (truth.count(k)) matched.push_back(k);
  }
  auto by_system = matched;
  std::sort(by_system.begin(), by_system.end(),
            [&](const auto& a, const auto& b) { return std::tie(position.at(a), a) < std::tie(position.at(b), b); });
  auto by_annotator = matched;
  std::sort(by_annotator.begin(), by_annotator.end(),
            [&](const auto& a, const auto& b) { return annotator_rank.at(a) < annotator_rank.at(b); });
  for (std::size_t i = 0; i < matched.size(); ++i) {
    result.system_ranks[by_system[i]] = static_cast<int>(i + 1);
    result.annotator_ranks[by_annotator[i]] = static_cast<int>(i + 1);
  }
  result.ranking_sse = ranking_sse(result.system_ranks, result.annotator_ranks);
  return result;
}

inline nlohmann::ordered_json to_json(const EvaluationResult& r) {
  const auto& c = r.confusion;
  nlohmann::ordered_json ranks = nlohmann::ordered_json::array();
  for (const auto& [key, sys] : r.system_ranks) {
    ranks.push_back({{"event_key", key}, {"system_rank", sys}, {"annotator_rank", r.annotator_ranks.at(key)}});
  }
  return {
      {"tp", c.tp},
      {"fp", c.fp},
      {"fn", c.fn},
      {"tn", c.tn},
      {"tp_rate", c.tp_rate},
      {"fp_rate", c.fp_rate},
      {"fn_rate", c.fn_rate},
      {"tn_rate", c.tn_rate},
      {"precision", c.precision},
      {"precision_defined", c.precision_defined},
      {"ranking_sse", r.ranking_sse},
      {"ranks", std::move(ranks)},
      {"unaligned_events", r.unaligned_events},
  };
}

}  // namespace threatstream
