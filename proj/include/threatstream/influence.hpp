#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/ingest.hpp"

namespace threatstream {

/// Normalized follower weight per noun phrase for one interval.
struct PhraseWeights {
  std::size_t interval_index = 0;
  std::map<std::string, double> weights;

  /// 0 for phrases never seen in the interval.
  double weight(const std::string& phrase) const {
    auto it = weights.find(phrase);
    return it == weights.end() ? 0.0 : it->second;
  }
};

/// Min-max normalized follower counts over the distinct authors of the
/// interval. An author seen with several counts keeps the largest. When every
/// author has the same count, all weights are 1.
inline std::map<std::string, double> normalize_followers(const Interval& interval) {
  if (interval.tweets.empty()) throw ArgumentError("cannot normalize followers of an empty interval");

  std::map<std::string, std::uint64_t> followers;
  for (const auto& t : interval.tweets) {
    auto& f = followers[t.author_id];
    f = std::max(f, t.follower_count);
  }
  auto [lo_it, hi_it] = std::minmax_element(followers.begin(), followers.end(),
                                            [](const auto& a, const auto& b) { return a.second < b.second; });
  const double lo = static_cast<double>(lo_it->second);
  const double hi = static_cast<double>(hi_it->second);

  std::map<std::string, double> weights;
  for (const auto& [author, count] : followers) {
    weights[author] = hi == lo ? 1.0 : (static_cast<double>(count) - lo) / (hi - lo);
  }
  return weights;
}

/// Each phrase inherits the highest normalized weight among the authors who used it.
inline PhraseWeights build_phrase_weights(const Interval& interval,
                                          const std::map<std::string, std::vector<std::string>>& phrases_per_tweet) {
  PhraseWeights out;
  out.interval_index = interval.index;
  if (interval.tweets.empty()) return out;

  const auto user_weights = normalize_followers(interval);
  for (const auto& t : interval.tweets) {
    auto it = phrases_per_tweet.find(t.id);
    if (it == phrases_per_tweet.end()) continue;
    const double w = user_weights.at(t.author_id);
    for (const auto& phrase : it->second) {
      auto [slot, inserted] = out.weights.emplace(phrase, w);
      if (!inserted) slot->second = std::max(slot->second, w);
    }
  }
  return out;
}

}  // namespace threatstream
