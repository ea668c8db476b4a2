#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "threatstream/error.hpp"
#include "threatstream/timestamp.hpp"

namespace threatstream {

enum class RelevanceLabel { relevant, irrelevant };

/// One resolved stream record.
struct Tweet {
  std::string id;
  std::string author_id;
  Timestamp created_at{};
  std::string text;
  std::uint64_t follower_count = 0;
  std::optional<RelevanceLabel> relevance_label;
};

/// A time slice of the stream. `end` is exclusive except for the last
/// interval, which also holds the tweets stamped exactly at the global max.
struct Interval {
  std::size_t index = 0;
  Timestamp start{};
  Timestamp end{};
  std::vector<Tweet> tweets;
};

enum class EventCategory { first_story, trending, novel_and_trending };

struct AnnotatedEvent {
  std::string event_key;
  int annotator_rank = 0;
  EventCategory category = EventCategory::first_story;
};

struct AnnotationSet {
  std::vector<AnnotatedEvent> events;
  std::size_t non_event_clusters = 0;
};

namespace detail {

inline std::string id_field(const nlohmann::json& v, const char* name) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw ParseError(std::string("field '") + name + "' must be a string or integer");
}

inline const nlohmann::json& required(const nlohmann::json& obj, const char* name,
                                      const char* where = "record") {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) {
    throw ParseError(std::string("missing required field '") + name + "' in " + where);
  }
  return *it;
}

inline std::optional<std::string> embedded_full_text(const nlohmann::json& record,
                                                     const char* key) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_object()) return std::nullopt;
  auto ft = it->find("full_text");
  if (ft == it->end() || !ft->is_string()) return std::nullopt;
  return ft->get<std::string>();
}

}  // namespace detail

/// Builds a Tweet from one decoded record. The text of an embedded retweet
/// wins over an embedded quote, which wins over the record's own text.
inline Tweet parse_tweet(const nlohmann::json& record) {
  if (!record.is_object()) throw ParseError("record is not a JSON object");

  Tweet tweet;
  tweet.id = detail::id_field(detail::required(record, "id"), "id");

  const auto& created = detail::required(record, "created_at");
  if (!created.is_string()) throw ParseError("field 'created_at' must be a string");
  tweet.created_at = parse_timestamp(created.get<std::string>());

  const auto& text = detail::required(record, "text");
  if (!text.is_string()) throw ParseError("field 'text' must be a string");

  const auto& user = detail::required(record, "user");
  if (!user.is_object()) throw ParseError("field 'user' must be an object");
  const auto& followers = detail::required(user, "followers_count", "user");
  if (!followers.is_number_integer() || followers.get<std::int64_t>() < 0) {
    throw ParseError("field 'user.followers_count' must be a non-negative integer");
  }
  tweet.follower_count = followers.get<std::uint64_t>();
  auto uid = user.find("id");
  tweet.author_id = (uid != user.end() && !uid->is_null()) ? detail::id_field(*uid, "user.id")
                                                           : std::string("unknown:" + tweet.id);

  if (auto rt = detail::embedded_full_text(record, "retweeted_status")) {
    tweet.text = std::move(*rt);
  } else if (auto qt = detail::embedded_full_text(record, "quoted_status")) {
    tweet.text = std::move(*qt);
  } else {
    tweet.text = text.get<std::string>();
  }
  if (tweet.text.empty()) throw ParseError("tweet " + tweet.id + " has empty text");

  if (auto it = record.find("relevance_label"); it != record.end() && !it->is_null()) {
    const auto label = it->is_string() ? it->get<std::string>() : std::string{};
    if (label == "relevant") {
      tweet.relevance_label = RelevanceLabel::relevant;
    } else if (label == "irrelevant") {
      tweet.relevance_label = RelevanceLabel::irrelevant;
    } else {
      throw ParseError("field 'relevance_label' must be \"relevant\" or \"irrelevant\"");
    }
  }
  return tweet;
}

/// Reads a JSON-lines stream. Blank lines are skipped; errors carry the line number.
inline std::vector<Tweet> read_tweets(std::istream& in) {
  std::vector<Tweet> tweets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      tweets.push_back(parse_tweet(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return tweets;
}

inline std::vector<Tweet> read_tweets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tweet file " + path.string());
  return read_tweets(in);
}

/// Splits [min created_at, max created_at] into `n` equal-width intervals.
/// Boundary k sits at min + floor(k * span / n) milliseconds, so widths differ
/// by at most 1 ms. Tweets on an inner boundary belong to the later interval.
inline std::vector<Interval> chunk_intervals(std::vector<Tweet> tweets, int n) {
  if (n <= 0) throw ArgumentError("interval count must be positive, got " + std::to_string(n));
  if (tweets.empty()) throw ArgumentError("cannot chunk an empty tweet list");

  std::sort(tweets.begin(), tweets.end(), [](const Tweet& a, const Tweet& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
  const Timestamp lo = tweets.front().created_at;
  const Timestamp hi = tweets.back().created_at;
  const auto span = (hi - lo).count();

  std::vector<Timestamp> bounds(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    bounds[static_cast<std::size_t>(k)] =
        lo + std::chrono::milliseconds{span * static_cast<std::int64_t>(k) / n};
  }

  std::vector<Interval> intervals(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    intervals[k].index = k;
    intervals[k].start = bounds[k];
    intervals[k].end = bounds[k + 1];
  }
  // inner boundaries are bounds[1..n-1]
  const auto inner_begin = bounds.begin() + 1;
  const auto inner_end = bounds.end() - 1;
  for (auto& t : tweets) {
    const auto k = static_cast<std::size_t>(std::upper_bound(inner_begin, inner_end, t.created_at) -
                                            inner_begin);
    intervals[k].tweets.push_back(std::move(t));
  }
  return intervals;
}

namespace detail {

inline EventCategory parse_category(const std::string& s) {
  if (s == "first_story") return EventCategory::first_story;
  if (s == "trending") return EventCategory::trending;
  if (s == "novel_and_trending") return EventCategory::novel_and_trending;
  throw ParseError("unknown category '" + s + "'");
}

}  // namespace detail

inline std::string to_string(EventCategory c) {
  switch (c) {
    case EventCategory::first_story: return "first_story";
    case EventCategory::trending: return "trending";
    case EventCategory::novel_and_trending: return "novel_and_trending";
  }
  return "unknown";
}

/// Annotation JSON-lines: event objects {event_key, annotator_rank, category}
/// plus at most one header object {non_event_clusters}.
inline AnnotationSet parse_annotations(std::istream& in) {
  AnnotationSet set;
  std::set<std::string> keys;
  std::set<int> ranks;
  bool seen_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    try {
      const auto obj = nlohmann::json::parse(line);
      if (!obj.is_object()) throw ParseError("expected a JSON object");
      if (obj.contains("non_event_clusters")) {
        if (seen_header) throw ParseError("duplicate non_event_clusters header");
        const auto& v = obj.at("non_event_clusters");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
          throw ParseError("non_event_clusters must be a non-negative integer");
        }
        set.non_event_clusters = v.get<std::size_t>();
        seen_header = true;
        continue;
      }
      AnnotatedEvent ev;
      const auto& key = detail::required(obj, "event_key");
      if (!key.is_string() || key.get<std::string>().empty()) {
        throw ParseError("event_key must be a non-empty string");
      }
      ev.event_key = key.get<std::string>();
      const auto& rank = detail::required(obj, "annotator_rank");
      if (!rank.is_number_integer() || rank.get<std::int64_t>() < 1) {
        throw ParseError("annotator_rank must be a positive integer");
      }
      ev.annotator_rank = rank.get<int>();
      const auto& cat = detail::required(obj, "category");
      if (!cat.is_string()) throw ParseError("category must be a string");
      ev.category = detail::parse_category(cat.get<std::string>());
      if (!keys.insert(ev.event_key).second) {
        throw ParseError("duplicate event_key '" + ev.event_key + "'");
      }
      if (!ranks.insert(ev.annotator_rank).second) {
        throw ParseError("duplicate annotator_rank " + std::to_string(ev.annotator_rank));
      }
      set.events.push_back(std::move(ev));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + e.what());
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
  }
  return set;
}

inline AnnotationSet load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open annotation file " + path.string());
  return parse_annotations(in);
}

}  // namespace threatstream
