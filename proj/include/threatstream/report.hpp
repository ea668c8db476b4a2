#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "threatstream/error.hpp"
#include "threatstream/events.hpp"
#include "threatstream/timestamp.hpp"

namespace threatstream {

struct IntervalReport {
  std::size_t interval = 0;
  std::string start;
  std::string end;
  std::size_t tweet_count = 0;
  std::size_t cluster_count = 0;
  std::vector<EventRecord> events;  // rank order
  std::vector<int> not_event_cluster_ids;
  std::string note;
};

struct DetectionReport {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::size_t tweet_count = 0;
  std::vector<IntervalReport> intervals;
  std::vector<std::string> log;
};

inline nlohmann::ordered_json to_json(const EventRecord& e) {
  return {
      {"cluster_id", e.cluster_id},
      {"type", to_string(e.event_type)},
      {"tweet_count", e.tweet_count},
      {"entity_score", e.entity_score},
      {"influence_score", e.influence_score},
      {"total_score", e.total_score},
      {"rank", e.rank},
      {"keywords", e.keywords},
      {"tweet_ids", e.tweet_ids},
  };
}

inline nlohmann::ordered_json to_json(const DetectionReport& r) {
  nlohmann::ordered_json intervals = nlohmann::ordered_json::array();
  for (const auto& iv : r.intervals) {
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (const auto& e : iv.events) events.push_back(to_json(e));
    nlohmann::ordered_json j{
        {"interval", iv.interval},
        {"start", iv.start},
        {"end", iv.end},
        {"tweet_count", iv.tweet_count},
        {"cluster_count", iv.cluster_count},
        {"events", std::move(events)},
        {"not_event_cluster_ids", iv.not_event_cluster_ids},
    };
    if (!iv.note.empty()) j["note"] = iv.note;
    intervals.push_back(std::move(j));
  }
  return {
      {"config", r.config},
      {"tweet_count", r.tweet_count},
      {"intervals", std::move(intervals)},
      {"log", r.log},
  };
}

inline std::string dump_report(const DetectionReport& r) { return to_json(r).dump(2) + "\n"; }

namespace detail {

template <class T>
T get_field(const nlohmann::json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw ParseError(std::string("report lacks field '") + name + "'");
  try {
    return obj.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("report field '") + name + "' has the wrong type");
  }
}

}  // namespace detail

inline DetectionReport parse_report(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  DetectionReport r;
  if (doc.contains("config")) r.config = nlohmann::ordered_json::parse(doc["config"].dump());
  r.tweet_count = doc.contains("tweet_count") ? detail::get_field<std::size_t>(doc, "tweet_count") : 0;
  const auto& intervals = doc.contains("intervals") ? doc["intervals"] : nlohmann::json();
  if (!intervals.is_array()) throw ParseError("report lacks an 'intervals' array");
  for (const auto& iv : intervals) {
    IntervalReport out;
    out.interval = detail::get_field<std::size_t>(iv, "interval");
    out.start = iv.value("start", "");
    out.end = iv.value("end", "");
    out.tweet_count = iv.value("tweet_count", std::size_t{0});
    out.cluster_count = iv.value("cluster_count", std::size_t{0});
    out.note = iv.value("note", "");
    if (iv.contains("not_event_cluster_ids")) {
      out.not_event_cluster_ids = detail::get_field<std::vector<int>>(iv, "not_event_cluster_ids");
    }
    const auto& events = iv.contains("events") ? iv["events"] : nlohmann::json();
    if (!events.is_array()) throw ParseError("interval lacks an 'events' array");
    for (const auto& ej : events) {
      EventRecord e;
      e.interval_index = out.interval;
      e.cluster_id = detail::get_field<int>(ej, "cluster_id");
      e.event_type = parse_event_type(detail::get_field<std::string>(ej, "type"));
      e.tweet_count = detail::get_field<std::size_t>(ej, "tweet_count");
      e.entity_score = ej.value("entity_score", 0.0);
      e.influence_score = ej.value("influence_score", 0.0);
      e.total_score = detail::get_field<double>(ej, "total_score");
      e.rank = detail::get_field<int>(ej, "rank");
      if (ej.contains("keywords")) e.keywords = detail::get_field<std::vector<std::string>>(ej, "keywords");
      if (ej.contains("tweet_ids")) e.tweet_ids = detail::get_field<std::vector<std::string>>(ej, "tweet_ids");
      out.events.push_back(std::move(e));
    }
    std::sort(out.events.begin(), out.events.end(),
              [](const EventRecord& a, const EventRecord& b) { return a.rank < b.rank; });
    r.intervals.push_back(std::move(out));
  }
  return r;
}

inline DetectionReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open report " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

/// Shortest decimal that round-trips.
inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

/// interval,event_index,tweet_count,total_score: one row per event in rank
/// order; event_index is the 0-based rank position.
inline void write_plot_csv(const DetectionReport& r, std::ostream& out) {
  out << "interval,event_index,tweet_count,total_score\n";
  for (const auto& iv : r.intervals) {
    for (std::size_t i = 0; i < iv.events.size(); ++i) {
      out << iv.interval << ',' << i << ',' << iv.events[i].tweet_count << ','
          << format_number(iv.events[i].total_score) << '\n';
    }
  }
}

inline std::string plot_csv(const DetectionReport& r) {
  std::ostringstream out;
  write_plot_csv(r, out);
  return out.str();
}

}  // namespace threatstream
