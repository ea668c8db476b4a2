#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "threatstream/cluster.hpp"
#include "threatstream/error.hpp"
#include "threatstream/events.hpp"
#include "threatstream/textrank.hpp"
#include "threatstream/vectorize.hpp"

#ifndef THREATSTREAM_DATA_DIR
#define THREATSTREAM_DATA_DIR "data"
#endif

namespace threatstream {

enum class NerMode { gazetteer, remote };

/// Every tunable of a detection run.
struct RunConfig {
  int intervals = 1;
  bool relevant_only = false;

  bool stemming = false;
  bool spell_correction = true;
  std::size_t max_edit_distance = 2;

  VectorizerParams tfidf;
  DbscanParams dbscan;
  TextRankParams textrank;
  double promote_fraction = 0.10;
  DetectionParams detection;

  NerMode ner_mode = NerMode::gazetteer;
  std::string ner_endpoint;
  int ner_timeout_ms = 2000;
  int ner_retries = 2;
  int ner_max_in_flight = 4;

  std::filesystem::path stopwords = std::filesystem::path(THREATSTREAM_DATA_DIR) / "stopwords_en.txt";
  std::filesystem::path dictionary = std::filesystem::path(THREATSTREAM_DATA_DIR) / "frequency_dictionary_en.txt";
  std::filesystem::path lexicon = std::filesystem::path(THREATSTREAM_DATA_DIR) / "pos_lexicon.tsv";
  std::filesystem::path gazetteer = std::filesystem::path(THREATSTREAM_DATA_DIR) / "gazetteer.tsv";
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + key + "': '" + value + "' is not a valid number");
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "': '" + value + "' is not a valid number");
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("config key '" + key + "': '" + value + "' is not a boolean");
}

inline std::size_t parse_count(const std::string& key, const std::string& value) {
  const auto v = parse_number<long long>(key, value);
  if (v < 0) throw ConfigError("config key '" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// Sets one `key=value` tunable. Unknown keys are rejected.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  static const std::map<std::string, std::function<void(RunConfig&, const std::string&, const std::string&)>>
      setters{
          {"intervals", [](RunConfig& c, auto& k, auto& v) { c.intervals = parse_number<int>(k, v); }},
          {"ingest.relevant_only", [](RunConfig& c, auto& k, auto& v) { c.relevant_only = parse_bool(k, v); }},
          {"preprocess.stemming", [](RunConfig& c, auto& k, auto& v) { c.stemming = parse_bool(k, v); }},
          {"preprocess.spell_correction",
           [](RunConfig& c, auto& k, auto& v) { c.spell_correction = parse_bool(k, v); }},
          {"preprocess.max_edit_distance",
           [](RunConfig& c, auto& k, auto& v) { c.max_edit_distance = parse_count(k, v); }},
          {"tfidf.max_df", [](RunConfig& c, auto& k, auto& v) { c.tfidf.max_df = parse_double(k, v); }},
          {"tfidf.min_df", [](RunConfig& c, auto& k, auto& v) { c.tfidf.min_df = parse_double(k, v); }},
          {"tfidf.max_features", [](RunConfig& c, auto& k, auto& v) { c.tfidf.max_features = parse_count(k, v); }},
          {"dbscan.eps", [](RunConfig& c, auto& k, auto& v) { c.dbscan.eps = parse_double(k, v); }},
          {"dbscan.min_pts", [](RunConfig& c, auto& k, auto& v) { c.dbscan.min_pts = parse_count(k, v); }},
          {"textrank.window", [](RunConfig& c, auto& k, auto& v) { c.textrank.window = parse_count(k, v); }},
          {"textrank.damping", [](RunConfig& c, auto& k, auto& v) { c.textrank.damping = parse_double(k, v); }},
          {"textrank.tol", [](RunConfig& c, auto& k, auto& v) { c.textrank.tol = parse_double(k, v); }},
          {"textrank.max_iter", [](RunConfig& c, auto& k, auto& v) { c.textrank.max_iter = parse_count(k, v); }},
          {"textrank.keyword_fraction",
           [](RunConfig& c, auto& k, auto& v) { c.textrank.keyword_fraction = parse_double(k, v); }},
          {"extract.promote_fraction",
           [](RunConfig& c, auto& k, auto& v) { c.promote_fraction = parse_double(k, v); }},
          {"events.tweet_thresh",
           [](RunConfig& c, auto& k, auto& v) { c.detection.tweet_thresh = parse_count(k, v); }},
          {"events.cosine_thresh",
           [](RunConfig& c, auto& k, auto& v) { c.detection.cosine_thresh = parse_double(k, v); }},
          {"events.min_event_tweets",
           [](RunConfig& c, auto& k, auto& v) { c.detection.min_event_tweets = parse_count(k, v); }},
          {"events.common_to_entity_ratio",
           [](RunConfig& c, auto& k, auto& v) { c.detection.common_to_entity_ratio = parse_double(k, v); }},
          {"events.ratio_uses_full_entity_set",
           [](RunConfig& c, auto& k, auto& v) { c.detection.ratio_uses_full_entity_set = parse_bool(k, v); }},
          {"ner.mode",
           [](RunConfig& c, auto& k, auto& v) {
             if (v == "gazetteer") {
               c.ner_mode = NerMode::gazetteer;
             } else if (v == "remote") {
               c.ner_mode = NerMode::remote;
             } else {
               throw ConfigError("config key '" + k + "' must be gazetteer or remote");
             }
           }},
          {"ner.endpoint", [](RunConfig& c, auto&, auto& v) { c.ner_endpoint = v; }},
          {"ner.timeout_ms", [](RunConfig& c, auto& k, auto& v) { c.ner_timeout_ms = parse_number<int>(k, v); }},
          {"ner.retries", [](RunConfig& c, auto& k, auto& v) { c.ner_retries = parse_number<int>(k, v); }},
          {"ner.max_in_flight",
           [](RunConfig& c, auto& k, auto& v) { c.ner_max_in_flight = parse_number<int>(k, v); }},
          {"resources.stopwords", [](RunConfig& c, auto&, auto& v) { c.stopwords = v; }},
          {"resources.dictionary", [](RunConfig& c, auto&, auto& v) { c.dictionary = v; }},
          {"resources.lexicon", [](RunConfig& c, auto&, auto& v) { c.lexicon = v; }},
          {"resources.gazetteer", [](RunConfig& c, auto&, auto& v) { c.gazetteer = v; }},
      };
  // short aliases matching the command-line flags
  static const std::map<std::string, std::string> aliases{{"tweet_thresh", "events.tweet_thresh"},
                                                          {"cosine_thresh", "events.cosine_thresh"},
                                                          {"stemming", "preprocess.stemming"}};
  const auto alias = aliases.find(key);
  const std::string& canonical = alias == aliases.end() ? key : alias->second;
  auto it = setters.find(canonical);
  if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(c, canonical, value);
}

/// Flat `key=value` text; '#' starts a comment line.
inline void apply_config(RunConfig& c, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      apply_setting(c, detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline void apply_config_file(RunConfig& c, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  apply_config(c, in);
}

/// Rejects values that violate a module precondition.
inline void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(c.intervals >= 1, "intervals must be at least 1");
  require(c.tfidf.max_df > 0.0 && c.tfidf.max_df <= 1.0, "tfidf.max_df must be in (0,1]");
  require(c.tfidf.min_df >= 0.0 && c.tfidf.min_df <= 1.0, "tfidf.min_df must be in [0,1]");
  require(c.tfidf.min_df <= c.tfidf.max_df, "tfidf.min_df must not exceed tfidf.max_df");
  require(c.tfidf.max_features >= 1, "tfidf.max_features must be at least 1");
  require(c.dbscan.eps > 0.0, "dbscan.eps must be positive");
  require(c.dbscan.min_pts >= 1, "dbscan.min_pts must be at least 1");
  require(c.textrank.window >= 2, "textrank.window must be at least 2");
  require(c.textrank.damping > 0.0 && c.textrank.damping < 1.0, "textrank.damping must be in (0,1)");
  require(c.textrank.tol > 0.0, "textrank.tol must be positive");
  require(c.textrank.max_iter >= 1, "textrank.max_iter must be at least 1");
  require(c.textrank.keyword_fraction > 0.0 && c.textrank.keyword_fraction <= 1.0,
          "textrank.keyword_fraction must be in (0,1]");
  require(c.promote_fraction >= 0.0 && c.promote_fraction <= 1.0, "extract.promote_fraction must be in [0,1]");
  require(c.detection.cosine_thresh > 0.0 && c.detection.cosine_thresh <= 1.0,
          "events.cosine_thresh must be in (0,1]");
  require(c.detection.tweet_thresh >= 1, "events.tweet_thresh must be at least 1");
  require(c.detection.min_event_tweets >= 1, "events.min_event_tweets must be at least 1");
  require(c.detection.common_to_entity_ratio >= 0.0, "events.common_to_entity_ratio must be non-negative");
  require(c.ner_timeout_ms > 0, "ner.timeout_ms must be positive");
  require(c.ner_retries >= 0, "ner.retries must be non-negative");
  require(c.ner_max_in_flight >= 1, "ner.max_in_flight must be at least 1");
  require(c.ner_mode != NerMode::remote || !c.ner_endpoint.empty(), "ner.mode=remote requires ner.endpoint");
}

/// Resolved configuration as echoed into reports.
inline nlohmann::ordered_json to_json(const RunConfig& c) {
  return {
      {"intervals", c.intervals},
      {"ingest.relevant_only", c.relevant_only},
      {"preprocess.stemming", c.stemming},
      {"preprocess.spell_correction", c.spell_correction},
      {"preprocess.max_edit_distance", c.max_edit_distance},
      {"tfidf.max_df", c.tfidf.max_df},
      {"tfidf.min_df", c.tfidf.min_df},
      {"tfidf.max_features", c.tfidf.max_features},
      {"tfidf.ngram_range", {1, 1}},
      {"dbscan.eps", c.dbscan.eps},
      {"dbscan.min_pts", c.dbscan.min_pts},
      {"dbscan.metric", "euclidean"},
      {"textrank.window", c.textrank.window},
      {"textrank.damping", c.textrank.damping},
      {"textrank.tol", c.textrank.tol},
      {"textrank.max_iter", c.textrank.max_iter},
      {"textrank.keyword_fraction", c.textrank.keyword_fraction},
      {"extract.promote_fraction", c.promote_fraction},
      {"events.tweet_thresh", c.detection.tweet_thresh},
      {"events.cosine_thresh", c.detection.cosine_thresh},
      {"events.min_event_tweets", c.detection.min_event_tweets},
      {"events.common_to_entity_ratio", c.detection.common_to_entity_ratio},
      {"events.ratio_uses_full_entity_set", c.detection.ratio_uses_full_entity_set},
      {"ner.mode", c.ner_mode == NerMode::gazetteer ? "gazetteer" : "remote"},
      {"ner.endpoint", c.ner_endpoint},
      {"ner.timeout_ms", c.ner_timeout_ms},
      {"ner.retries", c.ner_retries},
      {"ner.max_in_flight", c.ner_max_in_flight},
      {"resources.stopwords", c.stopwords.string()},
      {"resources.dictionary", c.dictionary.string()},
      {"resources.lexicon", c.lexicon.string()},
      {"resources.gazetteer", c.gazetteer.string()},
  };
}

}  // namespace threatstream
