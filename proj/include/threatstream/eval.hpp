#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "threatstream/error.hpp"

namespace threatstream {

/// Counts and percentage rates of detected events against ground truth.
struct ConfusionReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
  double tn_rate = 0.0;
  double precision = 0.0;
  // false when nothing was detected; precision is then reported as 0
  bool precision_defined = true;
};

namespace detail {

inline double percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace detail

/// tp = |D ∩ T|, fp = |D − T|, fn = |T − D|, tn = non_events − fp.
inline ConfusionReport confusion(const std::set<std::string>& detected, const std::set<std::string>& truth,
                                 std::size_t non_events) {
  ConfusionReport r;
  for (const auto& k : detected) (truth.count(k) ? r.tp : r.fp) += 1;
  r.fn = truth.size() - r.tp;
  if (r.fp > non_events) {
    throw AlignmentError(std::to_string(r.fp) + " false positives exceed the " + std::to_string(non_events) +
                         " annotated non-event clusters");
  }
  r.tn = non_events - r.fp;
  r.tp_rate = detail::percent(r.tp, r.tp + r.fn);
  r.fn_rate = detail::percent(r.fn, r.tp + r.fn);
  r.fp_rate = detail::percent(r.fp, r.fp + r.tn);
  r.tn_rate = detail::percent(r.tn, r.fp + r.tn);
  r.precision_defined = r.tp + r.fp > 0;
  r.precision = detail::percent(r.tp, r.tp + r.fp);
  return r;
}

/// Sum of squared rank differences over a shared key set.
inline std::int64_t ranking_sse(const std::map<std::string, int>& system_ranks,
                                const std::map<std::string, int>& annotator_ranks) {
  std::vector<std::string> only_system, only_annotator;
  for (const auto& [k, _] : system_ranks) {
    if (!annotator_ranks.count(k)) only_system.push_back(k);
  }
  for (const auto& [k, _] : annotator_ranks) {
    if (!system_ranks.count(k)) only_annotator.push_back(k);
  }
  if (!only_system.empty() || !only_annotator.empty()) {
    std::string msg = "ranking key sets differ;";
    if (!only_system.empty()) {
      msg += " only in system:";
      for (const auto& k : only_system) msg += " " + k;
    }
    if (!only_annotator.empty()) {
      msg += " only in annotations:";
      for (const auto& k : only_annotator) msg += " " + k;
    }
    throw ArgumentError(msg);
  }
  std::int64_t sse = 0;
  for (const auto& [k, r] : system_ranks) {
    const std::int64_t d = r - annotator_ranks.at(k);
    sse += d * d;
  }
  return sse;
}

/// Manual link from a detected cluster to an annotated event key.
struct AlignmentEntry {
  std::size_t interval = 0;
  int detected_cluster_id = 0;
  std::string event_key;
};

/// JSON-lines {detected_cluster_id, event_key[, interval]}; interval defaults to 0.
inline std::vector<AlignmentEntry> parse_alignment(std::istream& in) {
  std::vector<AlignmentEntry> out;
  std::set<std::pair<std::size_t, int>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "alignment line " + std::to_string(line_no) + ": ";
    AlignmentEntry e;
    try {
      const auto obj = nlohmann::json::parse(line);
      if (!obj.is_object()) throw ParseError(where + "expected a JSON object");
      const auto id = obj.find("detected_cluster_id");
      const auto key = obj.find("event_key");
      if (id == obj.end() || !id->is_number_integer() || id->get<std::int64_t>() < 0) {
        throw ParseError(where + "detected_cluster_id must be a non-negative integer");
      }
      if (key == obj.end() || !key->is_string() || key->get<std::string>().empty()) {
        throw ParseError(where + "event_key must be a non-empty string");
      }
      e.detected_cluster_id = id->get<int>();
      e.event_key = key->get<std::string>();
      if (auto iv = obj.find("interval"); iv != obj.end()) {
        if (!iv->is_number_integer() || iv->get<std::int64_t>() < 0) {
          throw ParseError(where + "interval must be a non-negative integer");
        }
        e.interval = iv->get<std::size_t>();
      }
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(where + ex.what());
    }
    if (!seen.emplace(e.interval, e.detected_cluster_id).second) {
      throw AlignmentError(where + "cluster " + std::to_string(e.detected_cluster_id) + " of interval " +
                           std::to_string(e.interval) + " aligned twice");
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<AlignmentEntry> load_alignment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open alignment file " + path.string());
  return parse_alignment(in);
}

}  // namespace threatstream
