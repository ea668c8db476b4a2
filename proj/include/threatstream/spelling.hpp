#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/text.hpp"

namespace threatstream {

/// Optimal-string-alignment distance: insertions, deletions, substitutions
/// and transpositions of adjacent characters, each substring edited once.
inline std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        cur[j] = std::min(cur[j], prev2[j - 2] + 1);
      }
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

/// All strings reachable from `word` by deleting at most `max_deletes`
/// characters, the word itself included.
inline std::unordered_set<std::string> delete_variants(std::string_view word, std::size_t max_deletes) {
  std::unordered_set<std::string> out{std::string(word)};
  std::vector<std::string> frontier{std::string(word)};
  for (std::size_t depth = 0; depth < max_deletes; ++depth) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      if (w.empty()) continue;
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::string v = w.substr(0, i) + w.substr(i + 1);
        if (out.insert(v).second) next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Word frequency table with a symmetric-delete index for spelling lookup.
class FrequencyDictionary {
 public:
  explicit FrequencyDictionary(std::size_t max_edit_distance = 2) : max_edit_distance_(max_edit_distance) {}

  /// Adds `count` occurrences of `word`; repeated words accumulate.
  void add(std::string_view word, std::uint64_t count) {
    const std::string w = to_lower(word);
    if (w.empty() || count == 0) return;
    if (auto it = index_.find(w); it != index_.end()) {
      counts_[it->second] += count;
      return;
    }
    const auto id = static_cast<std::uint32_t>(words_.size());
    words_.push_back(w);
    counts_.push_back(count);
    index_.emplace(w, id);
    for (auto& v : delete_variants(w, max_edit_distance_)) deletes_[std::move(v)].push_back(id);
  }

  /// "word count" per line.
  static FrequencyDictionary parse(std::istream& in, std::size_t max_edit_distance = 2) {
    FrequencyDictionary dict(max_edit_distance);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream fields(line);
      std::string word;
      long long count = 0;
      if (!(fields >> word >> count) || count <= 0) {
        throw ParseError("frequency dictionary line " + std::to_string(line_no) + ": expected 'word count'");
      }
      dict.add(word, static_cast<std::uint64_t>(count));
    }
    return dict;
  }

  static FrequencyDictionary load(const std::filesystem::path& path, std::size_t max_edit_distance = 2) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open frequency dictionary " + path.string());
    return parse(in, max_edit_distance);
  }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  std::size_t max_edit_distance() const { return max_edit_distance_; }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<std::uint64_t> frequency(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return counts_[it->second];
  }

  /// Dictionary words indexed under a delete variant.
  std::vector<std::string_view> words_for_variant(std::string_view variant) const {
    std::vector<std::string_view> out;
    if (auto it = deletes_.find(std::string(variant)); it != deletes_.end()) {
      for (auto id : it->second) out.emplace_back(words_[id]);
    }
    return out;
  }

  /// Closest dictionary word by (distance, higher frequency, lexicographic);
  /// the token itself when nothing lies within max_edit_distance.
  std::string correct(std::string_view token) const {
    if (index_.count(std::string(token))) return std::string(token);
    std::size_t best_dist = std::numeric_limits<std::size_t>::max();
    std::uint64_t best_count = 0;
    const std::string* best = nullptr;
    std::unordered_set<std::uint32_t> checked;
    for (const auto& variant : delete_variants(token, max_edit_distance_)) {
      auto it = deletes_.find(variant);
      if (it == deletes_.end()) continue;
      for (auto id : it->second) {
        if (!checked.insert(id).second) continue;
        const auto& word = words_[id];
        const std::size_t len_gap = word.size() > token.size() ? word.size() - token.size()
                                                               : token.size() - word.size();
        if (len_gap > max_edit_distance_) continue;
        const std::size_t dist = damerau_levenshtein(token, word);
        if (dist > max_edit_distance_) continue;
        const bool better = dist < best_dist || (dist == best_dist && counts_[id] > best_count) ||
                            (dist == best_dist && counts_[id] == best_count && word < *best);
        if (better) {
          best_dist = dist;
          best_count = counts_[id];
          best = &word;
        }
      }
    }
    return best ? *best : std::string(token);
  }

 private:
  std::size_t max_edit_distance_;
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> deletes_;
};

inline std::string correct_spelling(std::string_view token, const FrequencyDictionary& dict) {
  return dict.correct(token);
}

}  // namespace threatstream
