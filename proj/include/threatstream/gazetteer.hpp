#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/scored_term.hpp"
#include "threatstream/text.hpp"

namespace threatstream {

struct GazetteerEntry {
  std::string surface;  // normalized: alnum tokens joined by single spaces
  std::string type;
  double confidence = 0.0;
};

/// Surface-form dictionary for entity recognition.
class Gazetteer {
 public:
  void add(std::string_view surface, std::string type, double confidence) {
    const auto key = normalize_phrase(surface);
    if (key.empty()) return;
    const auto width = static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ') + 1);
    max_tokens_ = std::max(max_tokens_, width);
    GazetteerEntry entry{key, std::move(type), confidence};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(key, std::move(entry));
    } else if (confidence > it->second.confidence) {
      it->second = std::move(entry);
    }
  }

  /// "surface form<TAB>type<TAB>confidence" per line, confidence in [0,1].
  static Gazetteer parse(std::istream& in) {
    Gazetteer g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      const auto where = "gazetteer line " + std::to_string(line_no) + ": ";
      if (t2 == std::string::npos) throw ParseError(where + "expected 'surface<TAB>type<TAB>confidence'");
      double conf = 0.0;
      try {
        std::size_t used = 0;
        const auto field = line.substr(t2 + 1);
        conf = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(where + "confidence is not a number");
      }
      if (!(conf >= 0.0 && conf <= 1.0)) throw ParseError(where + "confidence outside [0,1]");
      g.add(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), conf);
    }
    return g;
  }

  static Gazetteer load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open gazetteer " + path.string());
    return parse(in);
  }

  std::size_t size() const { return entries_.size(); }

  /// Longest-match scan over the lowercased token stream; a match consumes
  /// its tokens so shorter overlapping forms are suppressed. Each entity is
  /// reported once, in order of first occurrence.
  std::vector<ScoredTerm> recognize(std::string_view text) const {
    const auto tokens = split_alnum(text);
    std::vector<ScoredTerm> out;
    std::unordered_map<std::string, std::size_t> position;
    std::size_t i = 0;
    while (i < tokens.size()) {
      std::size_t matched = 0;
      const GazetteerEntry* hit = nullptr;
      for (std::size_t len = std::min(max_tokens_, tokens.size() - i); len >= 1; --len) {
        std::string key = tokens[i];
        for (std::size_t k = 1; k < len; ++k) key += ' ' + tokens[i + k];
        if (auto it = entries_.find(key); it != entries_.end()) {
          hit = &it->second;
          matched = len;
          break;
        }
      }
      if (!hit) {
        ++i;
        continue;
      }
      auto [pos, inserted] = position.emplace(hit->surface, out.size());
      if (inserted) out.push_back({hit->surface, hit->confidence, TermKind::entity});
      i += matched;
    }
    return out;
  }

 private:
  std::unordered_map<std::string, GazetteerEntry> entries_;
  std::size_t max_tokens_ = 1;
};

inline std::vector<ScoredTerm> recognize_entities_gazetteer(std::string_view text, const Gazetteer& gazetteer) {
  return gazetteer.recognize(text);
}

}  // namespace threatstream
