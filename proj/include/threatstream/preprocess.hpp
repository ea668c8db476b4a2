#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/noun_phrases.hpp"
#include "threatstream/porter_stemmer.hpp"
#include "threatstream/spelling.hpp"
#include "threatstream/text.hpp"

namespace threatstream {

/// Cleaned token list of one tweet.
struct TokenDoc {
  std::string tweet_id;
  std::vector<std::string> tokens;
};

using StopwordSet = std::unordered_set<std::string>;

inline StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const auto w = normalize_phrase(line);
    if (!w.empty()) words.insert(w);
  }
  return words;
}

inline StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stopword list " + path.string());
  return parse_stopwords(in);
}

struct CleanOptions {
  bool stemming = false;
  bool spell_correction = true;
};

namespace detail {

inline bool has_digit(std::string_view s) {
  for (char c : s) {
    if (c >= '0' && c <= '9') return true;
  }
  return false;
}

}  // namespace detail

/// lowercase -> split on non-alphanumerics -> spell-correct -> drop stopwords
/// -> optional stem -> drop single-character tokens.
/// Tokens containing digits skip spell correction (identifiers such as CVE numbers).
inline TokenDoc clean_text(std::string_view text, const StopwordSet& stopwords, const FrequencyDictionary* dict,
                           const CleanOptions& options = {}) {
  TokenDoc doc;
  for (auto& raw : split_alnum(text)) {
    std::string tok = (options.spell_correction && dict && !dict->empty() && !detail::has_digit(raw))
                          ? dict->correct(raw)
                          : std::move(raw);
    if (stopwords.count(tok)) continue;
    if (options.stemming) tok = stem(tok);
    if (tok.size() < 2) continue;
    doc.tokens.push_back(std::move(tok));
  }
  return doc;
}

inline TokenDoc clean_text(std::string_view text, const StopwordSet& stopwords, bool stemming,
                           const FrequencyDictionary& dict) {
  return clean_text(text, stopwords, &dict, CleanOptions{stemming, true});
}

}  // namespace threatstream
