#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/text.hpp"

namespace threatstream {

enum class PosTag { noun, adj, verb, adv, other };

inline PosTag parse_pos_tag(std::string_view s) {
  if (s == "noun") return PosTag::noun;
  if (s == "adj") return PosTag::adj;
  if (s == "verb") return PosTag::verb;
  if (s == "adv") return PosTag::adv;
  if (s == "other") return PosTag::other;
  throw ParseError("unknown POS tag '" + std::string(s) + "'");
}

/// Unigram word -> tag table.
class PosLexicon {
 public:
  void add(std::string_view word, PosTag tag) { tags_[to_lower(word)] = tag; }

  /// "word<TAB>tag" per line.
  static PosLexicon parse(std::istream& in) {
    PosLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) {
        throw ParseError("POS lexicon line " + std::to_string(line_no) + ": expected 'word<TAB>tag'");
      }
      try {
        lex.add(std::string_view(line).substr(0, tab), parse_pos_tag(std::string_view(line).substr(tab + 1)));
      } catch (const ParseError& e) {
        throw ParseError("POS lexicon line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    return lex;
  }

  static PosLexicon load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open POS lexicon " + path.string());
    return parse(in);
  }

  /// Lexicon tag; otherwise nominal suffixes and unknown words are nouns.
  PosTag tag(std::string_view word) const {
    if (auto it = tags_.find(std::string(word)); it != tags_.end()) return it->second;
    return PosTag::noun;
  }

  std::size_t size() const { return tags_.size(); }

 private:
  std::unordered_map<std::string, PosTag> tags_;
};

/// Maximal chunks matching (adj)* (noun)+, lowercased and space-joined.
inline std::vector<std::string> extract_noun_phrases(std::string_view text, const PosLexicon& lexicon) {
  const auto tokens = split_alnum(text);
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (const auto& t : tokens) tags.push_back(lexicon.tag(t));

  std::vector<std::string> phrases;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t j = i;
    while (j < tokens.size() && tags[j] == PosTag::adj) ++j;
    const std::size_t noun_start = j;
    while (j < tokens.size() && tags[j] == PosTag::noun) ++j;
    if (j > noun_start) {
      phrases.push_back(join(std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                                      tokens.begin() + static_cast<std::ptrdiff_t>(j))));
      i = j;
    } else {
      i = j > i ? j : i + 1;
    }
  }
  return phrases;
}

}  // namespace threatstream
