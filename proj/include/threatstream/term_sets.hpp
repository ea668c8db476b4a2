#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "threatstream/scored_term.hpp"

namespace threatstream {

/// Token partition of one cluster. With K the keywords and N the entities:
///   common       = (K ∩ N) ∪ promoted top keywords ∪ promoted top entities
///   keyword_only = K − common
///   entity_only  = N − common
///   union_all    = K ∪ N
/// token_scores[t] = sigmoid(keyword score) [+ sigmoid(entity confidence)].
struct TermSets {
  std::set<std::string> common;
  std::set<std::string> keyword_only;
  std::set<std::string> entity_only;
  std::set<std::string> union_all;
  std::set<std::string> keywords;
  std::set<std::string> entities;
  std::map<std::string, double> token_scores;

  double score(const std::string& token) const {
    auto it = token_scores.find(token);
    return it == token_scores.end() ? 0.0 : it->second;
  }
};

namespace detail {

inline std::map<std::string, double> best_scores(std::span<const ScoredTerm> terms) {
  std::map<std::string, double> out;
  for (const auto& t : terms) {
    auto [it, inserted] = out.emplace(t.term, t.raw_score);
    if (!inserted) it->second = std::max(it->second, t.raw_score);
  }
  return out;
}

// Highest-scored ceil(fraction * |terms|) members, ties by term.
inline std::vector<std::string> top_fraction(const std::map<std::string, double>& terms, double fraction) {
  std::vector<std::pair<std::string, double>> ranked(terms.begin(), terms.end());
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });
  const auto want = static_cast<std::size_t>(std::max(0.0, std::ceil(fraction * static_cast<double>(ranked.size()) - 1e-9)));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < want; ++i) out.push_back(ranked[i].first);
  return out;
}

}  // namespace detail

inline TermSets build_term_sets(std::span<const ScoredTerm> keywords, std::span<const ScoredTerm> entities,
                                double promote_fraction = 0.10) {
  const auto k_scores = detail::best_scores(keywords);
  const auto n_scores = detail::best_scores(entities);

  TermSets sets;
  for (const auto& [t, _] : k_scores) sets.keywords.insert(t);
  for (const auto& [t, _] : n_scores) sets.entities.insert(t);

  std::set_intersection(sets.keywords.begin(), sets.keywords.end(), sets.entities.begin(), sets.entities.end(),
                        std::inserter(sets.common, sets.common.end()));
  for (auto& t : detail::top_fraction(k_scores, promote_fraction)) sets.common.insert(std::move(t));
  for (auto& t : detail::top_fraction(n_scores, promote_fraction)) sets.common.insert(std::move(t));

  std::set_difference(sets.keywords.begin(), sets.keywords.end(), sets.common.begin(), sets.common.end(),
                      std::inserter(sets.keyword_only, sets.keyword_only.end()));
  std::set_difference(sets.entities.begin(), sets.entities.end(), sets.common.begin(), sets.common.end(),
                      std::inserter(sets.entity_only, sets.entity_only.end()));
  std::set_union(sets.keywords.begin(), sets.keywords.end(), sets.entities.begin(), sets.entities.end(),
                 std::inserter(sets.union_all, sets.union_all.end()));

  for (const auto& t : sets.union_all) {
    double s = 0.0;
    if (auto it = k_scores.find(t); it != k_scores.end()) s += sigmoid(it->second);
    if (auto it = n_scores.find(t); it != n_scores.end()) s += sigmoid(it->second);
    sets.token_scores.emplace(t, s);
  }
  return sets;
}

}  // namespace threatstream
