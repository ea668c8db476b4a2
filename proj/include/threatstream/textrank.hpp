#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/scored_term.hpp"
#include "threatstream/text.hpp"

namespace threatstream {

struct TextRankParams {
  std::size_t window = 2;
  double damping = 0.85;
  double tol = 1e-6;
  std::size_t max_iter = 100;
  double keyword_fraction = 1.0 / 3.0;
};

/// Undirected, unweighted graph; vertices in order of first appearance.
struct CooccurrenceGraph {
  std::vector<std::string> vertices;
  std::vector<std::vector<std::size_t>> adjacency;
};

/// Links every pair of distinct tokens that fall inside a sliding window of
/// `window` consecutive tokens.
inline CooccurrenceGraph build_cooccurrence_graph(std::span<const std::string> tokens, std::size_t window) {
  if (window < 2) throw ArgumentError("textrank window must be at least 2");
  CooccurrenceGraph g;
  std::unordered_map<std::string, std::size_t> id;
  std::vector<std::size_t> seq;
  seq.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto [it, inserted] = id.emplace(t, g.vertices.size());
    if (inserted) g.vertices.push_back(t);
    seq.push_back(it->second);
  }
  std::vector<std::set<std::size_t>> adj(g.vertices.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size() && j < i + window; ++j) {
      if (seq[i] == seq[j]) continue;
      adj[seq[i]].insert(seq[j]);
      adj[seq[j]].insert(seq[i]);
    }
  }
  g.adjacency.reserve(adj.size());
  for (auto& s : adj) g.adjacency.emplace_back(s.begin(), s.end());
  return g;
}

/// Iterates S(v) = (1-d) + d * sum_{u in adj(v)} S(u)/deg(u) from S = 1
/// until the largest change drops below tol or max_iter sweeps ran.
inline std::vector<double> textrank_scores(const CooccurrenceGraph& g, const TextRankParams& params = {}) {
  const std::size_t n = g.vertices.size();
  std::vector<double> score(n, 1.0);
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
    double max_change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double votes = 0.0;
      for (auto u : g.adjacency[v]) votes += score[u] / static_cast<double>(g.adjacency[u].size());
      next[v] = (1.0 - params.damping) + params.damping * votes;
      max_change = std::max(max_change, std::abs(next[v] - score[v]));
    }
    score.swap(next);
    if (max_change < params.tol) break;
  }
  return score;
}

/// All vertices with their scores, highest first (ties by term).
inline std::vector<ScoredTerm> textrank_rank(std::span<const std::string> tokens, const TextRankParams& params = {}) {
  const auto g = build_cooccurrence_graph(tokens, params.window);
  const auto s = textrank_scores(g, params);
  std::vector<ScoredTerm> out;
  out.reserve(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) out.push_back({g.vertices[v], s[v], TermKind::keyword});
  std::sort(out.begin(), out.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
    return a.raw_score != b.raw_score ? a.raw_score > b.raw_score : a.term < b.term;
  });
  return out;
}

/// Ranks the alphanumeric tokens (length >= 2) of raw text.
inline std::vector<ScoredTerm> textrank_keywords(std::string_view text, const TextRankParams& params = {}) {
  std::vector<std::string> tokens;
  for (auto& t : split_alnum(text)) {
    if (t.size() >= 2) tokens.push_back(std::move(t));
  }
  return textrank_rank(tokens, params);
}

/// Keyword set K: the leading ceil(fraction * n) ranked terms, at least one.
inline std::vector<ScoredTerm> select_keywords(std::vector<ScoredTerm> ranked, double fraction) {
  if (ranked.empty()) return ranked;
  const auto want = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(ranked.size()) - 1e-9));
  ranked.resize(std::clamp<std::size_t>(want, 1, ranked.size()));
  return ranked;
}

}  // namespace threatstream
