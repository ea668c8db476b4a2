#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/preprocess.hpp"

namespace threatstream {

/// Sparse row, entries sorted by column.
struct SparseVector {
  std::vector<std::pair<std::size_t, double>> entries;

  bool empty() const { return entries.empty(); }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& [_, v] : entries) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(squared_norm()); }
};

inline double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

inline double euclidean_distance(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      s += ia->second * ia->second;
      ++ia;
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      s += ib->second * ib->second;
      ++ib;
    } else {
      const double d = ia->second - ib->second;
      s += d * d;
      ++ia;
      ++ib;
    }
  }
  return std::sqrt(s);
}

/// dot(a,b) / (|a||b|), clamped to [0,1]; 0 when either vector is zero.
inline double cosine_sim(const SparseVector& a, const SparseVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), 0.0, 1.0);
}

struct VectorizerParams {
  double max_df = 0.90;
  double min_df = 0.01;
  std::size_t max_features = 200000;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::map<std::string, std::size_t> term_df, std::size_t document_count)
      : document_count_(document_count) {
    std::size_t col = 0;
    for (const auto& [term, df] : term_df) {
      columns_.emplace(term, col++);
      terms_.push_back(term);
      document_frequencies_.push_back(df);
    }
  }

  std::size_t size() const { return terms_.size(); }
  std::size_t document_count() const { return document_count_; }

  std::optional<std::size_t> column(const std::string& term) const {
    auto it = columns_.find(term);
    if (it == columns_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& term(std::size_t column) const { return terms_.at(column); }
  std::size_t document_frequency(std::size_t column) const { return document_frequencies_.at(column); }
  const std::map<std::string, std::size_t>& columns() const { return columns_; }

 private:
  std::map<std::string, std::size_t> columns_;
  std::vector<std::string> terms_;
  std::vector<std::size_t> document_frequencies_;
  std::size_t document_count_ = 0;
};

/// Unigram vocabulary with document-frequency pruning: keeps terms with
/// min_df*N <= df <= max_df*N, then the max_features most frequent (ties
/// lexicographic). Columns are assigned in lexicographic term order.
inline Vocabulary build_vocabulary(std::span<const TokenDoc> docs, const VectorizerParams& params = {}) {
  if (docs.empty()) throw ArgumentError("cannot build a vocabulary from zero documents");

  std::unordered_map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::unordered_set<std::string_view> seen;
    for (const auto& tok : doc.tokens) {
      if (seen.insert(tok).second) ++df[tok];
    }
  }

  const double n = static_cast<double>(docs.size());
  const double min_count = params.min_df * n;
  const double max_count = params.max_df * n;
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [term, count] : df) {
    const double c = static_cast<double>(count);
    if (c >= min_count && c <= max_count) kept.emplace_back(term, count);
  }
  if (kept.empty()) throw EmptyVocabularyError("every term was pruned by the document-frequency limits");

  if (kept.size() > params.max_features) {
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    kept.resize(params.max_features);
  }
  return Vocabulary(std::map<std::string, std::size_t>(kept.begin(), kept.end()), docs.size());
}

/// One L2-normalized row per document.
struct TfidfMatrix {
  std::vector<SparseVector> rows;
  std::vector<double> idf;
  std::size_t columns = 0;
};

/// Smoothed idf, ln((1+N)/(1+df)) + 1.
inline double smoothed_idf(std::size_t document_count, std::size_t df) {
  return std::log((1.0 + static_cast<double>(document_count)) / (1.0 + static_cast<double>(df))) + 1.0;
}

/// Raw term count times smoothed idf, then L2 row normalization. Documents
/// without in-vocabulary terms get an empty row.
inline TfidfMatrix tfidf_transform(std::span<const TokenDoc> docs, const Vocabulary& vocab) {
  TfidfMatrix m;
  m.columns = vocab.size();
  m.idf.resize(vocab.size());
  for (std::size_t c = 0; c < vocab.size(); ++c) {
    m.idf[c] = smoothed_idf(vocab.document_count(), vocab.document_frequency(c));
  }

  m.rows.reserve(docs.size());
  for (const auto& doc : docs) {
    std::map<std::size_t, double> counts;
    for (const auto& tok : doc.tokens) {
      if (auto col = vocab.column(tok)) counts[*col] += 1.0;
    }
    SparseVector row;
    row.entries.reserve(counts.size());
    for (const auto& [col, tf] : counts) row.entries.emplace_back(col, tf * m.idf[col]);
    const double norm = row.norm();
    if (norm > 0.0) {
      for (auto& e : row.entries) e.second /= norm;
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace threatstream
