#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "threatstream/vectorize.hpp"

using namespace threatstream;

namespace {

std::vector<TokenDoc> docs_of(std::initializer_list<std::vector<std::string>> token_lists) {
  std::vector<TokenDoc> out;
  int i = 0;
  for (const auto& t : token_lists) out.push_back({std::to_string(i++), t});
  return out;
}

SparseVector vec(std::vector<std::pair<std::size_t, double>> e) { return SparseVector{std::move(e)}; }

}  // namespace

TEST(Vocabulary, HandCount) {
  const auto docs = docs_of({{"a", "b"}, {"b", "c"}, {"c"}});
  const auto v = build_vocabulary(docs, {1.0, 0.01, 200000});
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v.document_frequency(*v.column("a")), 1u);
  EXPECT_EQ(v.document_frequency(*v.column("b")), 2u);
  EXPECT_EQ(v.document_frequency(*v.column("c")), 2u) << "c occurs in the second and third documents";
  EXPECT_EQ(*v.column("a"), 0u);
  EXPECT_EQ(*v.column("c"), 2u);
}

TEST(Vocabulary, MaxDfPrunes) {
  std::vector<TokenDoc> docs;
  for (int i = 0; i < 100; ++i) docs.push_back({"", {i < 95 ? "common" : "rare", "w" + std::to_string(i)}});
  const auto v = build_vocabulary(docs);
  EXPECT_FALSE(v.column("common"));
  EXPECT_TRUE(v.column("rare"));
}

TEST(Vocabulary, MinDfBoundaryKept) {
  std::vector<TokenDoc> docs;
  for (int i = 0; i < 100; ++i) docs.push_back({"", {"w" + std::to_string(i)}});
  const auto v = build_vocabulary(docs, {0.90, 0.01, 200000});
  EXPECT_EQ(v.size(), 100u) << "df = 1 of 100 sits exactly on min_df = 0.01";
}

TEST(Vocabulary, MaxFeaturesKeepsHighestDfLexicographicTies) {
  const auto docs = docs_of({{"d", "b", "a"}, {"d", "b", "c"}, {"d", "c"}, {"e"}});
  const auto v = build_vocabulary(docs, {1.0, 0.0, 2});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_TRUE(v.column("d"));
  EXPECT_TRUE(v.column("b")) << "b and c tie on df 2; b wins lexicographically";
}

TEST(Vocabulary, Errors) {
  EXPECT_THROW(build_vocabulary(std::vector<TokenDoc>{}), ArgumentError);
  const auto docs = docs_of({{"a"}, {"a"}});
  EXPECT_THROW(build_vocabulary(docs), EmptyVocabularyError);
}

TEST(Vocabulary, MatchesRecountOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<TokenDoc> docs(1 + rng() % 40);
    for (auto& d : docs) {
      for (std::size_t k = rng() % 8; k > 0; --k) d.tokens.push_back("t" + std::to_string(rng() % 15));
    }
    const VectorizerParams p{0.2 + 0.8 * static_cast<double>(rng() % 100) / 100.0,
                             0.3 * static_cast<double>(rng() % 100) / 100.0, 1 + rng() % 20};
    std::map<std::string, std::size_t> df;
    for (const auto& d : docs) {
      std::set<std::string> uniq(d.tokens.begin(), d.tokens.end());
      for (const auto& t : uniq) ++df[t];
    }
    const double n = static_cast<double>(docs.size());
    std::vector<std::pair<std::string, std::size_t>> kept;
    for (const auto& [t, c] : df) {
      if (static_cast<double>(c) >= p.min_df * n && static_cast<double>(c) <= p.max_df * n) kept.emplace_back(t, c);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (kept.size() > p.max_features) kept.resize(p.max_features);
    if (kept.empty()) {
      EXPECT_THROW(build_vocabulary(docs, p), EmptyVocabularyError);
      continue;
    }
    const auto v = build_vocabulary(docs, p);
    ASSERT_EQ(v.size(), kept.size());
    std::map<std::string, std::size_t> expected(kept.begin(), kept.end());
    std::size_t col = 0;
    for (const auto& [t, c] : expected) {
      ASSERT_EQ(v.column(t), col) << t;
      ASSERT_EQ(v.document_frequency(col), c);
      ++col;
    }
  }
}

TEST(Tfidf, SmoothedIdfHandValues) {
  const auto docs = docs_of({{"alpha", "beta"}, {"alpha"}});
  const auto v = build_vocabulary(docs, {1.0, 0.0, 10});
  const auto m = tfidf_transform(docs, v);
  EXPECT_NEAR(m.idf[*v.column("alpha")], 1.0, 1e-12);
  EXPECT_NEAR(m.idf[*v.column("beta")], std::log(1.5) + 1.0, 1e-12);
  ASSERT_EQ(m.rows[0].entries.size(), 2u);
  EXPECT_NEAR(m.rows[0].entries[0].second, 0.5797, 1e-4);
  EXPECT_NEAR(m.rows[0].entries[1].second, 0.8148, 1e-4);
  EXPECT_NEAR(m.rows[1].entries[0].second, 1.0, 1e-12);
}

TEST(Tfidf, SingleDocAndPrunedRow) {
  const auto one = docs_of({{"x"}});
  const auto m = tfidf_transform(one, build_vocabulary(one, {1.0, 0.0, 10}));
  ASSERT_EQ(m.rows[0].entries.size(), 1u);
  EXPECT_DOUBLE_EQ(m.rows[0].entries[0].second, 1.0);

  const auto docs = docs_of({{"a"}, {"a"}, {"b"}});
  const auto v = build_vocabulary(docs, {1.0, 0.5, 10});
  EXPECT_TRUE(tfidf_transform(docs, v).rows[2].empty());
}

TEST(Tfidf, RowNormsProperty) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenDoc> docs(2 + rng() % 30);
    for (auto& d : docs) {
      for (std::size_t k = rng() % 10; k > 0; --k) d.tokens.push_back("t" + std::to_string(rng() % 12));
    }
    Vocabulary v;
    try {
      v = build_vocabulary(docs, {1.0, 0.0, 200000});
    } catch (const EmptyVocabularyError&) {
      continue;
    }
    const auto m = tfidf_transform(docs, v);
    for (const auto& row : m.rows) {
      if (row.empty()) continue;
      ASSERT_NEAR(row.norm(), 1.0, 1e-9);
      for (const auto& [c, w] : row.entries) ASSERT_GT(w, 0.0);
      ASSERT_NEAR(cosine_sim(row, row), 1.0, 1e-12);
    }
  }
}

TEST(Cosine, Examples) {
  const auto a = vec({{0, 1.0}, {1, 1.0}});
  const auto b = vec({{0, 1.0}, {2, 1.0}});
  EXPECT_NEAR(cosine_sim(a, b), 0.5, 1e-12);
  EXPECT_NEAR(cosine_sim(a, a), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(cosine_sim(vec({{0, 1.0}}), vec({{1, 2.0}})), 0.0);
  EXPECT_DOUBLE_EQ(cosine_sim(a, SparseVector{}), 0.0);
  EXPECT_DOUBLE_EQ(cosine_sim(a, b), cosine_sim(b, a));
}

TEST(Euclidean, MergesSparseSupports) {
  const auto a = vec({{0, 3.0}, {2, 1.0}});
  const auto b = vec({{1, 4.0}, {2, 1.0}});
  EXPECT_DOUBLE_EQ(euclidean_distance(a, b), 5.0);
  EXPECT_DOUBLE_EQ(euclidean_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(dot(a, b), 1.0);
}
