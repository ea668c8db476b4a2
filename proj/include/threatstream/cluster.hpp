#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "threatstream/error.hpp"
#include "threatstream/ingest.hpp"
#include "threatstream/vectorize.hpp"

namespace threatstream {

inline constexpr int kNoise = -1;

struct DbscanParams {
  double eps = 1.0;
  std::size_t min_pts = 3;
};

namespace detail {

inline constexpr int kUnvisited = -2;

template <class Point, class Distance>
std::vector<std::size_t> region_query(std::span<const Point> points, std::size_t center, double eps,
                                      Distance& distance) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (distance(points[center], points[j]) <= eps) out.push_back(j);
  }
  return out;
}

}  // namespace detail

/// Density-based clustering. Neighborhoods are closed balls (distance <= eps)
/// that include the query point; a point with at least `min_pts` neighbors is
/// core. Points are visited in index order, so a border point reachable from
/// two clusters joins the one discovered first.
///
/// Returns one label per point: a 0-based cluster id or kNoise.
template <class Point, class Distance>
std::vector<int> dbscan(std::span<const Point> points, const DbscanParams& params, Distance distance) {
  if (!(params.eps > 0.0)) throw ArgumentError("dbscan eps must be positive");
  if (params.min_pts < 1) throw ArgumentError("dbscan min_pts must be at least 1");

  std::vector<int> labels(points.size(), detail::kUnvisited);
  int next_cluster = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] != detail::kUnvisited) continue;
    const auto seeds = detail::region_query(points, i, params.eps, distance);
    if (seeds.size() < params.min_pts) {
      labels[i] = kNoise;
      continue;
    }
    const int cluster = next_cluster++;
    labels[i] = cluster;
    std::deque<std::size_t> frontier;
    for (auto q : seeds) {
      if (labels[q] == kNoise) {
        labels[q] = cluster;
      } else if (labels[q] == detail::kUnvisited) {
        labels[q] = cluster;
        frontier.push_back(q);
      }
    }
    while (!frontier.empty()) {
      const auto q = frontier.front();
      frontier.pop_front();
      const auto reach = detail::region_query(points, q, params.eps, distance);
      if (reach.size() < params.min_pts) continue;
      for (auto r : reach) {
        if (labels[r] == kNoise) {
          labels[r] = cluster;
        } else if (labels[r] == detail::kUnvisited) {
          labels[r] = cluster;
          frontier.push_back(r);
        }
      }
    }
  }
  return labels;
}

/// Euclidean DBSCAN over TFIDF rows. Rows without any in-vocabulary term
/// carry no evidence and are labeled noise instead of collapsing into one
/// zero-distance cluster.
inline std::vector<int> dbscan(const TfidfMatrix& matrix, const DbscanParams& params = {}) {
  std::vector<std::size_t> nonzero;
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
    if (!matrix.rows[i].empty()) {
      nonzero.push_back(i);
      rows.push_back(matrix.rows[i]);
    }
  }
  const auto sub = dbscan(std::span<const SparseVector>(rows), params,
                          [](const SparseVector& a, const SparseVector& b) { return euclidean_distance(a, b); });
  std::vector<int> labels(matrix.rows.size(), kNoise);
  for (std::size_t k = 0; k < nonzero.size(); ++k) labels[nonzero[k]] = sub[k];
  return labels;
}

struct Cluster {
  int cluster_id = 0;
  std::vector<std::string> tweet_ids;
  std::vector<std::size_t> member_rows;
  std::string aggregated_text;
};

/// Groups non-noise rows into clusters numbered by first appearance.
inline std::vector<Cluster> build_clusters(std::span<const int> labels, std::span<const Tweet> tweets) {
  if (labels.size() != tweets.size()) throw ArgumentError("labels and tweets differ in length");

  std::map<int, std::size_t> slot_of_label;
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    auto [it, inserted] = slot_of_label.emplace(labels[i], clusters.size());
    if (inserted) {
      clusters.emplace_back();
      clusters.back().cluster_id = static_cast<int>(it->second);
    }
    auto& c = clusters[it->second];
    c.tweet_ids.push_back(tweets[i].id);
    c.member_rows.push_back(i);
    if (!c.aggregated_text.empty()) c.aggregated_text.push_back(' ');
    c.aggregated_text += tweets[i].text;
  }
  return clusters;
}

}  // namespace threatstream
