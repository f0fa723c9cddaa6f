#include "vidrank/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vidrank/error.hpp"
#include "vidrank/parallel.hpp"
#include "vidrank/prefilter.hpp"

namespace vidrank {

DistanceMatrix distance_matrix(std::span<const FeatureVector> features, unsigned threads) {
  const std::size_t n = features.size();
  DistanceMatrix dm(n);
  // Each task fills the upper part of its row; the mirror is copied after.
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) dm(i, j) = manhattan_distance(features[i], features[j]);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) dm(j, i) = dm(i, j);
  }
  return dm;
}

std::size_t SimilarityGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& row : adjacency) twice += row.size();
  return twice / 2;
}

bool SimilarityGraph::has_edge(std::size_t u, std::size_t v) const noexcept {
  const auto& row = adjacency[u];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& nb, std::size_t x) { return nb.node < x; });
  return it != row.end() && it->node == v;
}

double SimilarityGraph::similarity(std::size_t u, std::size_t v) const noexcept {
  const auto& row = adjacency[u];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& nb, std::size_t x) { return nb.node < x; });
  return (it != row.end() && it->node == v) ? it->similarity : 0.0;
}

SimilarityGraph build_graph(const DistanceMatrix& dm, double beta_graph,
                            std::vector<std::size_t> frame_index_of) {
  if (!(beta_graph >= 0.0)) throw Error(Errc::invalid_argument, "beta_graph must be non-negative");
  const std::size_t n = dm.size();
  if (n == 0) throw Error(Errc::empty_input, "cannot build a graph over zero frames");
  if (frame_index_of.empty()) {
    frame_index_of.resize(n);
    std::iota(frame_index_of.begin(), frame_index_of.end(), std::size_t{0});
  }
  if (frame_index_of.size() != n) {
    throw Error(Errc::length_mismatch, "frame index map does not match the node count");
  }

  SimilarityGraph g;
  g.n = n;
  g.frame_index_of = std::move(frame_index_of);
  g.adjacency.resize(n);
  if (n == 1) return g;

  double d_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d_max = std::max(d_max, dm(i, j));
  }

  std::vector<double> sims;
  sims.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sims.push_back(d_max > 0.0 ? 1.0 - dm(i, j) / d_max : 1.0);
    }
  }
  g.threshold = adaptive_threshold(sims, AdaptiveThresholdParams{beta_graph});

  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double s = sims[k];
      if (s >= g.threshold && s > 0.0) {
        g.adjacency[i].push_back({j, s});
        g.adjacency[j].push_back({i, s});
      }
    }
  }
  // Rows are filled in increasing j for i < j and increasing i for the
  // mirrored half, so each list is already sorted.
  return g;
}

std::vector<double> WalkMatrix::dense() const {
  const std::size_t n = rows.size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Entry& e : rows[i]) out[i * n + e.column] = e.weight;
  }
  return out;
}

WalkMatrix row_normalize(const SimilarityGraph& g) {
  WalkMatrix w;
  w.rows.resize(g.n);
  for (std::size_t u = 0; u < g.n; ++u) {
    const auto& adj = g.adjacency[u];
    if (adj.empty()) continue;
    const double weight = 1.0 / static_cast<double>(adj.size());
    w.rows[u].reserve(adj.size());
    for (const Neighbor& nb : adj) w.rows[u].push_back({nb.node, weight});
  }
  return w;
}

}  // namespace vidrank
