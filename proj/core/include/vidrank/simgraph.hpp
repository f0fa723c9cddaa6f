#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vidrank/features.hpp"

namespace vidrank {

// Symmetric n x n matrix of L1 feature distances, zero diagonal.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return d_[i * n_ + j]; }

private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

DistanceMatrix distance_matrix(std::span<const FeatureVector> features, unsigned threads = 1);

struct Neighbor {
  std::size_t node = 0;
  double similarity = 0.0;  // in (0, 1]
};

// Undirected, self-loop-free graph over frames. Neighbor lists are sorted by
// node id.
struct SimilarityGraph {
  std::size_t n = 0;
  std::vector<std::size_t> frame_index_of;
  std::vector<std::vector<Neighbor>> adjacency;
  double threshold = 1.0;

  std::size_t degree(std::size_t u) const noexcept { return adjacency[u].size(); }
  std::size_t edge_count() const noexcept;
  bool has_edge(std::size_t u, std::size_t v) const noexcept;
  // 0 when u and v are not adjacent.
  double similarity(std::size_t u, std::size_t v) const noexcept;
};

// Similarities are 1 - d / d_max over off-diagonal pairs (all 1 when
// d_max = 0). An edge joins u and v when sim >= mean + beta * std of all
// pairwise similarities and sim > 0. `frame_index_of` maps nodes to frame
// indices; when empty, nodes map to 0..n-1.
SimilarityGraph build_graph(const DistanceMatrix& dm, double beta_graph,
                            std::vector<std::size_t> frame_index_of = {});

// Row-normalized binary adjacency: every neighbor of u receives 1/deg(u);
// isolated nodes have an empty row.
struct WalkMatrix {
  struct Entry {
    std::size_t column = 0;
    double weight = 0.0;
  };
  std::vector<std::vector<Entry>> rows;

  std::vector<double> dense() const;  // n * n, row-major
};

WalkMatrix row_normalize(const SimilarityGraph& g);

}  // namespace vidrank
