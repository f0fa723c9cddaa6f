#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vidrank/frame.hpp"
#include "vidrank/simgraph.hpp"

namespace vidrank {

struct RankParams {
  double damping = 0.85;
  // Bound on the L1 distance between the returned vector and the exact fixed
  // point.
  double tol = 1e-6;
  int max_iters = 100;
  double initial_rank = 1.0;
  unsigned threads = 1;
};

void validate(const RankParams& p);

struct RankState {
  std::vector<double> vdr;
  std::vector<std::size_t> selected;  // nodes, in selection order
  std::vector<bool> eliminated;       // zeroed as neighbors of a selection
  int iterations = 0;
  bool converged = false;
};

// Synchronous damped walk from the uniform start:
//   vdr'(u) = (1 - d) + d * sum_{v in adj(u)} vdr(v) / deg(v)
// The map is an L1 contraction with factor d, so iteration stops once
// d / (1 - d) * |vdr' - vdr|_1 < tol. When max_iters runs out first the
// result is still returned with converged = false.
RankState compute_ranks(const SimilarityGraph& g, const RankParams& p = {});

enum class PenaltyModel {
  similarity_weighted = 1,  // vdr(u) -= alpha * sim(u, h) * vdr(h)
  uniform = 2,              // vdr(u) -= alpha * vdr(h)
  eliminate = 3,            // vdr(u) = 0
};

std::string to_string(PenaltyModel model);
PenaltyModel parse_model(const std::string& text);  // "1", "MODEL1", ...

struct SelectionParams {
  PenaltyModel model = PenaltyModel::eliminate;
  double alpha = 0.5;
  std::size_t k_frames = 10;
  // Recompute ranks on the surviving subgraph after every pick. Only
  // meaningful for the eliminate model; experimental.
  bool rerank = false;
  RankParams rank;  // used when rerank is set
};

void validate(const SelectionParams& p);

struct KeyFrame {
  std::size_t frame_index = 0;
  double timestamp_s = 0.0;
  double rank = 0.0;  // vdr at the moment of selection
};

struct Summary {
  std::string source_id;
  PenaltyModel model = PenaltyModel::eliminate;
  double alpha = 0.5;
  double damping = 0.85;
  std::size_t k_requested = 0;
  std::size_t k_delivered = 0;
  std::vector<KeyFrame> key_frames;  // ascending frame_index
};

struct SummaryContext {
  std::string source_id;
  Rational sample_rate{1, 1};
  double damping = 0.85;
};

struct SelectionResult {
  RankState state;
  // Nodes in the order they were picked; summary.key_frames is the same set
  // sorted temporally.
  std::vector<std::size_t> pick_order;
  Summary summary;
};

// Greedy extraction: repeatedly take the highest-ranked unselected node
// (ties to the lowest frame index), zero it, and penalize its neighbors per
// the model. Stops after k_frames picks or when no node has positive rank.
SelectionResult select_keyframes(const SimilarityGraph& g, RankState state,
                                 const SelectionParams& sp, const SummaryContext& ctx = {});

}  // namespace vidrank
