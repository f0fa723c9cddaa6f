#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vidrank/features.hpp"
#include "vidrank/frame.hpp"
#include "vidrank/prefilter.hpp"
#include "vidrank/rank.hpp"
#include "vidrank/simgraph.hpp"

namespace vidrank {

enum class Stage { ingest, prefilter, features, graph, rank, select, storyboard, evaluate };

const char* to_string(Stage stage) noexcept;

struct PipelineConfig {
  AdaptiveThresholdParams noise{1.8};
  VarianceBasis variance_basis = VarianceBasis::normalized_bins;
  bool prefilter = true;
  FeatureConfig features;
  double beta_graph = 0.5;
  RankParams rank;
  SelectionParams selection;
  unsigned threads = 1;
};

struct PipelineResult {
  NoiseReport noise;
  FrameSequence kept;
  std::vector<FeatureVector> features;
  SimilarityGraph graph;
  RankState ranks;
  SelectionResult selection;
};

// Wraps a module failure with the stage it came from.
class StageError : public std::runtime_error {
public:
  StageError(Stage stage, const std::string& message)
      : std::runtime_error(message), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }

private:
  Stage stage_;
};

// prefilter -> features -> graph -> ranks -> selection over an ingested
// sequence. Failures surface as StageError.
PipelineResult run_pipeline(const FrameSequence& seq, const PipelineConfig& config);

}  // namespace vidrank
