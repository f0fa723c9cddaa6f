#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vidrank/frame.hpp"

namespace vidrank {

struct AdaptiveThresholdParams {
  double beta = 1.8;
};

// Mean + beta * population standard deviation. Throws Error(empty_input).
double adaptive_threshold(std::span<const double> values, const AdaptiveThresholdParams& params);

enum class VarianceBasis {
  normalized_bins,  // histogram scaled to sum 1
  raw_counts,       // per-bin pixel counts
};

// Population variance of the 256 color-histogram bins.
double histogram_bin_variance(const Frame& frame,
                              VarianceBasis basis = VarianceBasis::normalized_bins);

struct NoiseReport {
  std::vector<double> variances;  // parallel to the input frames
  double threshold = 0.0;
  double beta = 0.0;
  std::vector<std::size_t> discarded;  // frame indices, ascending

  bool all_discarded(std::size_t input_size) const noexcept {
    return input_size > 0 && discarded.size() == input_size;
  }
};

struct PrefilterResult {
  FrameSequence kept;
  NoiseReport report;
};

// Drops frames whose histogram-bin variance is strictly above the adaptive
// threshold. Kept frames retain their indices and timestamps. When every
// frame is dropped the result is still returned; check
// report.all_discarded(). Throws Error(empty_input) for an empty sequence.
PrefilterResult remove_monochromatic(const FrameSequence& seq,
                                     const AdaptiveThresholdParams& params = {},
                                     VarianceBasis basis = VarianceBasis::normalized_bins,
                                     unsigned threads = 1);

}  // namespace vidrank
