#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vidrank/frame.hpp"

namespace vidrank {

inline constexpr std::size_t kHueBins = 16;
inline constexpr std::size_t kSaturationBins = 4;
inline constexpr std::size_t kValueBins = 4;
inline constexpr std::size_t kColorBins = kHueBins * kSaturationBins * kValueBins;  // 256
inline constexpr std::size_t kSubImages = 16;
inline constexpr std::size_t kEdgeTypes = 5;
inline constexpr std::size_t kEdgeBins = kSubImages * kEdgeTypes;  // 80
inline constexpr std::size_t kFeatureDims = kColorBins + kEdgeBins;  // 336

using ColorHistogram = std::array<double, kColorBins>;
using EdgeHistogram = std::array<double, kEdgeBins>;

struct Hsv {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

// Hexcone conversion; hue is 0 for achromatic input.
Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

// h_bin * 16 + s_bin * 4 + v_bin.
std::size_t color_bin(const Hsv& hsv) noexcept;

// L1-normalized 16x4x4 HSV histogram.
ColorHistogram color_histogram(const Frame& frame);

// Raw per-bin pixel counts of the same quantization.
std::array<std::uint64_t, kColorBins> color_histogram_counts(const Frame& frame);

enum class EdgeType : std::uint8_t { vertical = 0, horizontal, diag45, diag135, isotropic };

using Kernel3x3 = std::array<std::array<double, 3>, 3>;

struct EdgeKernelSet {
  // Ordered as EdgeType.
  std::array<Kernel3x3, kEdgeTypes> kernels = default_kernels();
  // Applied to mean absolute responses on luminance scaled to [0, 1].
  double response_threshold = 11.0 / 255.0;
  // Blocks per axis inside each sub-image.
  int block_grid = 4;

  static std::array<Kernel3x3, kEdgeTypes> default_kernels();
};

inline constexpr int kMinEdgeFrameSide = 12;

// 4x4 sub-images, each split into block_grid x block_grid blocks. A block
// votes for the edge type with the largest mean absolute kernel response if
// that response reaches the threshold. Bins of a sub-image are divided by its
// block count. Throws Error(frame_too_small) below 12x12.
EdgeHistogram edge_histogram(const Frame& frame, const EdgeKernelSet& kernels = {});

class FeatureVector {
public:
  FeatureVector() { values_.fill(0.0); }

  std::span<const double, kColorBins> color() const noexcept {
    return std::span<const double, kFeatureDims>(values_).first<kColorBins>();
  }
  std::span<const double, kEdgeBins> edge() const noexcept {
    return std::span<const double, kFeatureDims>(values_).last<kEdgeBins>();
  }
  std::span<const double, kFeatureDims> fused() const noexcept { return values_; }

  friend FeatureVector fuse(std::span<const double> color, std::span<const double> edge);

private:
  std::array<double, kFeatureDims> values_;
};

// Serial fusion: color followed by edge, unweighted. Throws
// Error(length_mismatch) unless the inputs have 256 and 80 entries.
FeatureVector fuse(std::span<const double> color, std::span<const double> edge);

// Sum of absolute differences. Throws Error(length_mismatch).
double manhattan_distance(std::span<const double> a, std::span<const double> b);
double manhattan_distance(const FeatureVector& a, const FeatureVector& b);

struct FeatureConfig {
  EdgeKernelSet kernels;
};

FeatureVector extract_features(const Frame& frame, const FeatureConfig& config = {});

// Per-frame extraction over `threads` workers; result order follows seq.
std::vector<FeatureVector> extract_features(const FrameSequence& seq,
                                            const FeatureConfig& config = {},
                                            unsigned threads = 1);

}  // namespace vidrank
