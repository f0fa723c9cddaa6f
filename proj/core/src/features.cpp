#include "vidrank/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vidrank/error.hpp"
#include "vidrank/parallel.hpp"

namespace vidrank {

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const int maxc = std::max({r, g, b});
  const int minc = std::min({r, g, b});
  const int delta = maxc - minc;

  Hsv out;
  out.v = maxc / 255.0;
  out.s = maxc == 0 ? 0.0 : static_cast<double>(delta) / maxc;
  if (delta == 0) return out;

  double h = 0.0;
  if (maxc == r) {
    h = 60.0 * (static_cast<double>(g - b) / delta);
  } else if (maxc == g) {
    h = 60.0 * (static_cast<double>(b - r) / delta + 2.0);
  } else {
    h = 60.0 * (static_cast<double>(r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

std::size_t color_bin(const Hsv& hsv) noexcept {
  auto quantize = [](double x, std::size_t bins) {
    auto b = static_cast<std::size_t>(std::floor(x));
    return std::min(b, bins - 1);
  };
  std::size_t h = quantize(hsv.h / (360.0 / kHueBins), kHueBins);
  std::size_t s = quantize(hsv.s * kSaturationBins, kSaturationBins);
  std::size_t v = quantize(hsv.v * kValueBins, kValueBins);
  return h * (kSaturationBins * kValueBins) + s * kValueBins + v;
}

std::array<std::uint64_t, kColorBins> color_histogram_counts(const Frame& frame) {
  validate_frame(frame);
  std::array<std::uint64_t, kColorBins> counts{};
  const std::uint8_t* p = frame.pixels.data();
  const std::uint8_t* end = p + frame.pixels.size();
  for (; p != end; p += 3) {
    ++counts[color_bin(rgb_to_hsv(p[0], p[1], p[2]))];
  }
  return counts;
}

ColorHistogram color_histogram(const Frame& frame) {
  auto counts = color_histogram_counts(frame);
  const double total = static_cast<double>(frame.pixel_count());
  ColorHistogram hist{};
  for (std::size_t i = 0; i < kColorBins; ++i) hist[i] = static_cast<double>(counts[i]) / total;
  return hist;
}

std::array<Kernel3x3, kEdgeTypes> EdgeKernelSet::default_kernels() {
  return {{
      {{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}},      // vertical
      {{{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}}},      // horizontal
      {{{0, 1, 2}, {-1, 0, 1}, {-2, -1, 0}}},      // 45 degrees
      {{{2, 1, 0}, {1, 0, -1}, {0, -1, -2}}},      // 135 degrees
      {{{-1, -1, -1}, {-1, 8, -1}, {-1, -1, -1}}}, // isotropic
  }};
}

namespace {

struct Span1D {
  int begin;
  int end;
};

// Splits [begin, end) into `parts` pieces of floor(len/parts); the last
// piece takes the remainder.
Span1D split(int begin, int end, int parts, int i) {
  int step = (end - begin) / parts;
  int b = begin + i * step;
  int e = (i == parts - 1) ? end : b + step;
  return {b, e};
}

}  // namespace

EdgeHistogram edge_histogram(const Frame& frame, const EdgeKernelSet& kernels) {
  validate_frame(frame);
  if (frame.width < kMinEdgeFrameSide || frame.height < kMinEdgeFrameSide) {
    throw Error(Errc::frame_too_small, "edge histogram needs at least 12x12 pixels, got " +
                                           std::to_string(frame.width) + "x" +
                                           std::to_string(frame.height));
  }
  if (kernels.block_grid < 1) {
    throw Error(Errc::invalid_argument, "block grid must be at least 1");
  }

  const int w = frame.width;
  const int h = frame.height;
  std::vector<double> luma(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < luma.size(); ++i) {
    const std::uint8_t* p = frame.pixels.data() + i * 3;
    luma[i] = (0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]) / 255.0;
  }
  auto at = [&](int x, int y) { return luma[static_cast<std::size_t>(y) * w + x]; };

  EdgeHistogram hist{};
  constexpr int kSubGrid = 4;
  for (int sy = 0; sy < kSubGrid; ++sy) {
    Span1D ys = split(0, h, kSubGrid, sy);
    for (int sx = 0; sx < kSubGrid; ++sx) {
      Span1D xs = split(0, w, kSubGrid, sx);
      const int gx = std::min(kernels.block_grid, xs.end - xs.begin);
      const int gy = std::min(kernels.block_grid, ys.end - ys.begin);
      const std::size_t sub = static_cast<std::size_t>(sy * kSubGrid + sx);
      std::array<int, kEdgeTypes> votes{};

      for (int by = 0; by < gy; ++by) {
        Span1D bys = split(ys.begin, ys.end, gy, by);
        for (int bx = 0; bx < gx; ++bx) {
          Span1D bxs = split(xs.begin, xs.end, gx, bx);

          // Only pixels whose 3x3 neighborhood lies inside the frame respond.
          const int y0 = std::max(bys.begin, 1);
          const int y1 = std::min(bys.end, h - 1);
          const int x0 = std::max(bxs.begin, 1);
          const int x1 = std::min(bxs.end, w - 1);
          if (y0 >= y1 || x0 >= x1) continue;

          std::array<double, kEdgeTypes> sum{};
          for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
              std::array<double, 9> n = {at(x - 1, y - 1), at(x, y - 1), at(x + 1, y - 1),
                                         at(x - 1, y),     at(x, y),     at(x + 1, y),
                                         at(x - 1, y + 1), at(x, y + 1), at(x + 1, y + 1)};
              for (std::size_t k = 0; k < kEdgeTypes; ++k) {
                const Kernel3x3& K = kernels.kernels[k];
                double r = K[0][0] * n[0] + K[0][1] * n[1] + K[0][2] * n[2] +
                           K[1][0] * n[3] + K[1][1] * n[4] + K[1][2] * n[5] +
                           K[2][0] * n[6] + K[2][1] * n[7] + K[2][2] * n[8];
                sum[k] += std::abs(r);
              }
            }
          }
          const double count = static_cast<double>(y1 - y0) * (x1 - x0);
          std::size_t best = 0;
          for (std::size_t k = 1; k < kEdgeTypes; ++k) {
            if (sum[k] > sum[best]) best = k;
          }
          const double response = sum[best] / count;
          if (response > 0.0 && response >= kernels.response_threshold) ++votes[best];
        }
      }

      const double blocks = static_cast<double>(gx) * gy;
      for (std::size_t k = 0; k < kEdgeTypes; ++k) {
        hist[sub * kEdgeTypes + k] = votes[k] / blocks;
      }
    }
  }
  return hist;
}

FeatureVector fuse(std::span<const double> color, std::span<const double> edge) {
  if (color.size() != kColorBins || edge.size() != kEdgeBins) {
    throw Error(Errc::length_mismatch, "fuse expects 256 color and 80 edge values, got " +
                                           std::to_string(color.size()) + " and " +
                                           std::to_string(edge.size()));
  }
  FeatureVector fv;
  std::copy(color.begin(), color.end(), fv.values_.begin());
  std::copy(edge.begin(), edge.end(), fv.values_.begin() + kColorBins);
  return fv;
}

double manhattan_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(Errc::length_mismatch, "manhattan distance over vectors of length " +
                                           std::to_string(a.size()) + " and " +
                                           std::to_string(b.size()));
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

double manhattan_distance(const FeatureVector& a, const FeatureVector& b) {
  return manhattan_distance(a.fused(), b.fused());
}

FeatureVector extract_features(const Frame& frame, const FeatureConfig& config) {
  ColorHistogram color = color_histogram(frame);
  EdgeHistogram edge = edge_histogram(frame, config.kernels);
  return fuse(color, edge);
}

std::vector<FeatureVector> extract_features(const FrameSequence& seq, const FeatureConfig& config,
                                            unsigned threads) {
  std::vector<FeatureVector> out(seq.frames.size());
  parallel_for(seq.frames.size(), threads,
               [&](std::size_t i) { out[i] = extract_features(seq.frames[i], config); });
  return out;
}

}  // namespace vidrank
