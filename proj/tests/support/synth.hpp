#pragma once

// Synthetic inputs and independent reference computations for the tests.
// Nothing here calls into the code paths it is used to check.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "vidrank/features.hpp"
#include "vidrank/frame.hpp"
#include "vidrank/simgraph.hpp"

namespace vidrank::testing {

Frame solid_frame(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                  std::size_t index = 0);

// Smooth multi-hue gradient with per-pixel noise; different seeds give
// different palettes and orientations.
Frame textured_frame(int w, int h, std::uint32_t seed, std::size_t index = 0);

// Alternating black/white stripes of `stripe` pixels.
Frame stripes_frame(int w, int h, int stripe, bool vertical, std::size_t index = 0);

// Uniform random RGB noise.
Frame noise_frame(int w, int h, std::uint32_t seed, std::size_t index = 0);

FrameSequence make_sequence(std::vector<Frame> frames, const std::string& source_id = "synthetic",
                            Rational rate = {1, 1});

// Reference HSV binning in exact integer arithmetic, used as an oracle
// against rgb_to_hsv/color_bin.
std::size_t reference_bin(std::uint8_t r, std::uint8_t g, std::uint8_t b);
std::vector<double> reference_histogram(const Frame& frame);

// Erdos-Renyi graph with random similarity weights in (0, 1].
SimilarityGraph random_graph(std::size_t n, double p, std::mt19937& rng);

// Graph from an explicit edge list with unit similarity unless given.
struct EdgeSpec {
  std::size_t u;
  std::size_t v;
  double sim = 1.0;
};
SimilarityGraph graph_from_edges(std::size_t n, const std::vector<EdgeSpec>& edges);

// Solves x(u) = (1 - d) + d * sum_{v in adj(u)} x(v) / deg(v) by Gaussian
// elimination with partial pivoting.
std::vector<double> solve_rank_fixed_point(const SimilarityGraph& g, double d);

// Writes an MJPG AVI of the given frames at `fps` through OpenCV videoio.
void write_video(const std::filesystem::path& path, const std::vector<Frame>& frames, double fps);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

}  // namespace vidrank::testing
