#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "vidrank/features.hpp"
#include "vidrank/rank.hpp"
#include "vidrank/simgraph.hpp"

namespace {

using namespace vidrank;

Frame random_frame(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(0, 255);
  Frame f;
  f.width = w;
  f.height = h;
  f.pixels.resize(static_cast<std::size_t>(w) * h * 3);
  for (auto& p : f.pixels) p = static_cast<std::uint8_t>(d(rng));
  return f;
}

std::vector<FeatureVector> random_features(std::size_t n) {
  std::vector<FeatureVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(extract_features(random_frame(64, 48, static_cast<std::uint32_t>(i))));
  }
  return out;
}

void BM_ColorHistogram(benchmark::State& state) {
  Frame f = random_frame(352, 240, 1);
  for (auto _ : state) benchmark::DoNotOptimize(color_histogram(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.pixel_count()));
}
BENCHMARK(BM_ColorHistogram);

void BM_EdgeHistogram(benchmark::State& state) {
  Frame f = random_frame(352, 240, 2);
  for (auto _ : state) benchmark::DoNotOptimize(edge_histogram(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.pixel_count()));
}
BENCHMARK(BM_EdgeHistogram);

void BM_DistanceMatrix(benchmark::State& state) {
  auto fv = random_features(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(fv));
}
BENCHMARK(BM_DistanceMatrix)->Arg(120)->Arg(600);

void BM_BuildGraph(benchmark::State& state) {
  DistanceMatrix dm = distance_matrix(random_features(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(dm, 0.5));
}
BENCHMARK(BM_BuildGraph)->Arg(120)->Arg(600);

SimilarityGraph er_graph(std::size_t n, double p) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SimilarityGraph g;
  g.n = n;
  g.adjacency.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.frame_index_of.push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) < p) {
        double s = 0.5 + 0.5 * u(rng);
        g.adjacency[i].push_back({j, s});
        g.adjacency[j].push_back({i, s});
      }
    }
  }
  for (auto& row : g.adjacency) {
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

void BM_ComputeRanks(benchmark::State& state) {
  SimilarityGraph g = er_graph(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_ranks(g));
}
BENCHMARK(BM_ComputeRanks)->Arg(120)->Arg(1000);

void BM_SelectKeyframes(benchmark::State& state) {
  SimilarityGraph g = er_graph(static_cast<std::size_t>(state.range(0)), 0.1);
  RankState ranks = compute_ranks(g);
  SelectionParams sp;
  sp.model = static_cast<PenaltyModel>(state.range(1));
  sp.k_frames = 10;
  for (auto _ : state) benchmark::DoNotOptimize(select_keyframes(g, ranks, sp));
}
BENCHMARK(BM_SelectKeyframes)->Args({120, 1})->Args({120, 3})->Args({1000, 3});

}  // namespace

BENCHMARK_MAIN();
