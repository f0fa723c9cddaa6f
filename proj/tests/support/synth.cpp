#include "synth.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <opencv2/core.hpp>
#include <opencv2/videoio.hpp>

namespace fs = std::filesystem;

namespace vidrank::testing {

namespace {

Frame blank(int w, int h, std::size_t index) {
  Frame f;
  f.index = index;
  f.timestamp_s = static_cast<double>(index);
  f.width = w;
  f.height = h;
  f.pixels.assign(static_cast<std::size_t>(w) * h * 3, 0);
  return f;
}

std::uint8_t clamp8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

Frame solid_frame(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                  std::size_t index) {
  Frame f = blank(w, h, index);
  for (std::size_t i = 0; i < f.pixels.size(); i += 3) {
    f.pixels[i] = r;
    f.pixels[i + 1] = g;
    f.pixels[i + 2] = b;
  }
  return f;
}

Frame textured_frame(int w, int h, std::uint32_t seed, std::size_t index) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 18.0);
  Frame f = blank(w, h, index);
  const double angle = u(rng) * 2.0 * M_PI;
  const double freq = 1.0 + 3.0 * u(rng);
  const double phase[3] = {u(rng) * 6.28, u(rng) * 6.28, u(rng) * 6.28};
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double t = (ca * x / w + sa * y / h) * freq * 2.0 * M_PI;
      std::uint8_t* p = f.pixels.data() + (static_cast<std::size_t>(y) * w + x) * 3;
      for (int c = 0; c < 3; ++c) {
        p[c] = clamp8(128.0 + 110.0 * std::sin(t + phase[c] + c * 2.1) + noise(rng));
      }
    }
  }
  return f;
}

Frame stripes_frame(int w, int h, int stripe, bool vertical, std::size_t index) {
  Frame f = blank(w, h, index);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int k = vertical ? x : y;
      const std::uint8_t v = ((k / stripe) % 2 == 0) ? 0 : 255;
      std::uint8_t* p = f.pixels.data() + (static_cast<std::size_t>(y) * w + x) * 3;
      p[0] = p[1] = p[2] = v;
    }
  }
  return f;
}

Frame noise_frame(int w, int h, std::uint32_t seed, std::size_t index) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(0, 255);
  Frame f = blank(w, h, index);
  for (auto& p : f.pixels) p = static_cast<std::uint8_t>(d(rng));
  return f;
}

FrameSequence make_sequence(std::vector<Frame> frames, const std::string& source_id,
                            Rational rate) {
  FrameSequence seq;
  seq.source_id = source_id;
  seq.sample_rate = rate;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frames[i].index = i;
    frames[i].timestamp_s = timestamp_for(i, rate);
  }
  seq.frames = std::move(frames);
  return seq;
}

std::size_t reference_bin(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  // Exact integer arithmetic: hue is tracked in sixths of a turn as
  // h6 / delta, so every bin boundary is decided without rounding.
  const int r = r8, g = g8, b = b8;
  const int mx = std::max({r, g, b});
  const int delta = mx - std::min({r, g, b});
  int hb = 0;
  if (delta > 0) {
    int h6 = 0;
    if (mx == r) {
      h6 = ((g - b) + 6 * delta) % (6 * delta);
    } else if (mx == g) {
      h6 = (b - r) + 2 * delta;
    } else {
      h6 = (r - g) + 4 * delta;
    }
    hb = std::min(15, 8 * h6 / (3 * delta));
  }
  const int sb = mx > 0 ? std::min(3, 4 * delta / mx) : 0;
  const int vb = std::min(3, 4 * mx / 255);
  return static_cast<std::size_t>(hb * 16 + sb * 4 + vb);
}

std::vector<double> reference_histogram(const Frame& frame) {
  std::vector<double> h(256, 0.0);
  for (std::size_t i = 0; i < frame.pixels.size(); i += 3) {
    h[reference_bin(frame.pixels[i], frame.pixels[i + 1], frame.pixels[i + 2])] += 1.0;
  }
  for (double& v : h) v /= static_cast<double>(frame.pixel_count());
  return h;
}

SimilarityGraph graph_from_edges(std::size_t n, const std::vector<EdgeSpec>& edges) {
  SimilarityGraph g;
  g.n = n;
  g.threshold = 0.0;
  g.adjacency.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.frame_index_of.push_back(i);
  for (const EdgeSpec& e : edges) {
    g.adjacency[e.u].push_back({e.v, e.sim});
    g.adjacency[e.v].push_back({e.u, e.sim});
  }
  for (auto& row : g.adjacency) {
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

SimilarityGraph random_graph(std::size_t n, double p, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) < p) edges.push_back({i, j, 1.0 - 0.99 * u(rng)});
    }
  }
  return graph_from_edges(n, edges);
}

std::vector<double> solve_rank_fixed_point(const SimilarityGraph& g, double d) {
  const std::size_t n = g.n;
  // A x = b with A = I - d * M, M(u, v) = 1/deg(v) for v adjacent to u.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    a[u][u] = 1.0;
    a[u][n] = 1.0 - d;
    for (const Neighbor& nb : g.adjacency[u]) {
      a[u][nb.node] -= d / static_cast<double>(g.adjacency[nb.node].size());
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

void write_video(const fs::path& path, const std::vector<Frame>& frames, double fps) {
  if (frames.empty()) throw std::invalid_argument("no frames to encode");
  cv::VideoWriter writer(path.string(), cv::VideoWriter::fourcc('M', 'J', 'P', 'G'), fps,
                         cv::Size(frames.front().width, frames.front().height));
  if (!writer.isOpened()) throw std::runtime_error("cannot open video writer " + path.string());
  cv::Mat bgr(frames.front().height, frames.front().width, CV_8UC3);
  for (const Frame& f : frames) {
    for (int y = 0; y < f.height; ++y) {
      auto* row = bgr.ptr<cv::Vec3b>(y);
      for (int x = 0; x < f.width; ++x) {
        const std::uint8_t* p = f.pixel(x, y);
        row[x] = cv::Vec3b(p[2], p[1], p[0]);
      }
    }
    writer.write(bgr);
  }
}

fs::path temp_dir(const std::string& tag) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("vidrank_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace vidrank::testing
