#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "synth.hpp"
#include "vidrank/error.hpp"
#include "vidrank/evalkit.hpp"
#include "vidrank/ingest.hpp"

namespace fs = std::filesystem;

namespace vidrank {
namespace {

// Histogram concentrated in one bin.
ColorHistogram spike(std::size_t bin) {
  ColorHistogram h{};
  h[bin] = 1.0;
  return h;
}

// Half mass in each of two bins.
ColorHistogram split(std::size_t a, std::size_t b) {
  ColorHistogram h{};
  h[a] = 0.5;
  h[b] = 0.5;
  return h;
}

TEST(CompressionRatio, KnownValuesAndBounds) {
  EXPECT_DOUBLE_EQ(compression_ratio(10, 100), 0.90);
  EXPECT_DOUBLE_EQ(compression_ratio(7, 100), 0.93);
  EXPECT_DOUBLE_EQ(compression_ratio(5, 5), 0.0);
  EXPECT_THROW(compression_ratio(0, 10), Error);
  EXPECT_THROW(compression_ratio(11, 10), Error);
  EXPECT_THROW(compression_ratio(1, 0), Error);
}

TEST(HistogramIntersection, KnownValues) {
  EXPECT_DOUBLE_EQ(histogram_intersection(spike(3), spike(3)), 1.0);
  EXPECT_DOUBLE_EQ(histogram_intersection(spike(3), spike(4)), 0.0);
  EXPECT_DOUBLE_EQ(histogram_intersection(split(3, 4), spike(3)), 0.5);
  std::vector<double> a{0.2, 0.8}, b{0.6, 0.4}, c{1.0};
  EXPECT_DOUBLE_EQ(histogram_intersection(a, b), 0.6);
  EXPECT_THROW(histogram_intersection(a, c), Error);
}

TEST(Cus, SelfComparisonIsPerfect) {
  std::vector<ColorHistogram> sys{spike(1), spike(20), spike(77)};
  CusResult r = cus(sys, {"u", sys});
  EXPECT_EQ(r.cus_a, 1.0);
  EXPECT_EQ(r.cus_e, 0.0);
  EXPECT_EQ(r.n_matched, 3u);
}

TEST(Cus, DisjointSummariesCountEveryErrorAgainstUserSize) {
  std::vector<ColorHistogram> sys{spike(1), spike(2), spike(3)};
  UserSummary user{"u", {spike(10), spike(11), spike(12), spike(13), spike(14)}};
  CusResult r = cus(sys, user);
  EXPECT_EQ(r.cus_a, 0.0);
  EXPECT_EQ(r.cus_e, 3.0 / 5.0);
}

TEST(Cus, MatchThresholdIsInclusive) {
  std::vector<ColorHistogram> sys{split(0, 1)};
  EXPECT_EQ(cus(sys, {"u", {spike(0)}}, 0.5).n_matched, 1u);
  EXPECT_EQ(cus(sys, {"u", {spike(0)}}, 0.5000001).n_matched, 0u);
}

TEST(Cus, EachUserFrameIsConsumedOnce) {
  // Two identical system frames compete for a single user frame.
  std::vector<ColorHistogram> sys{spike(5), spike(5)};
  CusResult r = cus(sys, {"u", {spike(5), spike(9)}});
  EXPECT_EQ(r.n_matched, 1u);
  EXPECT_EQ(r.n_nonmatched, 1u);
  EXPECT_EQ(r.cus_a, 0.5);
  EXPECT_EQ(r.cus_e, 0.5);
}

TEST(Cus, GreedyPrefersBestScoreThenEarlierUserFrame) {
  std::vector<ColorHistogram> sys{split(0, 1)};
  // Both clear the threshold; the second is a perfect match.
  CusResult r = cus(sys, {"u", {spike(0), split(0, 1)}});
  EXPECT_EQ(r.n_matched, 1u);
  // Equal scores: the earlier user frame is consumed, leaving the later one
  // for the second system frame.
  std::vector<ColorHistogram> two{split(0, 1), spike(1)};
  CusResult t = cus(two, {"u", {spike(0), spike(1)}});
  EXPECT_EQ(t.n_matched, 2u);
}

TEST(Cus, EmptySidesAreErrors) {
  std::vector<ColorHistogram> none;
  std::vector<ColorHistogram> one{spike(0)};
  EXPECT_THROW(cus(none, {"u", one}), Error);
  EXPECT_THROW(cus(one, {"u", {}}), Error);
}

// Properties over random summaries: bounds and the matched/non-matched split.
TEST(Cus, RandomSummaryInvariants) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<std::size_t> bin(0, 15);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ColorHistogram> sys(1 + rng() % 8);
    for (auto& h : sys) h = rng() % 2 ? spike(bin(rng)) : split(bin(rng), bin(rng) + 16);
    UserSummary user{"u", std::vector<ColorHistogram>(1 + rng() % 8)};
    for (auto& h : user.key_frames) h = spike(bin(rng));
    CusResult r = cus(sys, user);
    EXPECT_EQ(r.n_matched + r.n_nonmatched, sys.size());
    EXPECT_LE(r.n_matched, user.key_frames.size());
    EXPECT_GE(r.cus_a, 0.0);
    EXPECT_LE(r.cus_a, 1.0);
    EXPECT_DOUBLE_EQ(r.cus_e, static_cast<double>(r.n_nonmatched) / static_cast<double>(user.key_frames.size()));
  }
}

FrameSequence palette_sequence(std::size_t n) {
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < n; ++i) {
    // Hue steps of 36 degrees at full saturation; bins repeat every 10 frames.
    const double hue = static_cast<double>(i % 10) * 36.0;
    const int sector = static_cast<int>(hue / 60.0);
    const double f = hue / 60.0 - sector;
    const auto up = static_cast<std::uint8_t>(255 * f);
    const auto dn = static_cast<std::uint8_t>(255 * (1 - f));
    std::uint8_t r = 0, g = 0, b = 0;
    switch (sector) {
      case 0: r = 255; g = up; break;
      case 1: r = dn; g = 255; break;
      case 2: g = 255; b = up; break;
      case 3: g = dn; b = 255; break;
      case 4: r = up; b = 255; break;
      default: r = 255; b = dn; break;
    }
    frames.push_back(testing::solid_frame(16, 16, r, g, b));
  }
  return testing::make_sequence(std::move(frames), "palette");
}

Summary summary_of(const std::vector<std::size_t>& indices, const std::string& id = "palette") {
  Summary s;
  s.source_id = id;
  for (std::size_t i : indices) s.key_frames.push_back({i, static_cast<double>(i), 1.0});
  s.k_delivered = indices.size();
  return s;
}

TEST(EvaluateVideo, CrUsesSampledOrRawDenominator) {
  FrameSequence seq = palette_sequence(100);
  std::vector<UserSummary> none;
  Summary ten = summary_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  EXPECT_DOUBLE_EQ(evaluate_video(ten, seq, none, seq.size()).cr, 0.90);
  Summary seven = summary_of({0, 1, 2, 3, 4, 5, 6});
  EXPECT_DOUBLE_EQ(evaluate_video(seven, seq, none, seq.size()).cr, 0.93);

  EvalOptions raw;
  raw.cr_denominator = CrDenominator::raw;
  EXPECT_THROW(evaluate_video(ten, seq, none, seq.size(), raw), Error);
  raw.raw_frame_count = 3000;
  VideoReport r = evaluate_video(ten, seq, none, seq.size(), raw);
  EXPECT_EQ(r.n_frames, 3000u);
  EXPECT_DOUBLE_EQ(r.cr, 1.0 - 10.0 / 3000.0);
}

TEST(EvaluateVideo, PerUserAndMeanScores) {
  FrameSequence seq = palette_sequence(20);
  Summary s = summary_of({0, 1, 2});
  std::vector<UserSummary> users{
      {"a", {color_histogram(seq.frames[0]), color_histogram(seq.frames[1]), color_histogram(seq.frames[2])}},
      {"b", {color_histogram(seq.frames[5]), color_histogram(seq.frames[6])}},
  };
  VideoReport r = evaluate_video(s, seq, users, seq.size());
  ASSERT_EQ(r.users.size(), 2u);
  EXPECT_EQ(r.users[0].cus_a, 1.0);
  EXPECT_EQ(r.users[0].cus_e, 0.0);
  EXPECT_EQ(r.users[1].cus_a, 0.0);
  EXPECT_EQ(r.users[1].cus_e, 1.5);
  EXPECT_DOUBLE_EQ(r.mean_cus_a, 0.5);
  EXPECT_DOUBLE_EQ(r.mean_cus_e, 0.75);

  EvalReport agg = aggregate({r, r});
  EXPECT_DOUBLE_EQ(agg.mean_cus_a, 0.5);
  EXPECT_DOUBLE_EQ(agg.mean_cr, r.cr);
  std::string table = format_table(agg);
  EXPECT_NE(table.find("CUS(A)"), std::string::npos);
  EXPECT_NE(table.find("CUS(E)"), std::string::npos);
  EXPECT_NE(table.find("Compression Ratio (CR)"), std::string::npos);
  EXPECT_NE(table.find("Mean"), std::string::npos);
}

TEST(LoadUsers, DirectoriesAndIndexFiles) {
  FrameSequence seq = palette_sequence(12);
  fs::path dir = testing::temp_dir("users");
  fs::create_directories(dir / "alice");
  write_png(seq.frames[3], dir / "alice" / "k1.png");
  write_png(seq.frames[8], dir / "alice" / "k2.png");
  std::ofstream(dir / "bob.txt") << "# picks\n1\n  4   # second\n\n11\n";
  std::ofstream(dir / "notes.md") << "ignored";

  std::vector<UserSummary> users = load_user_summaries(dir, seq);
  ASSERT_EQ(users.size(), 2u);
  EXPECT_EQ(users[0].user_id, "alice");
  EXPECT_EQ(users[0].key_frames.size(), 2u);
  EXPECT_EQ(users[0].key_frames[0], color_histogram(seq.frames[3]));
  EXPECT_EQ(users[1].user_id, "bob");
  ASSERT_EQ(users[1].key_frames.size(), 3u);
  EXPECT_EQ(users[1].key_frames[2], color_histogram(seq.frames[11]));
}

TEST(LoadUsers, ErrorsNameTheProblem) {
  FrameSequence seq = palette_sequence(5);
  try {
    load_user_summaries("/nonexistent/users", seq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/users"), std::string::npos);
  }

  fs::path dir = testing::temp_dir("users_bad");
  std::ofstream(dir / "carol.txt") << "2\nseven\n";
  try {
    load_user_summaries(dir, seq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
    EXPECT_NE(std::string(e.what()).find("carol.txt:2"), std::string::npos) << e.what();
  }

  fs::path dir2 = testing::temp_dir("users_range");
  std::ofstream(dir2 / "dave.txt") << "99\n";
  try {
    load_user_summaries(dir2, seq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::missing_frame_index);
  }

  fs::path empty = testing::temp_dir("users_empty");
  EXPECT_THROW(load_user_summaries(empty, seq), Error);
}

}  // namespace
}  // namespace vidrank
