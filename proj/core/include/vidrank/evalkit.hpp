#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vidrank/features.hpp"
#include "vidrank/frame.hpp"
#include "vidrank/rank.hpp"

namespace vidrank {

// 1 - m / n. Throws Error(invalid_argument) unless 1 <= m <= n.
double compression_ratio(std::size_t m_keyframes, std::size_t n_frames);

// Sum of element-wise minima. Throws Error(length_mismatch).
double histogram_intersection(std::span<const double> a, std::span<const double> b);

struct UserSummary {
  std::string user_id;
  std::vector<ColorHistogram> key_frames;
};

struct CusResult {
  std::string user_id;
  std::size_t n_matched = 0;
  std::size_t n_nonmatched = 0;
  std::size_t n_user = 0;
  double cus_a = 0.0;
  double cus_e = 0.0;
};

// Greedy matching: system frames in the given (temporal) order each claim
// the unconsumed user frame with the highest intersection, provided it is at
// least match_threshold; ties go to the earlier user frame. Throws
// Error(empty_summary) when either side is empty.
CusResult cus(std::span<const ColorHistogram> system, const UserSummary& user,
              double match_threshold = 0.5);

enum class CrDenominator { sampled, raw };

struct EvalOptions {
  double match_threshold = 0.5;
  CrDenominator cr_denominator = CrDenominator::sampled;
  // Frame count of the undecimated video, required for CrDenominator::raw.
  std::optional<std::size_t> raw_frame_count;
};

struct VideoReport {
  std::string source_id;
  std::size_t n_keyframes = 0;
  std::size_t n_frames = 0;  // CR denominator actually used
  double cr = 0.0;
  std::vector<CusResult> users;
  double mean_cus_a = 0.0;
  double mean_cus_e = 0.0;
};

struct EvalReport {
  std::vector<VideoReport> videos;
  double mean_cr = 0.0;
  double mean_cus_a = 0.0;
  double mean_cus_e = 0.0;
};

// System frames are looked up in `frames` by summary frame index.
VideoReport evaluate_video(const Summary& summary, const FrameSequence& frames,
                           std::span<const UserSummary> users, std::size_t n_sampled,
                           const EvalOptions& options = {});

EvalReport aggregate(std::vector<VideoReport> videos);

// users/<id>/ directories of images and users/<id>.txt files listing
// sampled-frame indices (one per line, '#' comments allowed). Index files are
// resolved against `sampled`. Users are returned sorted by id.
std::vector<UserSummary> load_user_summaries(const std::filesystem::path& users_dir,
                                             const FrameSequence& sampled);

// Aligned text table with rows CUS(A), CUS(E), Compression Ratio and one
// column per video plus the mean.
std::string format_table(const EvalReport& report);

}  // namespace vidrank
