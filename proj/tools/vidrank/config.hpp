#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "vidrank/evalkit.hpp"
#include "vidrank/pipeline.hpp"
#include "vidrank/storyboard.hpp"

namespace vidrank::cli {

// Every tunable of a run. Defaults follow the published method settings
// (1 fps, beta 1.8, d 0.85, alpha 0.5, model 3).
struct RunConfig {
  std::string sample_rate_fps = "1";
  double beta_noise = 1.8;
  double beta_graph = 0.5;
  double damping = 0.85;
  double alpha = 0.5;
  int model = 3;
  std::optional<std::size_t> k_frames;
  double edge_response_threshold = 11.0 / 255.0;
  int block_grid = 4;
  std::string variance_basis = "normalized";
  bool prefilter = true;
  double tol = 1e-6;
  int max_iters = 100;
  bool rerank = false;
  double match_threshold = 0.5;
  std::string cr_denominator = "sampled";
  unsigned threads = 1;
  std::size_t columns = 5;
  std::string tile_size;      // "WxH", empty for native
  std::string decoder = "auto";
  std::string workdir;        // empty: next to the outputs
};

// Reads `key = value` lines. '#' starts a comment, [sections] are ignored,
// values may be double-quoted. Unknown keys are an error.
void load_config_file(const std::filesystem::path& path, RunConfig& cfg);

// Throws vidrank::Error(invalid_argument) for out-of-range settings.
void validate(const RunConfig& cfg);

PipelineConfig to_pipeline_config(const RunConfig& cfg);
StoryboardOptions to_storyboard_options(const RunConfig& cfg);
EvalOptions to_eval_options(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

// "auto" resolves to ffmpeg when it is on PATH and otherwise to the bundled
// vidrank-framedump next to the running executable.
std::string resolve_decoder_template(const std::string& setting);

}  // namespace vidrank::cli
