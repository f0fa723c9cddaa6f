#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "vidrank/error.hpp"
#include "vidrank/evalkit.hpp"
#include "vidrank/ingest.hpp"
#include "vidrank/pipeline.hpp"
#include "vidrank/serialize.hpp"
#include "vidrank/storyboard.hpp"

namespace fs = std::filesystem;

namespace vidrank::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

// Thrown for failures that map onto a specific exit status.
struct Failure {
  int code;
  std::string message;
};

FrameSequence ingest_input(const RunConfig& cfg, const fs::path& input, const fs::path& workdir) {
  try {
    if (fs::is_directory(input)) return load_frame_dir(input);
    if (!fs::exists(input)) {
      throw Error(Errc::io_error, "input not found: " + input.string());
    }
    DecoderConfig decoder{resolve_decoder_template(cfg.decoder)};
    return sample_via_decoder(input, parse_rational(cfg.sample_rate_fps), workdir, decoder);
  } catch (const Error& e) {
    throw Failure{kIngest, "[ingest] " + std::string(to_string(e.code())) + ": " + e.what()};
  }
}

fs::path default_workdir(const RunConfig& cfg, const fs::path& input, const fs::path& out_dir) {
  if (!cfg.workdir.empty()) return cfg.workdir;
  return out_dir / (sanitize_name(input.stem().string()) + "_frames");
}

PipelineResult run_stages(const FrameSequence& seq, const RunConfig& cfg) {
  try {
    return run_pipeline(seq, to_pipeline_config(cfg));
  } catch (const StageError& e) {
    throw Failure{kPipeline, "[" + std::string(to_string(e.stage())) + "] " + e.what()};
  }
}

void add_pipeline_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--fps", cfg.sample_rate_fps, "Sampling rate for video input (e.g. 1, 1/2)");
  cmd.add_option("--workdir", cfg.workdir, "Directory for decoded frame images");
  cmd.add_option("--decoder", cfg.decoder,
                 "Decoder command template, or 'auto' ({input} {fps} {workdir} {name})");
  cmd.add_option("--beta-noise", cfg.beta_noise, "Adaptive threshold beta for noise frames");
  cmd.add_option("--variance-basis", cfg.variance_basis, "normalized | raw")
      ->check(CLI::IsMember({"normalized", "raw"}));
  cmd.add_flag("!--no-prefilter", cfg.prefilter, "Keep monochromatic frames");
  cmd.add_option("--edge-threshold", cfg.edge_response_threshold,
                 "Edge response threshold on [0,1] luminance");
  cmd.add_option("--block-grid", cfg.block_grid, "Blocks per axis inside each sub-image");
  cmd.add_option("--beta-graph", cfg.beta_graph, "Adaptive threshold beta for graph edges");
  cmd.add_option("--damping", cfg.damping, "Damping factor d");
  cmd.add_option("--tol", cfg.tol, "Rank convergence tolerance (L1)");
  cmd.add_option("--max-iters", cfg.max_iters, "Rank iteration cap");
  cmd.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
}

void add_selection_options(CLI::App& cmd, RunConfig& cfg, std::string& model_text) {
  cmd.add_option("--model", model_text, "Penalization model: 1, 2 or 3");
  cmd.add_option("--alpha", cfg.alpha, "Penalty weight alpha (models 1 and 2)");
  cmd.add_option("-k,--k-frames", cfg.k_frames, "Number of key frames to extract");
  cmd.add_flag("--rerank", cfg.rerank, "Model 3: re-rank the remaining graph after each pick");
}

void apply_model(RunConfig& cfg, const std::string& model_text) {
  if (!model_text.empty()) cfg.model = static_cast<int>(parse_model(model_text));
}

int cmd_summarize(RunConfig& cfg, const std::string& input, const std::string& output,
                  std::ostream& out, std::ostream& err) {
  if (!cfg.k_frames) throw Failure{kUsage, "summarize requires -k/--k-frames"};
  validate(cfg);

  const fs::path out_dir = output.empty() ? fs::path(".") : fs::path(output);
  FrameSequence seq = ingest_input(cfg, input, default_workdir(cfg, input, out_dir));
  for (const std::string& w : seq.warnings) err << "warning: " << w << '\n';

  PipelineResult result = run_stages(seq, cfg);
  const Summary& summary = result.selection.summary;

  Storyboard board;
  try {
    board = render_contact_sheet(summary, seq, out_dir, to_storyboard_options(cfg));
  } catch (const Error& e) {
    throw Failure{kPipeline, "[storyboard] " + std::string(to_string(e.code())) + ": " + e.what()};
  }

  nlohmann::json manifest{
      {"tool", "vidrank"},
      {"version", kVersion},
      {"input", input},
      {"source_id", seq.source_id},
      {"sample_rate_fps", to_string(seq.sample_rate)},
      {"frames_sampled", seq.size()},
      {"frames_kept", result.kept.size()},
      {"noise", to_json(result.noise)},
      {"graph_edges", result.graph.edge_count()},
      {"graph_threshold", result.graph.threshold},
      {"rank_iterations", result.ranks.iterations},
      {"rank_converged", result.ranks.converged},
      {"k_delivered", summary.k_delivered},
      {"config", to_json(cfg)},
  };
  const std::string id = summary.source_id.empty() ? "video" : summary.source_id;
  write_json(manifest, out_dir / (id + "_run.json"));

  if (!result.ranks.converged) {
    err << "warning: rank iteration stopped after " << result.ranks.iterations
        << " sweeps without reaching tol\n";
  }
  out << id << ": " << summary.k_delivered << "/" << summary.k_requested << " key frames ("
      << to_string(summary.model) << ") from " << result.kept.size() << " of " << seq.size()
      << " sampled frames\n";
  out << "  storyboard: " << board.contact_sheet.string() << '\n';
  out << "  frames:";
  for (const KeyFrame& kf : summary.key_frames) out << ' ' << kf.frame_index;
  out << '\n';
  return kOk;
}

int cmd_evaluate(RunConfig& cfg, const std::vector<std::string>& summaries,
                 const std::vector<std::string>& users_dirs,
                 const std::vector<std::string>& frame_inputs,
                 const std::vector<std::size_t>& raw_frames, const std::string& output,
                 std::ostream& out, std::ostream& err) {
  validate(cfg);
  if (summaries.size() != users_dirs.size() || summaries.size() != frame_inputs.size()) {
    throw Failure{kUsage, "--summary, --users and --frames must be given the same number of times"};
  }
  EvalOptions options = to_eval_options(cfg);
  if (options.cr_denominator == CrDenominator::raw && raw_frames.size() != summaries.size()) {
    throw Failure{kUsage, "--cr-denominator raw needs one --raw-frames per summary"};
  }

  std::vector<VideoReport> videos;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    Summary summary;
    try {
      summary = summary_from_json(read_json(summaries[i]));
    } catch (const Error& e) {
      throw Failure{kEvaluation, "[evaluate] " + std::string(e.what())};
    }
    const fs::path frames_path = frame_inputs[i];
    const fs::path scratch = fs::path(summaries[i]).parent_path();
    FrameSequence seq = ingest_input(cfg, frames_path, default_workdir(cfg, frames_path, scratch));
    for (const std::string& w : seq.warnings) err << "warning: " << w << '\n';
    try {
      if (!fs::is_directory(users_dirs[i])) {
        throw Error(Errc::io_error, "users directory not found: " + users_dirs[i]);
      }
      std::vector<UserSummary> users = load_user_summaries(users_dirs[i], seq);
      EvalOptions per_video = options;
      if (options.cr_denominator == CrDenominator::raw) per_video.raw_frame_count = raw_frames[i];
      videos.push_back(evaluate_video(summary, seq, users, seq.size(), per_video));
    } catch (const Error& e) {
      throw Failure{kEvaluation,
                    "[evaluate] " + std::string(to_string(e.code())) + ": " + e.what()};
    }
  }

  EvalReport report = aggregate(std::move(videos));
  out << format_table(report);
  if (!output.empty()) {
    try {
      write_json(to_json(report), output);
    } catch (const Error& e) {
      throw Failure{kEvaluation, "[evaluate] " + std::string(e.what())};
    }
  }
  return kOk;
}

int cmd_inspect(RunConfig& cfg, const std::string& target, const std::string& input,
                std::ostream& out, std::ostream& err) {
  if (!cfg.k_frames) cfg.k_frames = 1;
  validate(cfg);
  const fs::path scratch = cfg.workdir.empty() ? fs::temp_directory_path() : fs::path(cfg.workdir);
  FrameSequence seq = ingest_input(cfg, input, default_workdir(cfg, input, scratch));
  for (const std::string& w : seq.warnings) err << "warning: " << w << '\n';

  PipelineResult result = run_stages(seq, cfg);
  if (target == "features") {
    for (std::size_t i = 0; i < result.features.size(); ++i) {
      out << to_json(result.features[i], result.kept.frames[i].index).dump() << '\n';
    }
  } else if (target == "graph") {
    out << to_json(result.graph).dump(2) << '\n';
  } else if (target == "ranks") {
    out << to_json(result.ranks, result.graph).dump(2) << '\n';
  } else if (target == "noise") {
    out << to_json(result.noise).dump(2) << '\n';
  } else {
    throw Failure{kUsage, "unknown inspect target '" + target + "'"};
  }
  return kOk;
}

// Loads --config before CLI11 parsing so explicit flags win over the file.
void preload_config(int argc, const char* const* argv, RunConfig& cfg) {
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
    if (!path.empty()) load_config_file(path, cfg);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    preload_config(argc, argv, cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Key-frame extraction by penalized random-walk ranking", "vidrank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file (flags override it)");

  std::string model_text;
  std::string input;
  std::string output;

  auto* summarize = app.add_subcommand("summarize", "Extract key frames and render a storyboard");
  summarize->add_option("--input,-i", input, "Video file or frame directory")->required();
  summarize->add_option("--output,-o", output, "Output directory (default: .)");
  summarize->add_option("--columns", cfg.columns, "Storyboard columns");
  summarize->add_option("--tile-size", cfg.tile_size, "Downsample tiles to WxH");
  summarize->add_option("--config", config_path, "key = value config file");
  add_pipeline_options(*summarize, cfg);
  add_selection_options(*summarize, cfg, model_text);

  std::vector<std::string> summaries;
  std::vector<std::string> users_dirs;
  std::vector<std::string> frame_inputs;
  std::vector<std::size_t> raw_frames;
  std::string report_path;
  auto* evaluate = app.add_subcommand("evaluate", "Score summaries against user summaries");
  evaluate->add_option("--summary", summaries, "Summary JSON (repeatable)")->required();
  evaluate->add_option("--users", users_dirs, "User summary directory (repeatable)")->required();
  evaluate->add_option("--frames", frame_inputs, "Sampled frames: directory or video (repeatable)")
      ->required();
  evaluate->add_option("--match-threshold", cfg.match_threshold, "Histogram intersection threshold");
  evaluate->add_option("--cr-denominator", cfg.cr_denominator, "sampled | raw")
      ->check(CLI::IsMember({"sampled", "raw"}));
  evaluate->add_option("--raw-frames", raw_frames, "Undecimated frame count (repeatable)");
  evaluate->add_option("--output,-o", report_path, "Write the report as JSON");
  evaluate->add_option("--config", config_path, "key = value config file");
  evaluate->add_option("--fps", cfg.sample_rate_fps, "Sampling rate for video input");
  evaluate->add_option("--workdir", cfg.workdir, "Directory for decoded frame images");
  evaluate->add_option("--decoder", cfg.decoder, "Decoder command template, or 'auto'");

  std::string target;
  auto* inspect = app.add_subcommand("inspect", "Dump an intermediate result as JSON");
  inspect->add_option("target", target, "features | graph | ranks | noise")
      ->required()
      ->check(CLI::IsMember({"features", "graph", "ranks", "noise"}));
  inspect->add_option("--input,-i", input, "Video file or frame directory")->required();
  inspect->add_option("--config", config_path, "key = value config file");
  add_pipeline_options(*inspect, cfg);
  add_selection_options(*inspect, cfg, model_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kUsage;
  }

  try {
    apply_model(cfg, model_text);
    if (summarize->parsed()) return cmd_summarize(cfg, input, output, out, err);
    if (evaluate->parsed()) {
      return cmd_evaluate(cfg, summaries, users_dirs, frame_inputs, raw_frames, report_path, out,
                          err);
    }
    if (inspect->parsed()) return cmd_inspect(cfg, target, input, out, err);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    // Configuration problems that surface before any stage runs.
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace vidrank::cli
