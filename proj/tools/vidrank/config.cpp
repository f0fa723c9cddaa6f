#include "config.hpp"

#include <unistd.h>

#include <fstream>
#include <functional>
#include <map>

#include "vidrank/error.hpp"
#include "vidrank/ingest.hpp"

namespace fs = std::filesystem;

namespace vidrank::cli {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(Errc::parse_error, "config key '" + key + "' expects a number, got '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(Errc::parse_error, "config key '" + key + "' expects an integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error(Errc::parse_error, "config key '" + key + "' expects true/false, got '" + v + "'");
}

std::optional<TileSize> parse_tile_size(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto x = text.find('x');
  if (x == std::string::npos) throw Error(Errc::parse_error, "tile size must be WxH: " + text);
  TileSize t;
  t.width = static_cast<int>(to_int("tile_size", text.substr(0, x)));
  t.height = static_cast<int>(to_int("tile_size", text.substr(x + 1)));
  if (t.width < 1 || t.height < 1) throw Error(Errc::invalid_argument, "tile size must be positive");
  return t;
}

}  // namespace

void load_config_file(const fs::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot read config file " + path.string());

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"sample_rate_fps", [&](auto&, auto& v) { cfg.sample_rate_fps = v; }},
      {"beta_noise", [&](auto& k, auto& v) { cfg.beta_noise = to_double(k, v); }},
      {"beta_graph", [&](auto& k, auto& v) { cfg.beta_graph = to_double(k, v); }},
      {"damping", [&](auto& k, auto& v) { cfg.damping = to_double(k, v); }},
      {"alpha", [&](auto& k, auto& v) { cfg.alpha = to_double(k, v); }},
      {"model", [&](auto&, auto& v) { cfg.model = static_cast<int>(parse_model(v)); }},
      {"k_frames", [&](auto& k, auto& v) {
         long long x = to_int(k, v);
         if (x < 1) throw Error(Errc::invalid_argument, "k_frames must be at least 1");
         cfg.k_frames = static_cast<std::size_t>(x);
       }},
      {"edge_response_threshold",
       [&](auto& k, auto& v) { cfg.edge_response_threshold = to_double(k, v); }},
      {"block_grid", [&](auto& k, auto& v) { cfg.block_grid = static_cast<int>(to_int(k, v)); }},
      {"variance_basis", [&](auto&, auto& v) { cfg.variance_basis = v; }},
      {"prefilter", [&](auto& k, auto& v) { cfg.prefilter = to_bool(k, v); }},
      {"tol", [&](auto& k, auto& v) { cfg.tol = to_double(k, v); }},
      {"max_iters", [&](auto& k, auto& v) { cfg.max_iters = static_cast<int>(to_int(k, v)); }},
      {"rerank", [&](auto& k, auto& v) { cfg.rerank = to_bool(k, v); }},
      {"match_threshold", [&](auto& k, auto& v) { cfg.match_threshold = to_double(k, v); }},
      {"cr_denominator", [&](auto&, auto& v) { cfg.cr_denominator = v; }},
      {"threads", [&](auto& k, auto& v) { cfg.threads = static_cast<unsigned>(to_int(k, v)); }},
      {"columns", [&](auto& k, auto& v) { cfg.columns = static_cast<std::size_t>(to_int(k, v)); }},
      {"tile_size", [&](auto&, auto& v) { cfg.tile_size = v; }},
      {"decoder", [&](auto&, auto& v) { cfg.decoder = v; }},
      {"workdir", [&](auto&, auto& v) { cfg.workdir = v; }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // '#' inside a quoted value is kept.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.erase(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::parse_error,
                  path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(Errc::parse_error,
                  path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    it->second(key, value);
  }
}

void validate(const RunConfig& cfg) {
  parse_rational(cfg.sample_rate_fps);
  if (!(cfg.beta_noise >= 0.0)) throw Error(Errc::invalid_argument, "beta_noise must be >= 0");
  if (!(cfg.beta_graph >= 0.0)) throw Error(Errc::invalid_argument, "beta_graph must be >= 0");
  if (cfg.model < 1 || cfg.model > 3) throw Error(Errc::invalid_argument, "model must be 1, 2 or 3");
  if (cfg.k_frames && *cfg.k_frames < 1) {
    throw Error(Errc::invalid_argument, "k_frames must be at least 1");
  }
  if (!(cfg.edge_response_threshold >= 0.0)) {
    throw Error(Errc::invalid_argument, "edge_response_threshold must be >= 0");
  }
  if (cfg.block_grid < 1) throw Error(Errc::invalid_argument, "block_grid must be >= 1");
  if (cfg.variance_basis != "normalized" && cfg.variance_basis != "raw") {
    throw Error(Errc::invalid_argument, "variance_basis must be 'normalized' or 'raw'");
  }
  if (!(cfg.match_threshold >= 0.0 && cfg.match_threshold <= 1.0)) {
    throw Error(Errc::invalid_argument, "match_threshold must lie in [0, 1]");
  }
  if (cfg.cr_denominator != "sampled" && cfg.cr_denominator != "raw") {
    throw Error(Errc::invalid_argument, "cr_denominator must be 'sampled' or 'raw'");
  }
  if (cfg.columns < 1) throw Error(Errc::invalid_argument, "columns must be >= 1");
  parse_tile_size(cfg.tile_size);

  RankParams rp;
  rp.damping = cfg.damping;
  rp.tol = cfg.tol;
  rp.max_iters = cfg.max_iters;
  vidrank::validate(rp);
  if (!(cfg.alpha > 0.0)) throw Error(Errc::invalid_argument, "alpha must be positive");
}

PipelineConfig to_pipeline_config(const RunConfig& cfg) {
  PipelineConfig p;
  p.noise.beta = cfg.beta_noise;
  p.variance_basis =
      cfg.variance_basis == "raw" ? VarianceBasis::raw_counts : VarianceBasis::normalized_bins;
  p.prefilter = cfg.prefilter;
  p.features.kernels.response_threshold = cfg.edge_response_threshold;
  p.features.kernels.block_grid = cfg.block_grid;
  p.beta_graph = cfg.beta_graph;
  p.rank.damping = cfg.damping;
  p.rank.tol = cfg.tol;
  p.rank.max_iters = cfg.max_iters;
  p.selection.model = static_cast<PenaltyModel>(cfg.model);
  p.selection.alpha = cfg.alpha;
  p.selection.k_frames = cfg.k_frames.value_or(1);
  p.selection.rerank = cfg.rerank;
  p.threads = cfg.threads;
  return p;
}

StoryboardOptions to_storyboard_options(const RunConfig& cfg) {
  StoryboardOptions o;
  o.columns = cfg.columns;
  o.tile_size = parse_tile_size(cfg.tile_size);
  return o;
}

EvalOptions to_eval_options(const RunConfig& cfg) {
  EvalOptions o;
  o.match_threshold = cfg.match_threshold;
  o.cr_denominator = cfg.cr_denominator == "raw" ? CrDenominator::raw : CrDenominator::sampled;
  return o;
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j{
      {"sample_rate_fps", cfg.sample_rate_fps},
      {"beta_noise", cfg.beta_noise},
      {"beta_graph", cfg.beta_graph},
      {"damping", cfg.damping},
      {"alpha", cfg.alpha},
      {"model", cfg.model},
      {"edge_response_threshold", cfg.edge_response_threshold},
      {"block_grid", cfg.block_grid},
      {"variance_basis", cfg.variance_basis},
      {"prefilter", cfg.prefilter},
      {"tol", cfg.tol},
      {"max_iters", cfg.max_iters},
      {"rerank", cfg.rerank},
      {"match_threshold", cfg.match_threshold},
      {"cr_denominator", cfg.cr_denominator},
      {"columns", cfg.columns},
      {"tile_size", cfg.tile_size},
  };
  j["k_frames"] = cfg.k_frames ? nlohmann::json(*cfg.k_frames) : nlohmann::json(nullptr);
  return j;
}

std::string resolve_decoder_template(const std::string& setting) {
  if (setting != "auto") return setting;
  if (!find_executable("ffmpeg").empty()) return DecoderConfig::default_command_template();

  std::error_code ec;
  fs::path self = fs::read_symlink("/proc/self/exe", ec);
  fs::path sibling = ec ? fs::path{} : self.parent_path() / "vidrank-framedump";
  std::string dump;
  if (!sibling.empty() && !find_executable(sibling.string()).empty()) {
    dump = sibling.string();
  } else if (!find_executable("vidrank-framedump").empty()) {
    dump = "vidrank-framedump";
  }
  if (dump.empty()) return DecoderConfig::default_command_template();
  return dump + " {input} {fps} {workdir}/{name}_%06d.png";
}

}  // namespace vidrank::cli
