#include "vidrank/ingest.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "vidrank/error.hpp"

namespace fs = std::filesystem;

namespace vidrank {

namespace {

constexpr const char* kManifestName = "manifest.json";

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".ppm" || ext == ".pnm";
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::string first_token(const std::string& command) {
  std::istringstream in(command);
  std::string token;
  in >> token;
  return token;
}

struct CommandOutcome {
  int exit_code = -1;
  std::string output;
};

CommandOutcome run_command(const std::string& command) {
  std::string full = command + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(full.c_str(), "r"), pclose);
  if (!pipe) throw Error(Errc::decoder_failed, "could not start decoder: " + command);
  CommandOutcome outcome;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0) {
    outcome.output.append(buffer.data(), got);
  }
  int status = pclose(pipe.release());
  if (status == -1) {
    outcome.exit_code = -1;
  } else if (WIFEXITED(status)) {
    outcome.exit_code = WEXITSTATUS(status);
  } else {
    outcome.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  }
  return outcome;
}

// Matches <name>_NNNNNN.<ext>; captures the index.
const std::regex& indexed_name_pattern() {
  static const std::regex re(R"(^(.*)_([0-9]{6,})\.[A-Za-z]+$)");
  return re;
}

Rational rate_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    return parse_rational(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_number()) {
    std::ostringstream out;
    out.precision(12);
    out << std::fixed << j.get<double>();
    std::string text = out.str();
    while (!text.empty() && text.back() == '0') text.pop_back();
    if (!text.empty() && text.back() == '.') text.pop_back();
    return parse_rational(text);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(Errc::parse_error, "manifest sample_rate_fps must be a number or \"num/den\"");
}

nlohmann::json rate_to_json(const Rational& r) {
  if (r.den == 1) return r.num;
  return to_string(r);
}

}  // namespace

std::string DecoderConfig::default_command_template() {
  return "ffmpeg -nostdin -hide_banner -loglevel error -i {input} -vf fps={fps} "
         "-start_number 0 -f image2 {workdir}/{name}_%06d.png";
}

std::string sanitize_name(const std::string& stem) {
  std::string out;
  for (char c : stem) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  }
  if (out.empty()) out = "video";
  return out;
}

fs::path find_executable(const std::string& name) {
  if (name.empty()) return {};
  if (name.find('/') != std::string::npos) {
    fs::path p(name);
    if (fs::is_regular_file(p) && ::access(p.c_str(), X_OK) == 0) return p;
    return {};
  }
  const char* path_env = std::getenv("PATH");
  if (path_env == nullptr) return {};
  std::istringstream dirs(path_env);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    fs::path candidate = fs::path(dir) / name;
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec) && ::access(candidate.c_str(), X_OK) == 0) {
      return candidate;
    }
  }
  return {};
}

Frame read_image(const fs::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) {
    throw Error(Errc::undecodable_image, "cannot decode image: " + path.string());
  }
  Frame frame;
  frame.width = bgr.cols;
  frame.height = bgr.rows;
  frame.pixels.resize(frame.pixel_count() * 3);
  std::uint8_t* out = frame.pixels.data();
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      *out++ = row[x][2];
      *out++ = row[x][1];
      *out++ = row[x][0];
    }
  }
  return frame;
}

void write_png(const Frame& frame, const fs::path& path) {
  validate_frame(frame);
  cv::Mat bgr(frame.height, frame.width, CV_8UC3);
  const std::uint8_t* in = frame.pixels.data();
  for (int y = 0; y < frame.height; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < frame.width; ++x, in += 3) {
      row[x] = cv::Vec3b(in[2], in[1], in[0]);
    }
  }
  const std::vector<int> params{cv::IMWRITE_PNG_COMPRESSION, 6};
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), bgr, params);
  } catch (const cv::Exception& e) {
    throw Error(Errc::unwritable_output, "cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw Error(Errc::unwritable_output, "cannot write " + path.string());
}

FrameSequence load_frame_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(Errc::io_error, "not a directory: " + dir.string());
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (files.empty()) {
    throw Error(Errc::empty_directory, "no image files in " + dir.string());
  }

  FrameSequence seq;
  seq.source_id = dir.filename().string();
  if (seq.source_id.empty()) seq.source_id = dir.parent_path().filename().string();

  fs::path manifest = dir / kManifestName;
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::parse_error, "bad manifest " + manifest.string() + ": " + e.what());
    }
    if (j.contains("source_id")) seq.source_id = j.at("source_id").get<std::string>();
    if (j.contains("sample_rate_fps")) seq.sample_rate = rate_from_json(j.at("sample_rate_fps"));
  } else {
    seq.warnings.push_back("no manifest.json in " + dir.string() + "; assuming 1 fps");
  }

  // Embedded indices are used only when every file carries one.
  std::vector<std::size_t> indices;
  bool all_indexed = true;
  for (const auto& f : files) {
    std::smatch m;
    std::string name = f.filename().string();
    if (std::regex_match(name, m, indexed_name_pattern())) {
      indices.push_back(std::stoull(m[2].str()));
    } else {
      all_indexed = false;
      break;
    }
  }
  if (all_indexed) {
    for (std::size_t i = 1; i < indices.size(); ++i) {
      if (indices[i] <= indices[i - 1]) {
        all_indexed = false;
        break;
      }
    }
  }

  seq.frames.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    Frame frame = read_image(files[i]);
    frame.index = all_indexed ? indices[i] : i;
    frame.timestamp_s = timestamp_for(frame.index, seq.sample_rate);
    if (!seq.frames.empty()) {
      const Frame& first = seq.frames.front();
      if (frame.width != first.width || frame.height != first.height) {
        throw Error(Errc::mixed_dimensions,
                    files[i].filename().string() + " is " + std::to_string(frame.width) + "x" +
                        std::to_string(frame.height) + ", expected " +
                        std::to_string(first.width) + "x" + std::to_string(first.height));
      }
    }
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

void write_frame_dir(const FrameSequence& seq, const fs::path& dir, const std::string& name) {
  validate_sequence(seq);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::unwritable_output, "cannot create " + dir.string());

  char buf[32];
  for (const Frame& f : seq.frames) {
    std::snprintf(buf, sizeof(buf), "_%06zu.png", f.index);
    write_png(f, dir / (name + buf));
  }

  nlohmann::json manifest{
      {"source_id", seq.source_id},
      {"sample_rate_fps", rate_to_json(seq.sample_rate)},
      {"frame_count", seq.frames.size()},
      {"width", seq.frames.empty() ? 0 : seq.frames.front().width},
      {"height", seq.frames.empty() ? 0 : seq.frames.front().height},
  };
  std::ofstream out(dir / kManifestName);
  if (!out) throw Error(Errc::unwritable_output, "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

FrameSequence sample_via_decoder(const fs::path& video, const Rational& rate,
                                 const fs::path& workdir, const DecoderConfig& decoder) {
  if (rate.num <= 0 || rate.den <= 0) {
    throw Error(Errc::invalid_argument, "sampling rate must be positive");
  }
  std::string executable = first_token(decoder.command_template);
  if (find_executable(executable).empty()) {
    throw Error(Errc::decoder_not_found, "decoder executable not found: '" + executable + "'");
  }

  std::error_code ec;
  fs::create_directories(workdir, ec);
  if (ec) throw Error(Errc::unwritable_output, "cannot create workdir " + workdir.string());

  const std::string name = sanitize_name(video.stem().string());
  const std::regex ours("^" + std::regex_replace(name, std::regex(R"([.^$|()\[\]{}*+?\\])"), R"(\$&)") +
                        R"(_[0-9]{6,}\.png$)");
  for (const auto& entry : fs::directory_iterator(workdir)) {
    std::string fname = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(fname, ours)) fs::remove(entry.path());
  }

  std::string command = decoder.command_template;
  replace_all(command, "{input}", shell_quote(video.string()));
  replace_all(command, "{fps}", to_string(rate));
  replace_all(command, "{workdir}", shell_quote(workdir.string()));
  replace_all(command, "{name}", name);

  CommandOutcome outcome = run_command(command);
  if (outcome.exit_code != 0) {
    throw Error(Errc::decoder_failed, "decoder exited with status " +
                                          std::to_string(outcome.exit_code) + ": " + outcome.output);
  }

  std::vector<fs::path> produced;
  for (const auto& entry : fs::directory_iterator(workdir)) {
    std::string fname = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(fname, ours)) produced.push_back(entry.path());
  }
  if (produced.empty()) {
    throw Error(Errc::zero_frames, "decoder produced no frames for " + video.string());
  }
  std::sort(produced.begin(), produced.end());

  FrameSequence seq;
  seq.source_id = name;
  seq.sample_rate = rate;
  seq.frames.reserve(produced.size());
  for (const auto& p : produced) {
    Frame frame = read_image(p);
    std::smatch m;
    std::string fname = p.filename().string();
    std::regex_match(fname, m, indexed_name_pattern());
    frame.index = std::stoull(m[2].str());
    frame.timestamp_s = timestamp_for(frame.index, rate);
    seq.frames.push_back(std::move(frame));
  }
  validate_sequence(seq);

  nlohmann::json manifest{
      {"source_id", seq.source_id},
      {"sample_rate_fps", rate_to_json(rate)},
      {"frame_count", seq.frames.size()},
      {"width", seq.frames.front().width},
      {"height", seq.frames.front().height},
  };
  std::ofstream out(workdir / kManifestName);
  if (out) out << manifest.dump(2) << '\n';
  return seq;
}

}  // namespace vidrank
