#include "vidrank/evalkit.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vidrank/error.hpp"
#include "vidrank/ingest.hpp"

namespace fs = std::filesystem;

namespace vidrank {

double compression_ratio(std::size_t m_keyframes, std::size_t n_frames) {
  if (n_frames == 0) throw Error(Errc::invalid_argument, "compression ratio over zero frames");
  if (m_keyframes == 0) throw Error(Errc::invalid_argument, "compression ratio needs a key frame");
  if (m_keyframes > n_frames) {
    throw Error(Errc::invalid_argument, "more key frames (" + std::to_string(m_keyframes) +
                                            ") than frames (" + std::to_string(n_frames) + ")");
  }
  return 1.0 - static_cast<double>(m_keyframes) / static_cast<double>(n_frames);
}

double histogram_intersection(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(Errc::length_mismatch, "histogram intersection over different lengths");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::min(a[i], b[i]);
  return s;
}

CusResult cus(std::span<const ColorHistogram> system, const UserSummary& user,
              double match_threshold) {
  if (system.empty()) throw Error(Errc::empty_summary, "system summary is empty");
  if (user.key_frames.empty()) {
    throw Error(Errc::empty_summary, "user summary '" + user.user_id + "' is empty");
  }

  std::vector<bool> consumed(user.key_frames.size(), false);
  CusResult r;
  r.user_id = user.user_id;
  r.n_user = user.key_frames.size();
  for (const ColorHistogram& s : system) {
    std::size_t best = consumed.size();
    double best_score = -1.0;
    for (std::size_t j = 0; j < user.key_frames.size(); ++j) {
      if (consumed[j]) continue;
      double score = histogram_intersection(s, user.key_frames[j]);
      if (score >= match_threshold && score > best_score) {
        best = j;
        best_score = score;
      }
    }
    if (best < consumed.size()) {
      consumed[best] = true;
      ++r.n_matched;
    } else {
      ++r.n_nonmatched;
    }
  }
  r.cus_a = static_cast<double>(r.n_matched) / static_cast<double>(r.n_user);
  r.cus_e = static_cast<double>(r.n_nonmatched) / static_cast<double>(r.n_user);
  return r;
}

VideoReport evaluate_video(const Summary& summary, const FrameSequence& frames,
                           std::span<const UserSummary> users, std::size_t n_sampled,
                           const EvalOptions& options) {
  VideoReport report;
  report.source_id = summary.source_id;
  report.n_keyframes = summary.key_frames.size();
  if (options.cr_denominator == CrDenominator::raw) {
    if (!options.raw_frame_count) {
      throw Error(Errc::invalid_argument, "raw CR denominator requested without a raw frame count");
    }
    report.n_frames = *options.raw_frame_count;
  } else {
    report.n_frames = n_sampled;
  }
  report.cr = compression_ratio(report.n_keyframes, report.n_frames);

  std::vector<KeyFrame> ordered = summary.key_frames;
  std::sort(ordered.begin(), ordered.end(),
            [](const KeyFrame& a, const KeyFrame& b) { return a.frame_index < b.frame_index; });
  std::vector<ColorHistogram> system;
  system.reserve(ordered.size());
  for (const KeyFrame& kf : ordered) {
    const Frame* f = frames.find(kf.frame_index);
    if (f == nullptr) {
      throw Error(Errc::missing_frame_index,
                  "key frame " + std::to_string(kf.frame_index) + " is not in the frame sequence");
    }
    system.push_back(color_histogram(*f));
  }

  for (const UserSummary& u : users) {
    report.users.push_back(cus(system, u, options.match_threshold));
  }
  if (!report.users.empty()) {
    for (const CusResult& r : report.users) {
      report.mean_cus_a += r.cus_a;
      report.mean_cus_e += r.cus_e;
    }
    report.mean_cus_a /= static_cast<double>(report.users.size());
    report.mean_cus_e /= static_cast<double>(report.users.size());
  }
  return report;
}

EvalReport aggregate(std::vector<VideoReport> videos) {
  EvalReport report;
  report.videos = std::move(videos);
  if (report.videos.empty()) return report;
  for (const VideoReport& v : report.videos) {
    report.mean_cr += v.cr;
    report.mean_cus_a += v.mean_cus_a;
    report.mean_cus_e += v.mean_cus_e;
  }
  const double n = static_cast<double>(report.videos.size());
  report.mean_cr /= n;
  report.mean_cus_a /= n;
  report.mean_cus_e /= n;
  return report;
}

namespace {

std::vector<std::size_t> read_index_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  std::vector<std::size_t> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(token, &used);
      if (used != token.size() || v < 0) throw std::invalid_argument(token);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, path.string() + ":" + std::to_string(lineno) +
                                         ": not a frame index: '" + token + "'");
    }
  }
  return out;
}

}  // namespace

std::vector<UserSummary> load_user_summaries(const fs::path& users_dir,
                                             const FrameSequence& sampled) {
  if (!fs::is_directory(users_dir)) {
    throw Error(Errc::io_error, "users directory not found: " + users_dir.string());
  }
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(users_dir)) entries.push_back(e.path());
  std::sort(entries.begin(), entries.end());

  std::vector<UserSummary> users;
  for (const fs::path& p : entries) {
    UserSummary u;
    if (fs::is_directory(p)) {
      u.user_id = p.filename().string();
      std::vector<fs::path> images;
      for (const auto& e : fs::directory_iterator(p)) {
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (e.is_regular_file() &&
            (ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".ppm")) {
          images.push_back(e.path());
        }
      }
      std::sort(images.begin(), images.end());
      for (const fs::path& img : images) u.key_frames.push_back(color_histogram(read_image(img)));
    } else if (p.extension() == ".txt") {
      u.user_id = p.stem().string();
      for (std::size_t idx : read_index_file(p)) {
        const Frame* f = sampled.find(idx);
        if (f == nullptr) {
          throw Error(Errc::missing_frame_index, "user '" + u.user_id + "' references frame " +
                                                     std::to_string(idx) +
                                                     " outside the sampled sequence");
        }
        u.key_frames.push_back(color_histogram(*f));
      }
    } else {
      continue;
    }
    if (u.key_frames.empty()) {
      throw Error(Errc::empty_summary, "user summary '" + u.user_id + "' has no frames");
    }
    users.push_back(std::move(u));
  }
  if (users.empty()) {
    throw Error(Errc::empty_summary, "no user summaries in " + users_dir.string());
  }
  return users;
}

std::string format_table(const EvalReport& report) {
  std::vector<std::string> header{"Measure"};
  for (const VideoReport& v : report.videos) header.push_back(v.source_id);
  header.push_back("Mean");

  auto fmt = [](double x, int decimals) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return std::string(buf);
  };
  std::vector<std::vector<std::string>> rows;
  auto add_row = [&](const std::string& name, auto value_of, double mean, int decimals) {
    std::vector<std::string> row{name};
    for (const VideoReport& v : report.videos) row.push_back(fmt(value_of(v), decimals));
    row.push_back(fmt(mean, decimals));
    rows.push_back(std::move(row));
  };
  add_row("CUS(A)", [](const VideoReport& v) { return v.mean_cus_a; }, report.mean_cus_a, 4);
  add_row("CUS(E)", [](const VideoReport& v) { return v.mean_cus_e; }, report.mean_cus_e, 4);
  add_row("Compression Ratio (CR)", [](const VideoReport& v) { return v.cr; }, report.mean_cr, 2);

  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      if (c == 0) {
        out << cells[c] << std::string(width[c] - cells[c].size(), ' ');
      } else {
        out << std::string(width[c] - cells[c].size(), ' ') << cells[c];
      }
    }
    out << '\n';
  };
  emit(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : rows) emit(row);
  return out.str();
}

}  // namespace vidrank
