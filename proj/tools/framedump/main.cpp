// Minimal image-sequence exporter used as the external decoder when ffmpeg is
// not installed:
//
//   vidrank-framedump <video> <rate> <output-pattern>
//
// <rate> is "num/den" or an integer. Output k is the first source frame whose
// timestamp is >= k / rate, written with printf-style <output-pattern>
// (e.g. dir/clip_%06d.png) starting at 0.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/videoio.hpp>

namespace {

bool parse_rate(const std::string& text, double& num, double& den) {
  char* end = nullptr;
  auto slash = text.find('/');
  num = std::strtod(text.substr(0, slash).c_str(), &end);
  den = slash == std::string::npos ? 1.0 : std::strtod(text.substr(slash + 1).c_str(), &end);
  return num > 0.0 && den > 0.0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: %s <video> <rate> <output-pattern>\n", argv[0]);
    return 2;
  }
  double num = 0.0;
  double den = 0.0;
  if (!parse_rate(argv[2], num, den)) {
    std::fprintf(stderr, "invalid rate: %s\n", argv[2]);
    return 2;
  }

  cv::VideoCapture capture(argv[1]);
  if (!capture.isOpened()) {
    std::fprintf(stderr, "cannot open video: %s\n", argv[1]);
    return 1;
  }
  double src_fps = capture.get(cv::CAP_PROP_FPS);
  if (!(src_fps > 0.0)) {
    std::fprintf(stderr, "video reports no frame rate: %s\n", argv[1]);
    return 1;
  }

  const std::vector<int> png{cv::IMWRITE_PNG_COMPRESSION, 6};
  std::vector<char> name(4096);
  long long next_out = 0;
  long long src_index = 0;
  cv::Mat frame;
  while (capture.read(frame)) {
    // Emit every pending output slot this frame is the first to reach.
    const double t = static_cast<double>(src_index) / src_fps;
    while (t + 1e-9 >= static_cast<double>(next_out) * den / num) {
      std::snprintf(name.data(), name.size(), argv[3], static_cast<int>(next_out));
      if (!cv::imwrite(name.data(), frame, png)) {
        std::fprintf(stderr, "cannot write %s\n", name.data());
        return 1;
      }
      ++next_out;
    }
    ++src_index;
  }
  if (next_out == 0) {
    std::fprintf(stderr, "no frames decoded from %s\n", argv[1]);
    return 1;
  }
  return 0;
}
