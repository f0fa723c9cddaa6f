#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace vidrank {

// Exact positive rational, used for sampling rates such as 1, 1/2 or
// 30000/1001 frames per second.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// Parses "2", "1/2", "0.5" or "30000/1001". Throws Error(parse_error) on
// malformed or non-positive input.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
Rational normalized(Rational r);

// Seconds from video start for the given sampled index at the given rate.
double timestamp_for(std::size_t index, const Rational& rate) noexcept;

// One sampled picture: row-major RGB, 8 bits per channel.
struct Frame {
  std::size_t index = 0;
  double timestamp_s = 0.0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  const std::uint8_t* pixel(int x, int y) const noexcept {
    return pixels.data() + (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                            static_cast<std::size_t>(x)) * 3;
  }
};

// Throws Error(invalid_argument) if the raster is empty or the buffer length
// does not match width * height * 3.
void validate_frame(const Frame& frame);

struct FrameSequence {
  std::vector<Frame> frames;
  Rational sample_rate{1, 1};
  std::string source_id;
  // Non-fatal notes collected while loading (e.g. a missing manifest).
  std::vector<std::string> warnings;

  bool empty() const noexcept { return frames.empty(); }
  std::size_t size() const noexcept { return frames.size(); }

  // Returns nullptr when no frame carries that index.
  const Frame* find(std::size_t index) const noexcept;
};

// Checks strictly increasing indices and uniform dimensions.
void validate_sequence(const FrameSequence& seq);

}  // namespace vidrank
