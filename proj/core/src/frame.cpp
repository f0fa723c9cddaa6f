#include "vidrank/frame.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "vidrank/error.hpp"

namespace vidrank {

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::parse_error, "not a rational number: '" + whole + "'");
  }
  return value;
}

}  // namespace

Rational normalized(Rational r) {
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(Errc::parse_error, "empty rational");
  Rational r;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    r.num = parse_int(std::string_view(text).substr(0, slash), text);
    r.den = parse_int(std::string_view(text).substr(slash + 1), text);
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t decimals = text.size() - dot - 1;
    if (decimals > 12) throw Error(Errc::parse_error, "too many decimals: '" + text + "'");
    r.num = parse_int(digits, text);
    r.den = 1;
    for (std::size_t i = 0; i < decimals; ++i) r.den *= 10;
  } else {
    r.num = parse_int(text, text);
    r.den = 1;
  }
  if (r.den == 0 || r.num <= 0 || r.den < 0) {
    throw Error(Errc::parse_error, "rate must be a positive rational: '" + text + "'");
  }
  return normalized(r);
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

double timestamp_for(std::size_t index, const Rational& rate) noexcept {
  // index * den / num, one rounding for integer rates.
  return static_cast<double>(static_cast<std::int64_t>(index) * rate.den) /
         static_cast<double>(rate.num);
}

void validate_frame(const Frame& frame) {
  if (frame.width < 1 || frame.height < 1) {
    throw Error(Errc::invalid_argument, "frame " + std::to_string(frame.index) +
                                            " has empty dimensions");
  }
  if (frame.pixels.size() != frame.pixel_count() * 3) {
    throw Error(Errc::invalid_argument, "frame " + std::to_string(frame.index) +
                                            " pixel buffer does not match width*height*3");
  }
}

const Frame* FrameSequence::find(std::size_t index) const noexcept {
  auto it = std::lower_bound(frames.begin(), frames.end(), index,
                             [](const Frame& f, std::size_t i) { return f.index < i; });
  if (it == frames.end() || it->index != index) return nullptr;
  return &*it;
}

void validate_sequence(const FrameSequence& seq) {
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const Frame& f = seq.frames[i];
    validate_frame(f);
    if (i > 0) {
      const Frame& prev = seq.frames[i - 1];
      if (f.index <= prev.index) {
        throw Error(Errc::invalid_argument, "frame indices must be strictly increasing");
      }
      if (f.width != prev.width || f.height != prev.height) {
        throw Error(Errc::mixed_dimensions,
                    "frame " + std::to_string(f.index) + " is " + std::to_string(f.width) + "x" +
                        std::to_string(f.height) + ", expected " + std::to_string(prev.width) +
                        "x" + std::to_string(prev.height));
      }
    }
  }
}

}  // namespace vidrank
