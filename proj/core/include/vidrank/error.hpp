#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vidrank {

enum class Errc {
  invalid_argument,
  decoder_not_found,
  decoder_failed,
  zero_frames,
  empty_directory,
  undecodable_image,
  mixed_dimensions,
  empty_input,
  all_frames_discarded,
  frame_too_small,
  length_mismatch,
  missing_frame_index,
  unwritable_output,
  empty_summary,
  io_error,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries a machine-checkable code next
// to the human-readable message.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace vidrank
