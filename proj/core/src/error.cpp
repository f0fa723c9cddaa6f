#include "vidrank/error.hpp"

namespace vidrank {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::decoder_not_found: return "decoder-not-found";
    case Errc::decoder_failed: return "decoder-nonzero-exit";
    case Errc::zero_frames: return "zero-frames-produced";
    case Errc::empty_directory: return "empty-directory";
    case Errc::undecodable_image: return "undecodable-image";
    case Errc::mixed_dimensions: return "mixed-dimensions";
    case Errc::empty_input: return "empty-input";
    case Errc::all_frames_discarded: return "all-frames-discarded";
    case Errc::frame_too_small: return "frame-too-small";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::missing_frame_index: return "missing-frame-index";
    case Errc::unwritable_output: return "unwritable-output-path";
    case Errc::empty_summary: return "empty-summary";
    case Errc::io_error: return "io-error";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace vidrank
