#pragma once

#include <filesystem>
#include <string>

#include "vidrank/frame.hpp"

namespace vidrank {

// Command template for the external decoder. Placeholders:
//   {input}   video path (shell-quoted)
//   {fps}     sampling rate, "num/den" or an integer
//   {workdir} output directory (shell-quoted)
//   {name}    file-name prefix; output files must be {name}_NNNNNN.png
//             numbered from 000000.
struct DecoderConfig {
  std::string command_template = default_command_template();

  static std::string default_command_template();
};

// Samples `video` at `rate` by running the external decoder, then loads the
// produced PNG files from `workdir`. Stale frame files with the same prefix
// are removed first, and a manifest.json is written next to the frames.
FrameSequence sample_via_decoder(const std::filesystem::path& video, const Rational& rate,
                                 const std::filesystem::path& workdir,
                                 const DecoderConfig& decoder = {});

// Loads PNG/JPEG/PPM images from `dir` in lexicographic file-name order.
// When every file follows the <name>_NNNNNN pattern the embedded index is
// used; otherwise frames are numbered by position. An optional manifest.json
// supplies source_id and sample_rate_fps.
FrameSequence load_frame_dir(const std::filesystem::path& dir);

// Writes <name>_NNNNNN.png per frame plus manifest.json. Output is lossless so
// load_frame_dir reproduces the sequence exactly.
void write_frame_dir(const FrameSequence& seq, const std::filesystem::path& dir,
                     const std::string& name = "frame");

// Single-image helpers, shared with the storyboard and evaluation modules.
Frame read_image(const std::filesystem::path& path);
void write_png(const Frame& frame, const std::filesystem::path& path);

// File-name-safe prefix derived from a video stem.
std::string sanitize_name(const std::string& stem);

// Resolves the decoder executable (first token of the command) against PATH.
// Returns an empty path when it cannot be found.
std::filesystem::path find_executable(const std::string& name);

}  // namespace vidrank
