#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "vidrank/frame.hpp"
#include "vidrank/rank.hpp"

namespace vidrank {

struct GridLayout {
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::size_t filler_cells = 0;
};

// ceil(k / columns) rows; trailing cells of the last row are fillers.
GridLayout grid_layout(std::size_t tiles, std::size_t columns);

struct TileSize {
  int width = 0;
  int height = 0;
};

struct StoryboardOptions {
  std::size_t columns = 5;
  // Box-filter downsample each tile to this size; native resolution if unset.
  std::optional<TileSize> tile_size;
};

struct Storyboard {
  Summary summary;
  GridLayout layout;
  int tile_width = 0;
  int tile_height = 0;
  std::vector<std::size_t> tile_order;  // frame indices, left-to-right, top-to-bottom
  std::filesystem::path contact_sheet;
  std::vector<std::filesystem::path> key_frame_images;
};

// Assembles key-frame tiles in ascending frame_index order into one montage.
// Filler cells are black.
Frame compose_contact_sheet(const Summary& summary, const FrameSequence& frames,
                            const StoryboardOptions& options, GridLayout* layout = nullptr);

// Writes <source_id>_storyboard.png and <source_id>_kf_<frame_index>.png
// into out_dir. Throws Error(missing_frame_index) or
// Error(unwritable_output).
Storyboard render_contact_sheet(const Summary& summary, const FrameSequence& frames,
                                const std::filesystem::path& out_dir,
                                const StoryboardOptions& options = {});

// Box-filter resize with fixed area weights.
Frame box_downsample(const Frame& frame, TileSize size);

}  // namespace vidrank
