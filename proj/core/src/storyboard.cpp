#include "vidrank/storyboard.hpp"

#include <algorithm>
#include <string>

#include "vidrank/error.hpp"
#include "vidrank/ingest.hpp"
#include "vidrank/serialize.hpp"

namespace fs = std::filesystem;

namespace vidrank {

GridLayout grid_layout(std::size_t tiles, std::size_t columns) {
  if (columns == 0) throw Error(Errc::invalid_argument, "storyboard needs at least one column");
  GridLayout layout;
  layout.columns = columns;
  layout.rows = (tiles + columns - 1) / columns;
  layout.filler_cells = layout.rows * columns - tiles;
  return layout;
}

Frame box_downsample(const Frame& frame, TileSize size) {
  validate_frame(frame);
  if (size.width < 1 || size.height < 1) {
    throw Error(Errc::invalid_argument, "tile size must be positive");
  }
  Frame out;
  out.index = frame.index;
  out.timestamp_s = frame.timestamp_s;
  out.width = size.width;
  out.height = size.height;
  out.pixels.resize(out.pixel_count() * 3);

  // Each output pixel averages the source rectangle it covers, weighting
  // partially covered source pixels by their overlap.
  const double sx = static_cast<double>(frame.width) / size.width;
  const double sy = static_cast<double>(frame.height) / size.height;
  for (int oy = 0; oy < size.height; ++oy) {
    const double fy0 = oy * sy;
    const double fy1 = fy0 + sy;
    for (int ox = 0; ox < size.width; ++ox) {
      const double fx0 = ox * sx;
      const double fx1 = fx0 + sx;
      double acc[3] = {0.0, 0.0, 0.0};
      double area = 0.0;
      for (int y = static_cast<int>(fy0); y < std::min<double>(fy1, frame.height); ++y) {
        const double wy = std::min<double>(y + 1, fy1) - std::max<double>(y, fy0);
        if (wy <= 0.0) continue;
        for (int x = static_cast<int>(fx0); x < std::min<double>(fx1, frame.width); ++x) {
          const double wx = std::min<double>(x + 1, fx1) - std::max<double>(x, fx0);
          if (wx <= 0.0) continue;
          const std::uint8_t* p = frame.pixel(x, y);
          const double w = wx * wy;
          acc[0] += w * p[0];
          acc[1] += w * p[1];
          acc[2] += w * p[2];
          area += w;
        }
      }
      std::uint8_t* q = out.pixels.data() +
                        (static_cast<std::size_t>(oy) * size.width + ox) * 3;
      for (int c = 0; c < 3; ++c) {
        q[c] = static_cast<std::uint8_t>(std::clamp(acc[c] / area + 0.5, 0.0, 255.0));
      }
    }
  }
  return out;
}

namespace {

std::vector<const Frame*> ordered_tiles(const Summary& summary, const FrameSequence& frames) {
  std::vector<std::size_t> order;
  for (const KeyFrame& kf : summary.key_frames) order.push_back(kf.frame_index);
  std::sort(order.begin(), order.end());
  std::vector<const Frame*> tiles;
  for (std::size_t idx : order) {
    const Frame* f = frames.find(idx);
    if (f == nullptr) {
      throw Error(Errc::missing_frame_index,
                  "key frame " + std::to_string(idx) + " is not in the frame sequence");
    }
    tiles.push_back(f);
  }
  return tiles;
}

}  // namespace

Frame compose_contact_sheet(const Summary& summary, const FrameSequence& frames,
                            const StoryboardOptions& options, GridLayout* layout_out) {
  std::vector<const Frame*> tiles = ordered_tiles(summary, frames);
  GridLayout layout = grid_layout(tiles.size(), options.columns);
  if (layout_out != nullptr) *layout_out = layout;

  int tw = 1;
  int th = 1;
  if (options.tile_size) {
    tw = options.tile_size->width;
    th = options.tile_size->height;
  } else if (!tiles.empty()) {
    tw = tiles.front()->width;
    th = tiles.front()->height;
  }

  Frame sheet;
  sheet.width = static_cast<int>(layout.columns) * tw;
  sheet.height = std::max<int>(1, static_cast<int>(layout.rows)) * th;
  sheet.pixels.assign(sheet.pixel_count() * 3, 0);

  for (std::size_t i = 0; i < tiles.size(); ++i) {
    Frame scaled;
    const Frame* tile = tiles[i];
    if (options.tile_size) {
      scaled = box_downsample(*tile, *options.tile_size);
      tile = &scaled;
    }
    const int ox = static_cast<int>(i % layout.columns) * tw;
    const int oy = static_cast<int>(i / layout.columns) * th;
    for (int y = 0; y < th; ++y) {
      const std::uint8_t* src = tile->pixel(0, y);
      std::uint8_t* dst = sheet.pixels.data() +
                          (static_cast<std::size_t>(oy + y) * sheet.width + ox) * 3;
      std::copy(src, src + static_cast<std::size_t>(tw) * 3, dst);
    }
  }
  return sheet;
}

Storyboard render_contact_sheet(const Summary& summary, const FrameSequence& frames,
                                const fs::path& out_dir, const StoryboardOptions& options) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw Error(Errc::unwritable_output, "cannot create output directory " + out_dir.string());
  }

  Storyboard board;
  board.summary = summary;
  Frame sheet = compose_contact_sheet(summary, frames, options, &board.layout);
  std::vector<const Frame*> tiles = ordered_tiles(summary, frames);
  board.tile_width = static_cast<int>(sheet.width / board.layout.columns);
  board.tile_height = board.layout.rows == 0 ? sheet.height
                                             : static_cast<int>(sheet.height / board.layout.rows);

  const std::string id = summary.source_id.empty() ? "video" : summary.source_id;
  board.contact_sheet = out_dir / (id + "_storyboard.png");
  write_png(sheet, board.contact_sheet);
  for (const Frame* f : tiles) {
    board.tile_order.push_back(f->index);
    fs::path p = out_dir / (id + "_kf_" + std::to_string(f->index) + ".png");
    write_png(*f, p);
    board.key_frame_images.push_back(p);
  }
  write_json(to_json(summary), out_dir / (id + "_summary.json"));
  return board;
}

}  // namespace vidrank
