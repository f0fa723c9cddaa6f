#include "vidrank/pipeline.hpp"

#include "vidrank/error.hpp"

namespace vidrank {

const char* to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::ingest: return "ingest";
    case Stage::prefilter: return "prefilter";
    case Stage::features: return "features";
    case Stage::graph: return "simgraph";
    case Stage::rank: return "vidrank";
    case Stage::select: return "select";
    case Stage::storyboard: return "storyboard";
    case Stage::evaluate: return "evaluate";
  }
  return "unknown";
}

namespace {

template <typename Fn>
auto in_stage(Stage stage, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

PipelineResult run_pipeline(const FrameSequence& seq, const PipelineConfig& config) {
  PipelineResult out;

  in_stage(Stage::prefilter, [&] {
    if (seq.empty()) throw Error(Errc::empty_input, "no frames to summarize");
    validate_sequence(seq);
    if (config.prefilter) {
      PrefilterResult filtered =
          remove_monochromatic(seq, config.noise, config.variance_basis, config.threads);
      if (filtered.report.all_discarded(seq.size())) {
        throw Error(Errc::all_frames_discarded, "every frame was classified as monochromatic");
      }
      out.noise = std::move(filtered.report);
      out.kept = std::move(filtered.kept);
    } else {
      out.kept = seq;
      out.noise.beta = config.noise.beta;
    }
    return 0;
  });

  out.features = in_stage(Stage::features, [&] {
    return extract_features(out.kept, config.features, config.threads);
  });

  out.graph = in_stage(Stage::graph, [&] {
    std::vector<std::size_t> frame_index_of;
    frame_index_of.reserve(out.kept.size());
    for (const Frame& f : out.kept.frames) frame_index_of.push_back(f.index);
    return build_graph(distance_matrix(out.features, config.threads), config.beta_graph,
                       std::move(frame_index_of));
  });

  out.ranks = in_stage(Stage::rank, [&] {
    RankParams p = config.rank;
    p.threads = config.threads;
    return compute_ranks(out.graph, p);
  });

  out.selection = in_stage(Stage::select, [&] {
    SelectionParams sp = config.selection;
    sp.rank = config.rank;
    SummaryContext ctx{seq.source_id, seq.sample_rate, config.rank.damping};
    return select_keyframes(out.graph, out.ranks, sp, ctx);
  });
  return out;
}

}  // namespace vidrank
