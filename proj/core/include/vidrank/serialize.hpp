#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "vidrank/evalkit.hpp"
#include "vidrank/features.hpp"
#include "vidrank/prefilter.hpp"
#include "vidrank/rank.hpp"
#include "vidrank/simgraph.hpp"

namespace vidrank {

// {threshold, beta, variances, discarded}
nlohmann::json to_json(const NoiseReport& report);

// {frame_index, color, edge}
nlohmann::json to_json(const FeatureVector& fv, std::size_t frame_index);

// {n, threshold, frame_indices, edges: [[u, v, sim], ...]} with u < v.
nlohmann::json to_json(const SimilarityGraph& g);

// {n, iterations, converged, frame_indices, vdr}
nlohmann::json to_json(const RankState& state, const SimilarityGraph& g);

// {source_id, model, alpha, d, k_requested, k_delivered,
//  key_frames: [{frame_index, timestamp_s, rank}]}
nlohmann::json to_json(const Summary& summary);
Summary summary_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CusResult& r);
nlohmann::json to_json(const VideoReport& r);
nlohmann::json to_json(const EvalReport& r);

// Pretty-printed with a trailing newline.
void write_json(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace vidrank
