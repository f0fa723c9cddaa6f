#include "vidrank/serialize.hpp"

#include <fstream>

#include "vidrank/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vidrank {

json to_json(const NoiseReport& report) {
  return json{{"threshold", report.threshold},
              {"beta", report.beta},
              {"variances", report.variances},
              {"discarded", report.discarded}};
}

json to_json(const FeatureVector& fv, std::size_t frame_index) {
  return json{{"frame_index", frame_index},
              {"color", std::vector<double>(fv.color().begin(), fv.color().end())},
              {"edge", std::vector<double>(fv.edge().begin(), fv.edge().end())}};
}

json to_json(const SimilarityGraph& g) {
  json edges = json::array();
  for (std::size_t u = 0; u < g.n; ++u) {
    for (const Neighbor& nb : g.adjacency[u]) {
      if (u < nb.node) edges.push_back(json::array({u, nb.node, nb.similarity}));
    }
  }
  return json{{"n", g.n},
              {"threshold", g.threshold},
              {"frame_indices", g.frame_index_of},
              {"edges", std::move(edges)}};
}

json to_json(const RankState& state, const SimilarityGraph& g) {
  return json{{"n", g.n},
              {"iterations", state.iterations},
              {"converged", state.converged},
              {"frame_indices", g.frame_index_of},
              {"vdr", state.vdr}};
}

json to_json(const Summary& summary) {
  json key_frames = json::array();
  for (const KeyFrame& kf : summary.key_frames) {
    key_frames.push_back(
        {{"frame_index", kf.frame_index}, {"timestamp_s", kf.timestamp_s}, {"rank", kf.rank}});
  }
  return json{{"source_id", summary.source_id},
              {"model", to_string(summary.model)},
              {"alpha", summary.alpha},
              {"d", summary.damping},
              {"k_requested", summary.k_requested},
              {"k_delivered", summary.k_delivered},
              {"key_frames", std::move(key_frames)}};
}

Summary summary_from_json(const json& j) {
  try {
    Summary s;
    s.source_id = j.at("source_id").get<std::string>();
    s.model = parse_model(j.at("model").get<std::string>());
    s.alpha = j.at("alpha").get<double>();
    s.damping = j.at("d").get<double>();
    s.k_requested = j.at("k_requested").get<std::size_t>();
    s.k_delivered = j.at("k_delivered").get<std::size_t>();
    for (const json& kf : j.at("key_frames")) {
      s.key_frames.push_back({kf.at("frame_index").get<std::size_t>(),
                              kf.at("timestamp_s").get<double>(), kf.at("rank").get<double>()});
    }
    if (s.key_frames.size() != s.k_delivered) {
      throw Error(Errc::parse_error, "summary k_delivered does not match its key_frames");
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("malformed summary JSON: ") + e.what());
  }
}

json to_json(const CusResult& r) {
  return json{{"user_id", r.user_id},     {"n_matched", r.n_matched},
              {"n_nonmatched", r.n_nonmatched}, {"n_user", r.n_user},
              {"cus_a", r.cus_a},         {"cus_e", r.cus_e}};
}

json to_json(const VideoReport& r) {
  json users = json::array();
  for (const CusResult& u : r.users) users.push_back(to_json(u));
  return json{{"source_id", r.source_id}, {"n_keyframes", r.n_keyframes},
              {"n_frames", r.n_frames},   {"cr", r.cr},
              {"users", std::move(users)}, {"mean_cus_a", r.mean_cus_a},
              {"mean_cus_e", r.mean_cus_e}};
}

json to_json(const EvalReport& r) {
  json videos = json::array();
  for (const VideoReport& v : r.videos) videos.push_back(to_json(v));
  return json{{"videos", std::move(videos)},
              {"mean", {{"cr", r.mean_cr}, {"cus_a", r.mean_cus_a}, {"cus_e", r.mean_cus_e}}}};
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::unwritable_output, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::unwritable_output, "failed writing " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, path.string() + ": " + e.what());
  }
}

}  // namespace vidrank
