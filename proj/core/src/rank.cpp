#include "vidrank/rank.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "vidrank/error.hpp"
#include "vidrank/parallel.hpp"

namespace vidrank {

void validate(const RankParams& p) {
  if (!(p.damping > 0.0 && p.damping < 1.0)) {
    throw Error(Errc::invalid_argument, "damping must lie in (0, 1)");
  }
  if (!(p.tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (p.max_iters < 1) throw Error(Errc::invalid_argument, "max_iters must be at least 1");
}

void validate(const SelectionParams& p) {
  if (!(p.alpha > 0.0)) throw Error(Errc::invalid_argument, "alpha must be positive");
  if (p.k_frames < 1) throw Error(Errc::invalid_argument, "k_frames must be at least 1");
  if (p.rerank) validate(p.rank);
}

RankState compute_ranks(const SimilarityGraph& g, const RankParams& p) {
  validate(p);
  const std::size_t n = g.n;
  const double d = p.damping;
  const double stop_bound = d / (1.0 - d);

  RankState state;
  state.vdr.assign(n, p.initial_rank);
  state.eliminated.assign(n, false);

  std::vector<double> share(n, 0.0);
  std::vector<double> next(n, 0.0);
  for (int it = 1; it <= p.max_iters; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t deg = g.degree(v);
      share[v] = deg == 0 ? 0.0 : state.vdr[v] / static_cast<double>(deg);
    }
    parallel_for(n, p.threads, [&](std::size_t u) {
      double acc = 0.0;
      for (const Neighbor& nb : g.adjacency[u]) acc += share[nb.node];
      next[u] = (1.0 - d) + d * acc;
    });
    double change = 0.0;
    for (std::size_t u = 0; u < n; ++u) change += std::abs(next[u] - state.vdr[u]);
    state.vdr.swap(next);
    state.iterations = it;
    if (stop_bound * change < p.tol) {
      state.converged = true;
      break;
    }
  }
  return state;
}

std::string to_string(PenaltyModel model) {
  switch (model) {
    case PenaltyModel::similarity_weighted: return "MODEL1";
    case PenaltyModel::uniform: return "MODEL2";
    case PenaltyModel::eliminate: return "MODEL3";
  }
  return "MODEL3";
}

PenaltyModel parse_model(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t == "1" || t == "MODEL1") return PenaltyModel::similarity_weighted;
  if (t == "2" || t == "MODEL2") return PenaltyModel::uniform;
  if (t == "3" || t == "MODEL3") return PenaltyModel::eliminate;
  throw Error(Errc::parse_error, "unknown model '" + text + "' (expected 1, 2 or 3)");
}

namespace {

// Ranks the subgraph induced by `active` and writes the result back; inactive
// nodes keep their current value.
void rerank_active(const SimilarityGraph& g, const std::vector<bool>& active, RankState& state,
                   const RankParams& params) {
  std::vector<std::size_t> local_of(g.n, g.n);
  std::vector<std::size_t> global_of;
  for (std::size_t u = 0; u < g.n; ++u) {
    if (active[u]) {
      local_of[u] = global_of.size();
      global_of.push_back(u);
    }
  }
  if (global_of.empty()) return;

  SimilarityGraph sub;
  sub.n = global_of.size();
  sub.threshold = g.threshold;
  sub.adjacency.resize(sub.n);
  for (std::size_t lu = 0; lu < sub.n; ++lu) {
    const std::size_t u = global_of[lu];
    sub.frame_index_of.push_back(g.frame_index_of[u]);
    for (const Neighbor& nb : g.adjacency[u]) {
      if (active[nb.node]) sub.adjacency[lu].push_back({local_of[nb.node], nb.similarity});
    }
  }
  RankState local = compute_ranks(sub, params);
  for (std::size_t lu = 0; lu < sub.n; ++lu) state.vdr[global_of[lu]] = local.vdr[lu];
}

}  // namespace

SelectionResult select_keyframes(const SimilarityGraph& g, RankState state,
                                 const SelectionParams& sp, const SummaryContext& ctx) {
  validate(sp);
  if (state.vdr.size() != g.n) {
    throw Error(Errc::length_mismatch, "rank vector does not match the graph");
  }
  state.eliminated.resize(g.n, false);

  std::vector<bool> selected(g.n, false);
  for (std::size_t u : state.selected) selected[u] = true;

  SelectionResult result;
  std::vector<double> rank_at_pick(g.n, 0.0);

  while (state.selected.size() < sp.k_frames) {
    std::size_t best = g.n;
    for (std::size_t u = 0; u < g.n; ++u) {
      if (selected[u] || !(state.vdr[u] > 0.0)) continue;
      if (best == g.n || state.vdr[u] > state.vdr[best] ||
          (state.vdr[u] == state.vdr[best] && g.frame_index_of[u] < g.frame_index_of[best])) {
        best = u;
      }
    }
    if (best == g.n) break;

    const std::size_t h = best;
    const double rank_h = state.vdr[h];
    rank_at_pick[h] = rank_h;
    selected[h] = true;
    state.selected.push_back(h);
    result.pick_order.push_back(h);
    state.vdr[h] = 0.0;

    for (const Neighbor& nb : g.adjacency[h]) {
      const std::size_t u = nb.node;
      if (selected[u]) continue;
      switch (sp.model) {
        case PenaltyModel::similarity_weighted:
          state.vdr[u] -= sp.alpha * nb.similarity * rank_h;
          break;
        case PenaltyModel::uniform:
          state.vdr[u] -= sp.alpha * rank_h;
          break;
        case PenaltyModel::eliminate:
          state.vdr[u] = 0.0;
          state.eliminated[u] = true;
          break;
      }
    }

    if (sp.rerank && sp.model == PenaltyModel::eliminate) {
      std::vector<bool> active(g.n, false);
      for (std::size_t u = 0; u < g.n; ++u) active[u] = !selected[u] && !state.eliminated[u];
      rerank_active(g, active, state, sp.rank);
    }
  }

  Summary& summary = result.summary;
  summary.source_id = ctx.source_id;
  summary.model = sp.model;
  summary.alpha = sp.alpha;
  summary.damping = ctx.damping;
  summary.k_requested = sp.k_frames;
  summary.k_delivered = result.pick_order.size();
  for (std::size_t h : result.pick_order) {
    const std::size_t fi = g.frame_index_of[h];
    summary.key_frames.push_back({fi, timestamp_for(fi, ctx.sample_rate), rank_at_pick[h]});
  }
  std::sort(summary.key_frames.begin(), summary.key_frames.end(),
            [](const KeyFrame& a, const KeyFrame& b) { return a.frame_index < b.frame_index; });

  result.state = std::move(state);
  return result;
}

}  // namespace vidrank
