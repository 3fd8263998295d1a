#include "tg/metric.hpp"

#include <algorithm>
#include <map>

namespace tg {

TruncationParts truncation_parts(const TermGraph& g, unsigned d, int node_cap) {
  TruncationParts parts;
  if (d == 0) {
    parts.fringe.push_back({g.root, -1});
    return parts;
  }
  auto depths = all_depths(g);
  auto preds = acyclic_predecessor_table(g, node_cap);

  // Retained: least set containing all nodes above depth d and closed under
  // acyclic predecessors.
  std::vector<bool> in(g.size(), false);
  std::vector<NodeId> work;
  for (NodeId n = 0; n < g.size(); ++n)
    if (depths[n] != ~0u && depths[n] < d) {
      in[n] = true;
      work.push_back(n);
    }
  while (!work.empty()) {
    NodeId n = work.back();
    work.pop_back();
    for (NodeId m : preds[n])
      if (!in[m]) {
        in[m] = true;
        work.push_back(m);
      }
  }
  for (NodeId n = 0; n < g.size(); ++n)
    if (in[n]) parts.retained.push_back(n);

  // Fringe: cut successors, plus cycle-closing edges from nodes at the rim.
  for (NodeId n : parts.retained) {
    for (int i = 0; i < g.arity(n); ++i) {
      NodeId v = g.succ(n)[i];
      if (!in[v]) {
        parts.fringe.push_back({n, i});
      } else if (depths[n] + 1 >= d && !preds[v].count(n)) {
        parts.fringe.push_back({n, i});
      }
    }
  }
  return parts;
}

CanonicalTermGraph truncate(const TermGraph& g, Depth d, int node_cap) {
  if (d.is_omega()) return canonicalize(g);
  unsigned dd = d.value();
  if (dd == 0) {
    TermGraph bot;
    bot.nodes.push_back({Label::bottom(), {}});
    bot.root = 0;
    return canonicalize(bot);
  }
  auto parts = truncation_parts(g, dd, node_cap);
  TermGraph out;
  std::vector<NodeId> remap(g.size(), -1);
  for (NodeId n : parts.retained) {
    remap[n] = (NodeId)out.nodes.size();
    out.nodes.push_back({g.label(n), {}});
  }
  std::map<std::pair<NodeId, int>, NodeId> fringe_id;
  for (auto& f : parts.fringe) {
    fringe_id[f] = (NodeId)out.nodes.size();
    out.nodes.push_back({Label::bottom(), {}});
  }
  for (NodeId n : parts.retained) {
    for (int i = 0; i < g.arity(n); ++i) {
      auto it = fringe_id.find({n, i});
      out.nodes[remap[n]].succ.push_back(it != fringe_id.end() ? it->second
                                                               : remap[g.succ(n)[i]]);
    }
  }
  out.root = remap[g.root];
  return canonicalize(out);
}

Depth similarity(const TermGraph& g, const TermGraph& h) {
  if (canonicalize(g) == canonicalize(h)) return Depth::omega();
  unsigned bound =
      std::max(graph_depth(g).value(), graph_depth(h).value()) + 2;
  unsigned best = 0;
  for (unsigned d = 1; d <= bound; ++d) {
    if (truncate(g, Depth::finite(d)) == truncate(h, Depth::finite(d)))
      best = d;
    else
      break;  // agreement is downward closed in d
  }
  return Depth::finite(best);
}

DyadicDistance distance(const TermGraph& g, const TermGraph& h) {
  return DyadicDistance::from_similarity(similarity(g, h));
}

std::optional<Position> min_bot_position(const TermGraph& g) {
  auto pos = minimal_positions(g);
  std::optional<Position> best;
  for (NodeId n = 0; n < g.size(); ++n) {
    if (!g.label(n).is_bottom()) continue;
    const Position& p = pos[n];
    if (!best || p.size() < best->size() || (p.size() == best->size() && p < *best))
      best = p;
  }
  return best;
}

LimitResult metric_verdict(ApproxResult r, unsigned depth_goal) {
  Depth bd = bot_depth(r.graph);
  if (bd < Depth::finite(depth_goal)) {
    auto w = min_bot_position(r.graph);
    return NotCauchy{*w, "hole persists at depth " + bd.text() + " < goal " +
                             std::to_string(depth_goal) + " [" + r.exactness.text() + "] " +
                             r.evidence};
  }
  return r;
}

LimitResult limit_of_sequence(const SequenceProvider& seq, unsigned depth_goal) {
  for (const auto& g : seq.prefix)
    if (contains_bot(g)) throw partial_input_error("limit_of_sequence: partial graph in input");
  for (const auto& g : seq.period)
    if (contains_bot(g)) throw partial_input_error("limit_of_sequence: partial graph in input");
  return metric_verdict(liminf(seq, depth_goal), depth_goal);
}

}  // namespace tg
