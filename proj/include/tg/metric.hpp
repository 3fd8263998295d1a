#pragma once

#include <variant>

#include "tg/order.hpp"

namespace tg {

// Retained nodes T^d(g) and fringe slots F^d(g). A fringe entry (n, i) names
// the fresh ⊥-node n^i plugging successor i of retained node n; at d = 0 the
// single entry (root, -1) stands for the fringe node replacing the root.
struct TruncationParts {
  std::vector<NodeId> retained;                // sorted
  std::vector<std::pair<NodeId, int>> fringe;  // sorted
};

TruncationParts truncation_parts(const TermGraph& g, unsigned d,
                                 int node_cap = default_node_cap());

// Rigid truncation ⌊g⌋†d, canonicalized. d = omega is the identity.
CanonicalTermGraph truncate(const TermGraph& g, Depth d,
                            int node_cap = default_node_cap());

// Largest d at which the rigid truncations of g and h coincide (omega iff
// isomorphic).
Depth similarity(const TermGraph& g, const TermGraph& h);

DyadicDistance distance(const TermGraph& g, const TermGraph& h);

struct NotCauchy {
  Position witness;  // minimal position of a persistent hole
  std::string evidence;
};

using LimitResult = std::variant<ApproxResult, NotCauchy>;

// Metric-limit reading of a sequence of total graphs: the limit inferior if
// it is hole-free up to depth_goal, otherwise a non-Cauchy witness.
// Rejects partial inputs.
LimitResult limit_of_sequence(const SequenceProvider& seq, unsigned depth_goal);

// Shared verdict step: wraps a liminf approximation as a metric answer.
LimitResult metric_verdict(ApproxResult liminf_result, unsigned depth_goal);

// Minimal position of the shallowest ⊥-node; nullopt when total.
std::optional<Position> min_bot_position(const TermGraph& g);

}  // namespace tg
