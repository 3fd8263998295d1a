#pragma once

#include "tg/graph.hpp"

namespace tg {

// Total node map g -> h, tagged with the Δ it was computed for.
struct NodeMap {
  std::vector<NodeId> to;  // indexed by source node id; -1 where undefined
  DeltaSet delta;

  NodeId operator()(NodeId n) const { return to[n]; }
  bool defined(NodeId n) const { return n >= 0 && n < (int)to.size() && to[n] >= 0; }
};

// The unique Δ-homomorphism g -> h if one exists (root-to-root propagation).
std::optional<NodeMap> find_delta_hom(const TermGraph& g, const TermGraph& h,
                                      const DeltaSet& delta);

// Checks the root/labelling/successor conditions for an explicit map.
bool is_delta_hom(const NodeMap& phi, const TermGraph& g, const TermGraph& h,
                  const DeltaSet& delta);

// One-sided rigidity criterion: every acyclic position of phi(n) in h is a
// position of n in g, for each non-Δ node n. Throws not_a_homomorphism_error
// if phi fails the Δ-homomorphism conditions.
bool is_rigid(const NodeMap& phi, const TermGraph& g, const TermGraph& h,
              const DeltaSet& delta);

std::optional<NodeMap> find_rigid_bot_hom(const TermGraph& g, const TermGraph& h);

bool is_isomorphic(const TermGraph& g, const TermGraph& h);

// Equality of (possibly infinite) unravellings, decided by partition
// refinement over the disjoint union.
bool unravel_eq(const TermGraph& g, const TermGraph& h);

// True iff some common position reaches n in g and m in h (synchronized
// product reachability from the root pair).
bool position_sets_intersect(const TermGraph& g, NodeId n, const TermGraph& h, NodeId m);

// All node pairs with a common position, from the root pair.
std::vector<std::pair<NodeId, NodeId>> common_position_pairs(const TermGraph& g,
                                                             const TermGraph& h);

}  // namespace tg
