#include "tg/hom.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace tg {

std::optional<NodeMap> find_delta_hom(const TermGraph& g, const TermGraph& h,
                                      const DeltaSet& delta) {
  std::vector<NodeId> to(g.size(), -1);
  std::vector<NodeId> work;
  to[g.root] = h.root;
  work.push_back(g.root);
  while (!work.empty()) {
    NodeId u = work.back();
    work.pop_back();
    const Label& lu = g.label(u);
    if (delta.contains(lu)) continue;  // conditions suspended at Δ-nodes
    NodeId v = to[u];
    if (lu != h.label(v)) return std::nullopt;
    const auto& su = g.succ(u);
    const auto& sv = h.succ(v);
    if (su.size() != sv.size()) return std::nullopt;
    for (size_t i = 0; i < su.size(); ++i) {
      NodeId a = su[i], b = sv[i];
      if (to[a] == -1) {
        to[a] = b;
        work.push_back(a);
      } else if (to[a] != b) {
        return std::nullopt;  // one source node forced onto two targets
      }
    }
  }
  // Interior nodes are non-nullary, hence non-Δ, so propagation reaches
  // every node of g.
  return NodeMap{std::move(to), delta};
}

bool is_delta_hom(const NodeMap& phi, const TermGraph& g, const TermGraph& h,
                  const DeltaSet& delta) {
  if ((int)phi.to.size() != g.size()) return false;
  for (NodeId n = 0; n < g.size(); ++n)
    if (!phi.defined(n) || !h.has_node(phi.to[n])) return false;
  if (phi.to[g.root] != h.root) return false;
  for (NodeId n = 0; n < g.size(); ++n) {
    const Label& l = g.label(n);
    if (delta.contains(l)) continue;
    NodeId m = phi.to[n];
    if (l != h.label(m)) return false;
    const auto& sn = g.succ(n);
    const auto& sm = h.succ(m);
    if (sn.size() != sm.size()) return false;
    for (size_t i = 0; i < sn.size(); ++i)
      if (phi.to[sn[i]] != sm[i]) return false;
  }
  return true;
}

bool is_rigid(const NodeMap& phi, const TermGraph& g, const TermGraph& h,
              const DeltaSet& delta) {
  if (!is_delta_hom(phi, g, h, delta))
    throw not_a_homomorphism_error("is_rigid: map is not a Δ-homomorphism");
  auto table = acyclic_position_table(h);
  for (NodeId n = 0; n < g.size(); ++n) {
    if (delta.contains(g.label(n))) continue;
    for (const Position& pi : table[phi.to[n]]) {
      auto hit = node_at_opt(g, pi);
      if (!hit || *hit != n) return false;
    }
  }
  return true;
}

std::optional<NodeMap> find_rigid_bot_hom(const TermGraph& g, const TermGraph& h) {
  auto phi = find_delta_hom(g, h, DeltaSet::bottom_only());
  if (!phi) return std::nullopt;
  if (!is_rigid(*phi, g, h, DeltaSet::bottom_only())) return std::nullopt;
  return phi;
}

bool is_isomorphic(const TermGraph& g, const TermGraph& h) {
  return canonicalize(g) == canonicalize(h);
}

bool unravel_eq(const TermGraph& g, const TermGraph& h) {
  // Coarsest partition of the disjoint union stable under label + indexed
  // successors; equal unravellings iff the roots end up in one block.
  int n = g.size() + h.size();
  auto label_of = [&](int i) -> const Label& {
    return i < g.size() ? g.label(i) : h.label(i - g.size());
  };
  auto succ_of = [&](int i, int k) -> int {
    if (i < g.size()) return g.succ(i)[k];
    return h.succ(i - g.size())[k] + g.size();
  };
  auto arity_of = [&](int i) {
    return i < g.size() ? g.arity(i) : h.arity(i - g.size());
  };

  std::vector<int> block(n);
  {
    std::map<Label, int> first;
    for (int i = 0; i < n; ++i) {
      auto [it, fresh] = first.emplace(label_of(i), (int)first.size());
      block[i] = it->second;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> key{block[i]};
      for (int k = 0; k < arity_of(i); ++k) key.push_back(block[succ_of(i, k)]);
      auto [it, fresh] = sig.emplace(std::move(key), (int)sig.size());
      next[i] = it->second;
    }
    bool changed = false;
    for (int i = 0; i < n && !changed; ++i) changed = next[i] != block[i];
    block.swap(next);
    if (!changed) break;
  }
  return block[g.root] == block[h.root + g.size()];
}

std::vector<std::pair<NodeId, NodeId>> common_position_pairs(const TermGraph& g,
                                                             const TermGraph& h) {
  std::set<std::pair<NodeId, NodeId>> seen;
  std::deque<std::pair<NodeId, NodeId>> q;
  auto push = [&](NodeId a, NodeId b) {
    if (seen.insert({a, b}).second) q.push_back({a, b});
  };
  push(g.root, h.root);
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop_front();
    int k = std::min(g.arity(a), h.arity(b));
    for (int i = 0; i < k; ++i) push(g.succ(a)[i], h.succ(b)[i]);
  }
  return {seen.begin(), seen.end()};
}

bool position_sets_intersect(const TermGraph& g, NodeId n, const TermGraph& h, NodeId m) {
  if (!g.has_node(n)) throw unknown_node_error("unknown node in first graph");
  if (!h.has_node(m)) throw unknown_node_error("unknown node in second graph");
  for (auto& [a, b] : common_position_pairs(g, h))
    if (a == n && b == m) return true;
  return false;
}

}  // namespace tg
