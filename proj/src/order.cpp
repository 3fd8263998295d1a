#include "tg/order.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace tg {

bool leq_rigid(const TermGraph& g, const TermGraph& h) {
  return find_rigid_bot_hom(g, h).has_value();
}

bool leq_simple(const TermGraph& g, const TermGraph& h) {
  return find_delta_hom(g, h, DeltaSet::bottom_only()).has_value();
}

bool leq_injective(const TermGraph& g, const TermGraph& h) {
  auto phi = find_delta_hom(g, h, DeltaSet::bottom_only());
  if (!phi) return false;
  std::map<NodeId, NodeId> inv;
  for (NodeId n = 0; n < g.size(); ++n) {
    if (g.label(n).is_bottom()) continue;
    auto [it, fresh] = inv.emplace(phi->to[n], n);
    if (!fresh) return false;
  }
  return true;
}

namespace {

struct ProductNode {
  NodeId a, b;
  Label label;
  std::vector<NodeId> succ;
};

// Walks pi through the product; true iff it is a position of node p.
bool product_position_hits(const std::vector<ProductNode>& nodes, NodeId root,
                           const Position& pi, NodeId p) {
  NodeId cur = root;
  for (int i : pi) {
    const auto& s = nodes[cur].succ;
    if (i < 0 || i >= (int)s.size()) return false;
    cur = s[i];
  }
  return cur == p;
}

std::vector<bool> product_reachable(const std::vector<ProductNode>& nodes, NodeId root) {
  std::vector<bool> seen(nodes.size(), false);
  std::vector<NodeId> work{root};
  seen[root] = true;
  while (!work.empty()) {
    NodeId u = work.back();
    work.pop_back();
    for (NodeId v : nodes[u].succ)
      if (!seen[v]) {
        seen[v] = true;
        work.push_back(v);
      }
  }
  return seen;
}

}  // namespace

CanonicalTermGraph glb2(const TermGraph& g, const TermGraph& h, int node_cap) {
  // Stage 1: synchronized product from the root pair. A pair expands only
  // when both labels are the same proper symbol; otherwise it is a ⊥ leaf.
  std::map<std::pair<NodeId, NodeId>, NodeId> idx;
  std::vector<ProductNode> nodes;
  std::deque<NodeId> todo;
  auto intern = [&](NodeId a, NodeId b) {
    auto [it, fresh] = idx.emplace(std::make_pair(a, b), (NodeId)nodes.size());
    if (fresh) {
      if ((int)nodes.size() >= node_cap * node_cap)
        throw size_limit_error("glb2: product exceeds node cap");
      nodes.push_back({a, b, Label::bottom(), {}});
      todo.push_back(it->second);
    }
    return it->second;
  };
  NodeId root = intern(g.root, h.root);
  while (!todo.empty()) {
    NodeId p = todo.front();
    todo.pop_front();
    NodeId a = nodes[p].a, b = nodes[p].b;
    const Label& la = g.label(a);
    if (la.is_symbol() && la == h.label(b)) {
      nodes[p].label = la;
      for (int i = 0; i < g.arity(a); ++i) {
        NodeId c = intern(g.succ(a)[i], h.succ(b)[i]);
        nodes[p].succ.push_back(c);
      }
    }
  }

  // Stage 2: rigidity cut to fixpoint. A proper-symbol pair must carry every
  // acyclic position of both its projections; otherwise it collapses to ⊥.
  auto tg_table = acyclic_position_table(g, node_cap);
  auto th_table = acyclic_position_table(h, node_cap);
  for (;;) {
    auto reach = product_reachable(nodes, root);
    bool changed = false;
    for (NodeId p = 0; p < (NodeId)nodes.size(); ++p) {
      if (!reach[p] || !nodes[p].label.is_symbol()) continue;
      bool ok = true;
      for (const Position& pi : tg_table[nodes[p].a])
        if (!product_position_hits(nodes, root, pi, p)) {
          ok = false;
          break;
        }
      if (ok)
        for (const Position& pi : th_table[nodes[p].b])
          if (!product_position_hits(nodes, root, pi, p)) {
            ok = false;
            break;
          }
      if (!ok) {
        nodes[p].label = Label::bottom();
        nodes[p].succ.clear();
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Stage 3: garbage-collect and canonicalize.
  auto reach = product_reachable(nodes, root);
  std::vector<NodeId> remap(nodes.size(), -1);
  TermGraph out;
  for (NodeId p = 0; p < (NodeId)nodes.size(); ++p)
    if (reach[p]) {
      remap[p] = (NodeId)out.nodes.size();
      out.nodes.push_back({nodes[p].label, {}});
    }
  for (NodeId p = 0; p < (NodeId)nodes.size(); ++p)
    if (reach[p])
      for (NodeId q : nodes[p].succ) out.nodes[remap[p]].succ.push_back(remap[q]);
  out.root = remap[root];
  CanonicalTermGraph result = canonicalize(out);
  if (!leq_rigid(result, g) || !leq_rigid(result, h))
    throw error("glb2: internal check failed, result is not a lower bound");
  return result;
}

CanonicalTermGraph glb(const std::vector<TermGraph>& gs) {
  if (gs.empty()) throw empty_sequence_error("glb of empty set");
  CanonicalTermGraph acc = canonicalize(gs.front());
  for (size_t i = 1; i < gs.size(); ++i) acc = glb2(acc, gs[i]);
  return acc;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<CanonicalTermGraph> lub_compatible(const TermGraph& g, const TermGraph& h) {
  // Disjoint union quotiented by "shares a position", per pair reachability.
  int off = g.size();
  UnionFind uf(g.size() + h.size());
  for (auto& [a, b] : common_position_pairs(g, h)) uf.unite(a, off + b);

  auto label_of = [&](int i) -> const Label& {
    return i < off ? g.label(i) : h.label(i - off);
  };
  auto succ_of = [&](int i) -> const std::vector<NodeId>& {
    return i < off ? g.succ(i) : h.succ(i - off);
  };
  auto lift = [&](int i, NodeId v) { return i < off ? (int)v : (int)v + off; };

  int total = g.size() + h.size();
  std::map<int, NodeId> class_id;
  for (int i = 0; i < total; ++i) class_id.emplace(uf.find(i), (NodeId)class_id.size());

  TermGraph out;
  out.nodes.resize(class_id.size());
  std::vector<bool> labelled(class_id.size(), false);
  for (int i = 0; i < total; ++i) {
    NodeId c = class_id[uf.find(i)];
    const Label& l = label_of(i);
    if (!l.is_symbol()) continue;
    std::vector<NodeId> ss;
    for (NodeId v : succ_of(i)) ss.push_back(class_id[uf.find(lift(i, v))]);
    if (!labelled[c]) {
      labelled[c] = true;
      out.nodes[c].label = l;
      out.nodes[c].succ = std::move(ss);
    } else if (out.nodes[c].label != l || out.nodes[c].succ != ss) {
      return std::nullopt;  // label clash or inconsistent successors
    }
  }
  for (size_t c = 0; c < out.nodes.size(); ++c)
    if (!labelled[c]) out.nodes[c] = {Label::bottom(), {}};
  out.root = class_id[uf.find(g.root)];

  CanonicalTermGraph result = canonicalize(out);
  if (!leq_rigid(g, result) || !leq_rigid(h, result)) return std::nullopt;
  return result;
}

CanonicalTermGraph lub_directed_finite(const std::vector<TermGraph>& gs) {
  if (gs.empty()) throw empty_sequence_error("lub of empty set");
  for (const TermGraph& cand : gs) {
    bool top = true;
    for (const TermGraph& other : gs)
      if (!leq_rigid(other, cand)) {
        top = false;
        break;
      }
    if (top) return canonicalize(cand);
  }
  throw not_directed_error("set has no maximum element");
}

bool is_maximal_total(const TermGraph& g) { return !contains_bot(g); }

std::string Exactness::text() const {
  switch (kind) {
    case Exact: return "exact";
    case DepthExact: return "depth-exact(" + std::to_string(param) + ")";
    case WindowStable: return "window-stable(" + std::to_string(param) + ")";
  }
  return {};
}

ApproxResult liminf(const SequenceProvider& seq, unsigned depth_goal) {
  (void)depth_goal;
  if (seq.prefix.empty() && seq.period.empty())
    throw empty_sequence_error("liminf of empty sequence");
  if (!seq.periodic()) {
    // Closed sequence: the suffix glbs fold to the last element.
    return {seq.prefix.back(), Exactness::exact(), "closed sequence; liminf is its last element"};
  }
  // Every ω-suffix of prefix·period^ω contains all period elements, so the
  // suffix-glb chain stabilizes at glb(period) no later than the prefix end,
  // and the limit inferior is that stabilized value.
  std::vector<TermGraph> per(seq.period.begin(), seq.period.end());
  CanonicalTermGraph hstar = glb(per);
  unsigned stable_from = (unsigned)seq.prefix.size();
  CanonicalTermGraph acc = hstar;
  for (size_t i = seq.prefix.size(); i-- > 0;) {
    acc = glb2(seq.prefix[i], acc);
    if (acc == hstar) stable_from = (unsigned)i;
  }
  return {hstar, Exactness::exact(),
          "suffix glbs stabilize at index " + std::to_string(stable_from) +
              "; lub of the chain is the period glb"};
}

ApproxResult window_liminf(const std::vector<CanonicalTermGraph>& gs, unsigned depth_goal) {
  if (gs.empty()) throw empty_sequence_error("liminf of empty window");
  if (gs.size() == 1)
    return {gs.front(), Exactness::window_stable(1), "single-element window"};
  // Suffix-glb chain h_b = glb(g_b..g_M); the most informed entry whose
  // suffix still has at least two elements is the window answer.
  size_t m = gs.size() - 1;
  std::vector<CanonicalTermGraph> chain(m);  // chain[b] = glb(g_b..g_M)
  CanonicalTermGraph acc = glb2(gs[m - 1], gs[m]);
  chain[m - 1] = acc;
  for (size_t b = m - 1; b-- > 0;) {
    acc = glb2(gs[b], acc);
    chain[b] = acc;
  }
  const CanonicalTermGraph& answer = chain[m - 1];
  unsigned run = 1;
  for (size_t b = m - 1; b-- > 0 && chain[b] == answer;) ++run;
  Depth bd = bot_depth(answer);
  if (bd >= Depth::finite(depth_goal))
    return {answer, Exactness::depth_exact(depth_goal),
            "window suffix glb is ⊥-free to depth " + std::to_string(depth_goal) +
                "; truncations at that depth agree with the limit"};
  return {answer, Exactness::window_stable(run),
          "open window of " + std::to_string(gs.size()) + " graphs; suffix glbs stable for " +
              std::to_string(run) + " steps; shallowest hole at depth " + bd.text()};
}

std::vector<CanonicalTermGraph> enumerate_canonical(const Signature& sig, int max_nodes,
                                                    bool include_bot, long long bound) {
  std::vector<Label> labels;
  for (const auto& [name, ar] : sig.symbols()) labels.push_back(Label::symbol(name));
  std::sort(labels.begin(), labels.end());
  if (include_bot) labels.push_back(Label::bottom());

  // Raw candidate count: sum over k of (#labels * k^arity choices per node).
  long long budget = 0;
  for (int k = 1; k <= max_nodes; ++k) {
    long long per_node = 0;
    for (const Label& l : labels) {
      long long ways = 1;
      for (int i = 0; i < sig.arity(l); ++i) {
        ways *= k;
        if (ways > bound) throw size_limit_error("enumerate_canonical: bound exceeded");
      }
      per_node += ways;
    }
    long long tot = 1;
    for (int i = 0; i < k; ++i) {
      tot *= per_node;
      if (tot > bound || budget + tot > bound)
        throw size_limit_error("enumerate_canonical: bound exceeded");
    }
    budget += tot;
  }

  std::set<CanonicalTermGraph> out;
  for (int k = 1; k <= max_nodes; ++k) {
    // Odometer over per-node choices: label index plus successor targets.
    std::vector<int> lab(k, 0);
    std::vector<std::vector<NodeId>> succ(k);
    auto reset_succ = [&](int i) { succ[i].assign(sig.arity(labels[lab[i]]), 0); };
    for (int i = 0; i < k; ++i) reset_succ(i);
    for (;;) {
      TermGraph g;
      g.root = 0;
      g.nodes.resize(k);
      for (int i = 0; i < k; ++i) g.nodes[i] = {labels[lab[i]], succ[i]};
      // keep only graphs using all k nodes
      std::vector<bool> seen(k, false);
      std::vector<NodeId> work{0};
      seen[0] = true;
      int cnt = 1;
      while (!work.empty()) {
        NodeId u = work.back();
        work.pop_back();
        for (NodeId v : g.succ(u))
          if (!seen[v]) {
            seen[v] = true;
            ++cnt;
            work.push_back(v);
          }
      }
      if (cnt == k) out.insert(canonicalize(g));

      // advance odometer: successor slots first, then the label, per node
      int i = 0;
      for (; i < k; ++i) {
        bool advanced = false;
        for (size_t s = 0; s < succ[i].size(); ++s) {
          if (succ[i][s] + 1 < k) {
            ++succ[i][s];
            for (size_t t = 0; t < s; ++t) succ[i][t] = 0;
            advanced = true;
            break;
          }
        }
        if (!advanced && lab[i] + 1 < (int)labels.size()) {
          ++lab[i];
          reset_succ(i);
          advanced = true;
        }
        if (advanced) {
          for (int j = 0; j < i; ++j) {
            lab[j] = 0;
            reset_succ(j);
          }
          break;
        }
      }
      if (i == k) break;
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace tg
