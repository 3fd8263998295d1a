#include "tg/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace tg {

std::string position_text(const Position& p) {
  if (p.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

std::string Label::text() const {
  switch (kind) {
    case LabelKind::Symbol: return name;
    case LabelKind::Bottom: return "_|_";
    case LabelKind::Variable: return "$" + name;
  }
  return {};
}

void Signature::declare(const std::string& name, int arity) {
  if (name == "_|_") throw error("signature: the hole symbol may not be declared");
  if (arity < 0) throw error("signature: negative arity for " + name);
  auto it = arities_.find(name);
  if (it != arities_.end() && it->second != arity)
    throw error("signature: conflicting arities for " + name);
  arities_[name] = arity;
}

int Signature::arity_of(const std::string& name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) throw undeclared_symbol_error("undeclared symbol: " + name);
  return it->second;
}

int Signature::arity(const Label& l) const {
  if (!l.is_symbol()) return 0;
  return arity_of(l.name);
}

bool Signature::knows(const Label& l) const {
  return !l.is_symbol() || declared(l.name);
}

void Signature::merge(const Signature& other) {
  for (const auto& [name, ar] : other.arities_) declare(name, ar);
}

int default_node_cap() {
  static int cap = [] {
    if (const char* env = std::getenv("TG_NODE_CAP")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 64;
  }();
  return cap;
}

std::string violation_text(const Violation& v) {
  std::string s;
  switch (v.kind) {
    case ViolationKind::ArityMismatch: s = "arity mismatch"; break;
    case ViolationKind::UnreachableNode: s = "unreachable node"; break;
    case ViolationKind::UndeclaredSymbol: s = "undeclared symbol"; break;
    case ViolationKind::DanglingSuccessor: s = "dangling successor"; break;
  }
  if (v.node >= 0) s += " at node " + std::to_string(v.node);
  if (v.index >= 0) s += " index " + std::to_string(v.index);
  if (!v.detail.empty()) s += " (" + v.detail + ")";
  return s;
}

std::vector<Violation> validate(const TermGraph& g, const Signature& sig) {
  std::vector<Violation> out;
  if (g.size() == 0) {
    out.push_back({ViolationKind::UnreachableNode, -1, -1, "empty graph"});
    return out;
  }
  if (!g.has_node(g.root)) {
    out.push_back({ViolationKind::DanglingSuccessor, g.root, -1, "root id out of range"});
    return out;
  }
  for (NodeId n = 0; n < g.size(); ++n) {
    const Node& nd = g.nodes[n];
    for (int i = 0; i < (int)nd.succ.size(); ++i)
      if (!g.has_node(nd.succ[i]))
        out.push_back({ViolationKind::DanglingSuccessor, n, i, {}});
    if (!sig.knows(nd.label)) {
      out.push_back({ViolationKind::UndeclaredSymbol, n, -1, nd.label.text()});
      continue;
    }
    int want = sig.arity(nd.label);
    if ((int)nd.succ.size() != want)
      out.push_back({ViolationKind::ArityMismatch, n, -1,
                     nd.label.text() + "/" + std::to_string(want) + " has " +
                         std::to_string(nd.succ.size()) + " successors"});
  }
  // reachability (only over in-range edges)
  std::vector<bool> seen(g.size(), false);
  std::vector<NodeId> work{g.root};
  seen[g.root] = true;
  while (!work.empty()) {
    NodeId u = work.back();
    work.pop_back();
    for (NodeId v : g.succ(u))
      if (g.has_node(v) && !seen[v]) {
        seen[v] = true;
        work.push_back(v);
      }
  }
  for (NodeId n = 0; n < g.size(); ++n)
    if (!seen[n]) out.push_back({ViolationKind::UnreachableNode, n, -1, {}});
  return out;
}

std::optional<NodeId> node_at_opt(const TermGraph& g, const Position& pi) {
  NodeId cur = g.root;
  for (int i : pi) {
    const auto& s = g.succ(cur);
    if (i < 0 || i >= (int)s.size()) return std::nullopt;
    cur = s[i];
  }
  return cur;
}

NodeId node_at(const TermGraph& g, const Position& pi) {
  auto r = node_at_opt(g, pi);
  if (!r) throw invalid_position_error("invalid position " + position_text(pi));
  return *r;
}

bool aliases(const TermGraph& g, const Position& a, const Position& b) {
  return node_at(g, a) == node_at(g, b);
}

std::vector<unsigned> all_depths(const TermGraph& g) {
  std::vector<unsigned> d(g.size(), ~0u);
  std::deque<NodeId> q{g.root};
  d[g.root] = 0;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId v : g.succ(u))
      if (d[v] == ~0u) {
        d[v] = d[u] + 1;
        q.push_back(v);
      }
  }
  return d;
}

unsigned node_depth(const TermGraph& g, NodeId n) {
  if (!g.has_node(n)) throw unknown_node_error("unknown node " + std::to_string(n));
  unsigned d = all_depths(g)[n];
  if (d == ~0u) throw unknown_node_error("node " + std::to_string(n) + " unreachable");
  return d;
}

std::vector<Position> minimal_positions(const TermGraph& g) {
  std::vector<Position> pos(g.size());
  std::vector<bool> seen(g.size(), false);
  std::deque<NodeId> q{g.root};
  seen[g.root] = true;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    const auto& s = g.succ(u);
    for (int i = 0; i < (int)s.size(); ++i) {
      NodeId v = s[i];
      if (!seen[v]) {
        seen[v] = true;
        pos[v] = pos[u];
        pos[v].push_back(i);
        q.push_back(v);
      }
    }
  }
  return pos;
}

Depth graph_depth(const TermGraph& g) {
  unsigned m = 0;
  for (unsigned d : all_depths(g))
    if (d != ~0u) m = std::max(m, d);
  return Depth::finite(m);
}

Depth delta_depth(const TermGraph& g, const std::set<Label>& delta) {
  auto ds = all_depths(g);
  Depth best = Depth::omega();
  for (NodeId n = 0; n < g.size(); ++n)
    if (ds[n] != ~0u && delta.count(g.label(n)) && Depth::finite(ds[n]) < best)
      best = Depth::finite(ds[n]);
  return best;
}

Depth bot_depth(const TermGraph& g) { return delta_depth(g, {Label::bottom()}); }

bool contains_bot(const TermGraph& g) {
  for (const Node& n : g.nodes)
    if (n.label.is_bottom()) return true;
  return false;
}

bool contains_var(const TermGraph& g) {
  for (const Node& n : g.nodes)
    if (n.label.is_var()) return true;
  return false;
}

namespace {

// Enumerates all simple root paths, reporting (node, position) at each visit.
constexpr long kPathBudget = 2'000'000;

template <typename F>
void walk_simple_paths(const TermGraph& g, int node_cap, F&& visit) {
  if (g.size() > node_cap)
    throw size_limit_error("graph exceeds node cap " + std::to_string(node_cap) +
                           " for simple-path enumeration");
  std::vector<bool> onpath(g.size(), false);
  Position path;
  long budget = kPathBudget;
  auto rec = [&](auto&& self, NodeId u) -> void {
    if (--budget < 0) throw size_limit_error("simple-path enumeration budget exceeded");
    visit(u, path);
    onpath[u] = true;
    const auto& s = g.succ(u);
    for (int i = 0; i < (int)s.size(); ++i) {
      if (onpath[s[i]]) continue;
      path.push_back(i);
      self(self, s[i]);
      path.pop_back();
    }
    onpath[u] = false;
  };
  rec(rec, g.root);
}

void sort_positions(std::vector<Position>& ps) {
  std::sort(ps.begin(), ps.end(), [](const Position& a, const Position& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

}  // namespace

std::vector<std::vector<Position>> acyclic_position_table(const TermGraph& g, int node_cap) {
  std::vector<std::vector<Position>> table(g.size());
  walk_simple_paths(g, node_cap, [&](NodeId u, const Position& p) { table[u].push_back(p); });
  for (auto& ps : table) sort_positions(ps);
  return table;
}

std::vector<Position> acyclic_positions(const TermGraph& g, NodeId n, int node_cap) {
  if (!g.has_node(n)) throw unknown_node_error("unknown node " + std::to_string(n));
  std::vector<Position> out;
  walk_simple_paths(g, node_cap, [&](NodeId u, const Position& p) {
    if (u == n) out.push_back(p);
  });
  sort_positions(out);
  return out;
}

std::vector<std::set<NodeId>> acyclic_predecessor_table(const TermGraph& g, int node_cap) {
  std::vector<std::set<NodeId>> preds(g.size());
  std::vector<NodeId> stack;  // nodes along the current path
  walk_simple_paths(g, node_cap, [&](NodeId u, const Position& p) {
    stack.resize(p.size() + 1);
    stack[p.size()] = u;
    if (!p.empty()) preds[u].insert(stack[p.size() - 1]);
  });
  return preds;
}

std::set<NodeId> acyclic_predecessors(const TermGraph& g, NodeId n, int node_cap) {
  if (!g.has_node(n)) throw unknown_node_error("unknown node " + std::to_string(n));
  return acyclic_predecessor_table(g, node_cap)[n];
}

CanonicalTermGraph canonicalize(const TermGraph& g, std::vector<NodeId>* old_to_new) {
  std::vector<NodeId> order;
  std::vector<NodeId> newid(g.size(), -1);
  order.reserve(g.size());
  newid[g.root] = 0;
  order.push_back(g.root);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    for (NodeId v : g.succ(order[qi]))
      if (newid[v] < 0) {
        newid[v] = (NodeId)order.size();
        order.push_back(v);
      }
  }
  TermGraph out;
  out.root = 0;
  out.nodes.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const Node& n = g.nodes[order[i]];
    Node m;
    m.label = n.label;
    m.succ.reserve(n.succ.size());
    for (NodeId v : n.succ) m.succ.push_back(newid[v]);
    out.nodes[i] = std::move(m);
  }
  if (old_to_new) *old_to_new = std::move(newid);
  return CanonicalTermGraph{std::move(out)};
}

bool is_term_tree(const TermGraph& g) {
  // A tree iff every node except the root has exactly one incoming edge
  // and there is no cycle; equivalently |edges| = |nodes|-1 with all reachable
  // and no node reached twice during BFS.
  std::vector<int> indeg(g.size(), 0);
  size_t edges = 0;
  for (NodeId n = 0; n < g.size(); ++n)
    for (NodeId v : g.succ(n)) {
      ++indeg[v];
      ++edges;
    }
  if (edges != g.nodes.size() - 1) return false;
  if (indeg[g.root] != 0) return false;
  for (NodeId n = 0; n < g.size(); ++n)
    if (n != g.root && indeg[n] != 1) return false;
  return true;
}

CanonicalTermGraph term_truncate(const TermGraph& tree, Depth d) {
  if (d.is_omega()) return canonicalize(tree);
  unsigned dd = d.value();
  TermGraph out;
  // Build recursively; node ids assigned in DFS order, then canonicalized.
  auto rec = [&](auto&& self, NodeId u, unsigned depth) -> NodeId {
    NodeId id = (NodeId)out.nodes.size();
    if (depth >= dd) {
      out.nodes.push_back({Label::bottom(), {}});
      return id;
    }
    out.nodes.push_back({tree.label(u), {}});
    for (NodeId v : tree.succ(u)) {
      NodeId c = self(self, v, depth + 1);
      out.nodes[id].succ.push_back(c);
    }
    return id;
  };
  rec(rec, tree.root, 0);
  out.root = 0;
  return canonicalize(out);
}

CanonicalTermGraph unravel_to_depth(const TermGraph& g, unsigned d) {
  TermGraph out;
  constexpr size_t kUnravelBudget = 4'000'000;
  auto rec = [&](auto&& self, NodeId u, unsigned depth) -> NodeId {
    if (out.nodes.size() > kUnravelBudget)
      throw size_limit_error("unravelling exceeds node budget");
    NodeId id = (NodeId)out.nodes.size();
    if (depth >= d) {
      out.nodes.push_back({Label::bottom(), {}});
      return id;
    }
    out.nodes.push_back({g.label(u), {}});
    for (NodeId v : g.succ(u)) {
      NodeId c = self(self, v, depth + 1);
      out.nodes[id].succ.push_back(c);
    }
    return id;
  };
  rec(rec, g.root, 0);
  out.root = 0;
  return canonicalize(out);
}

TermGraph make_graph(std::vector<std::pair<Label, std::vector<NodeId>>> defs, NodeId root) {
  TermGraph g;
  g.root = root;
  g.nodes.reserve(defs.size());
  for (auto& [l, s] : defs) g.nodes.push_back({std::move(l), std::move(s)});
  return g;
}

}  // namespace tg
