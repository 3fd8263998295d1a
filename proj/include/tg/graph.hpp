#pragma once

#include <optional>

#include "tg/base.hpp"

namespace tg {

struct Node {
  Label label;
  std::vector<NodeId> succ;

  friend bool operator==(const Node&, const Node&) = default;
  friend auto operator<=>(const Node& a, const Node& b) {
    if (auto c = a.label <=> b.label; c != 0) return c;
    return a.succ <=> b.succ;
  }
};

// Rooted graph with ordered successors. Nodes are dense ids 0..size()-1.
// Values are immutable after construction; all operations are pure.
struct TermGraph {
  std::vector<Node> nodes;
  NodeId root = 0;

  int size() const { return static_cast<int>(nodes.size()); }
  const Label& label(NodeId n) const { return nodes[n].label; }
  const std::vector<NodeId>& succ(NodeId n) const { return nodes[n].succ; }
  int arity(NodeId n) const { return static_cast<int>(nodes[n].succ.size()); }
  bool has_node(NodeId n) const { return n >= 0 && n < size(); }

  friend bool operator==(const TermGraph&, const TermGraph&) = default;
  friend auto operator<=>(const TermGraph& a, const TermGraph& b) {
    if (auto c = a.nodes.size() <=> b.nodes.size(); c != 0) return c;
    if (auto c = a.nodes <=> b.nodes; c != 0) return c;
    return a.root <=> b.root;
  }
};

// Isomorphism-class representative: node ids assigned in ascending order of
// each node's minimal position (shortest, then lexicographically least), so
// the root is always node 0 and structural equality decides isomorphism.
struct CanonicalTermGraph {
  TermGraph g;

  operator const TermGraph&() const { return g; }
  int size() const { return g.size(); }

  friend bool operator==(const CanonicalTermGraph&, const CanonicalTermGraph&) = default;
  friend auto operator<=>(const CanonicalTermGraph& a, const CanonicalTermGraph& b) {
    return a.g <=> b.g;
  }
};

enum class ViolationKind {
  ArityMismatch,
  UnreachableNode,
  UndeclaredSymbol,
  DanglingSuccessor,
};

struct Violation {
  ViolationKind kind;
  NodeId node = -1;
  int index = -1;
  std::string detail;
};

std::string violation_text(const Violation& v);

// Arity (vs. signature), reachability, declaredness, successor-id range.
std::vector<Violation> validate(const TermGraph& g, const Signature& sig);

// Walks pi from the root; nullopt on an index out of range.
std::optional<NodeId> node_at_opt(const TermGraph& g, const Position& pi);
NodeId node_at(const TermGraph& g, const Position& pi);  // throws invalid_position_error

bool aliases(const TermGraph& g, const Position& a, const Position& b);

// BFS depth of every node (shortest-position length).
std::vector<unsigned> all_depths(const TermGraph& g);
unsigned node_depth(const TermGraph& g, NodeId n);

// Minimal position of every node (shortest, lex-least).
std::vector<Position> minimal_positions(const TermGraph& g);

Depth graph_depth(const TermGraph& g);
Depth delta_depth(const TermGraph& g, const std::set<Label>& delta);
Depth bot_depth(const TermGraph& g);

bool contains_bot(const TermGraph& g);
bool contains_var(const TermGraph& g);

// All simple root-to-n paths (positions that revisit no node), sorted by
// (length, lex). Exponential in the worst case; guarded by the node cap.
std::vector<Position> acyclic_positions(const TermGraph& g, NodeId n,
                                        int node_cap = default_node_cap());

// Table of the above for every node, from a single traversal.
std::vector<std::vector<Position>> acyclic_position_table(const TermGraph& g,
                                                          int node_cap = default_node_cap());

// Pred^a: m such that some acyclic position of n extends a position of m by one step.
std::vector<std::set<NodeId>> acyclic_predecessor_table(const TermGraph& g,
                                                        int node_cap = default_node_cap());
std::set<NodeId> acyclic_predecessors(const TermGraph& g, NodeId n,
                                      int node_cap = default_node_cap());

// Renumbers by minimal position. Unreachable nodes are dropped.
// If old_to_new is given it receives the renaming (-1 for dropped nodes).
CanonicalTermGraph canonicalize(const TermGraph& g, std::vector<NodeId>* old_to_new = nullptr);

bool is_term_tree(const TermGraph& g);

// Arnold-Nivat truncation on term trees: subtrees at depth d become ⊥.
CanonicalTermGraph term_truncate(const TermGraph& tree, Depth d);

// Depth-bounded unravelling: the term tree carrying g(pi) at positions of
// length < d and ⊥ at length d.
CanonicalTermGraph unravel_to_depth(const TermGraph& g, unsigned d);

// Construction helper: nodes given as (label, successor indices), root by index.
TermGraph make_graph(std::vector<std::pair<Label, std::vector<NodeId>>> defs, NodeId root = 0);

}  // namespace tg
