#pragma once

#include <fstream>
#include <random>
#include <sstream>

#include "tg/format.hpp"

namespace tgt {

using namespace tg;

inline Label L(const std::string& text) {
  if (text == "_|_") return Label::bottom();
  if (!text.empty() && text[0] == '$') return Label::var(text.substr(1));
  return Label::symbol(text);
}

// Compact in-code graph builder: gb({{"f",{1,1}},{"c",{}}}) with root 0.
inline TermGraph gb(std::vector<std::pair<std::string, std::vector<NodeId>>> defs,
                    NodeId root = 0) {
  TermGraph g;
  g.root = root;
  for (auto& [lab, succ] : defs) g.nodes.push_back({L(lab), std::move(succ)});
  return g;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(TG_FIXTURE_DIR) + "/" + name;
}

inline Document load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

inline TermGraph fixture_graph(const std::string& file, const std::string& graph) {
  Document doc = load_fixture(file);
  return build_graph(doc, graph);
}

// Random term graph over the given labelled alphabet; restricted to the part
// reachable from the root so the result is always valid.
inline TermGraph random_graph(std::mt19937& rng,
                              const std::vector<std::pair<std::string, int>>& alphabet,
                              int max_nodes, int bot_percent = 25) {
  std::uniform_int_distribution<int> count(1, max_nodes);
  int k = count(rng);
  TermGraph g;
  g.root = 0;
  std::uniform_int_distribution<int> pick(0, (int)alphabet.size() - 1);
  std::uniform_int_distribution<int> coin(0, 99);
  std::uniform_int_distribution<int> node(0, k - 1);
  for (int i = 0; i < k; ++i) {
    Node n;
    if (coin(rng) < bot_percent) {
      n.label = Label::bottom();
    } else {
      auto& [name, ar] = alphabet[pick(rng)];
      n.label = Label::symbol(name);
      for (int s = 0; s < ar; ++s) n.succ.push_back(node(rng));
    }
    g.nodes.push_back(std::move(n));
  }
  return canonicalize(g).g;  // drops unreachable nodes
}

// g_n of the cyclic-vs-acyclic-sharing family: an f whose first successor
// heads a chain of n+1 h-nodes ending at a, with a direct second edge to a.
inline TermGraph sharing_family(int n) {
  TermGraph g;
  int chain = n + 1;
  // node 0 = f, nodes 1..chain = h's, node chain+1 = a
  g.root = 0;
  g.nodes.push_back({Label::symbol("f"), {1, chain + 1}});
  for (int i = 1; i <= chain; ++i)
    g.nodes.push_back({Label::symbol("h"), {i + 1}});
  g.nodes.push_back({Label::symbol("a"), {}});
  return g;
}

}  // namespace tgt
