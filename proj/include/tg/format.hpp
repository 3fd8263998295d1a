#pragma once

#include "tg/rewrite.hpp"

namespace tg {

struct parse_error : error {
  int line = 0, col = 0;
  parse_error(const std::string& msg, int l, int c)
      : error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

// Raw (name-based) forms; semantic checks are deferred to the builders.
struct RawNode {
  std::string name;
  Label label;
  std::vector<std::string> succ;
  int line = 0, col = 0;
};

struct RawGraph {
  std::string name;
  std::string root;
  std::vector<RawNode> nodes;
};

struct RawRule {
  std::string name;
  std::string lhs, rhs;
  std::vector<RawNode> nodes;
};

struct RawSystem {
  std::string name;
  std::vector<std::string> rules;
};

struct Document {
  Signature sig;
  std::vector<RawGraph> graphs;
  std::vector<RawRule> rules;
  std::vector<RawSystem> systems;

  const RawGraph* find_graph(const std::string& name) const;
  const RawRule* find_rule(const std::string& name) const;
  const RawSystem* find_system(const std::string& name) const;

  void merge(const Document& other);
};

Document parse(std::string_view text);

// Builders resolve names to dense ids and run the semantic checks; they
// throw tg::error with the collected violations.
TermGraph build_graph(const Document& doc, const RawGraph& rg);
TermGraph build_graph(const Document& doc, const std::string& name);
Rule build_rule(const Document& doc, const RawRule& rr);
Rule build_rule(const Document& doc, const std::string& name);
GRS build_system(const Document& doc, const std::string& name);

// Canonical serializations: graphs canonicalized with nodes n0.. (root
// first); deterministic and byte-stable under re-parsing.
std::string serialize_graph(const TermGraph& g, const std::string& name);
std::string serialize_rule(const Rule& r, const std::string& name);
std::string serialize_signature(const Signature& sig);
std::string serialize(const Document& doc);

std::string export_dot(const TermGraph& g, const std::string& name = "g");
std::string export_dot(const Rule& r, const std::string& name = "rule");

}  // namespace tg
