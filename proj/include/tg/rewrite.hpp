#pragma once

#include "tg/metric.hpp"

namespace tg {

// A rule is one shared graph over Σ ∪ V with distinguished lhs/rhs roots;
// every node must be reachable from one of them.
struct Rule {
  std::string name;
  std::vector<Node> nodes;
  NodeId lhs_root = 0;
  NodeId rhs_root = 0;

  int size() const { return (int)nodes.size(); }
  const Label& label(NodeId n) const { return nodes[n].label; }
  const std::vector<NodeId>& succ(NodeId n) const { return nodes[n].succ; }
};

// Sub-term graph of the rule rooted at lhs/rhs (dense renumbering).
TermGraph rule_lhs(const Rule& r);
TermGraph rule_rhs(const Rule& r);

enum class RuleViolationKind {
  VariableNotInLhs,
  DuplicateVariableNode,
  VariableAtLhsRoot,
  ArityMismatch,
  UndeclaredSymbol,
  BottomInRule,
  UnreachableNode,
  DanglingSuccessor,
};

struct RuleViolation {
  RuleViolationKind kind;
  NodeId node = -1;
  std::string detail;
};

std::string rule_violation_text(const RuleViolation& v);

std::vector<RuleViolation> validate_rule(const Rule& r, const Signature& sig);

struct GRS {
  Signature sig;
  std::vector<Rule> rules;

  const Rule* find(const std::string& name) const;
};

// The matching V-homomorphism lhs(rule) -> g|n, if any. The map is indexed
// by rule node ids; nodes not reachable from the lhs root stay -1.
std::optional<NodeMap> match_rule(const Rule& r, const TermGraph& g, NodeId n);

// All (node, rule index) pairs applicable in g, ordered by the redex node's
// minimal position (shortest, then lex), then rule order.
std::vector<std::pair<NodeId, int>> find_redexes(const GRS& grs, const TermGraph& g);

struct PreReductionStep {
  TermGraph source;
  NodeId redex;
  std::string rule;
  NodeId result_node;  // n' in the raw target
  TermGraph target_raw;
};

// Three-stage rule application: graft the non-lhs part of the rule,
// redirect edges ending in the redex, re-root and prune.
PreReductionStep apply_rule(const TermGraph& g, NodeId n, const Rule& r);

struct ReductionStep {
  CanonicalTermGraph source;
  CanonicalTermGraph target;
  NodeId redex;        // canonical id in source
  NodeId result_node;  // canonical id in target
  std::string rule;
};

ReductionStep step(const TermGraph& g, NodeId n, const Rule& r);

struct Strategy {
  enum Kind { LeftmostOutermost, Script } kind = LeftmostOutermost;
  // Script entries: apply `rule` at `position`.
  std::vector<std::pair<Position, std::string>> script;

  static Strategy leftmost_outermost() { return {}; }
  static Strategy by_script(std::vector<std::pair<Position, std::string>> s) {
    return {Script, std::move(s)};
  }
};

enum class Termination { NormalForm, StepCap, StrategyStall };

struct ReductionTrace {
  CanonicalTermGraph initial;
  std::vector<ReductionStep> steps;
  std::string strategy;
  Termination termination = Termination::StepCap;
  bool deterministic = false;  // strategy determines every future step

  std::vector<CanonicalTermGraph> graphs() const;
  const CanonicalTermGraph& last() const {
    return steps.empty() ? initial : steps.back().target;
  }
};

ReductionTrace run(const GRS& grs, const TermGraph& start, const Strategy& strategy,
                   int max_steps);

// Smallest (k, p) with g_k = g_{k+p} in the window; under a deterministic
// strategy this certifies an eventually periodic graph sequence.
std::optional<std::pair<int, int>> detect_periodicity(const std::vector<CanonicalTermGraph>& gs);

// Partial-order convergence analysis of a trace: exact for closed or
// (declared/detected) periodic reductions, window-graded otherwise.
ApproxResult analyze_p_convergence(const ReductionTrace& trace, unsigned depth_goal,
                                   std::optional<int> declared_period = std::nullopt);

// Metric analysis: same approximation plus a Cauchy verdict; rejects traces
// containing partial graphs.
LimitResult analyze_m_convergence(const ReductionTrace& trace, unsigned depth_goal,
                                  std::optional<int> declared_period = std::nullopt);

// Depth-bounded unravellings of both rule sides, variables kept as leaves.
std::pair<CanonicalTermGraph, CanonicalTermGraph> unravel_rule(const Rule& r, unsigned d);

}  // namespace tg
