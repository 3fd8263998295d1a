#include "tg/rewrite.hpp"

#include <algorithm>
#include <map>

namespace tg {

namespace {

std::vector<bool> rule_reachable(const Rule& r, NodeId from) {
  std::vector<bool> seen(r.nodes.size(), false);
  std::vector<NodeId> work{from};
  seen[from] = true;
  while (!work.empty()) {
    NodeId u = work.back();
    work.pop_back();
    for (NodeId v : r.succ(u))
      if (v >= 0 && v < r.size() && !seen[v]) {
        seen[v] = true;
        work.push_back(v);
      }
  }
  return seen;
}

TermGraph rule_side(const Rule& r, NodeId root) {
  auto seen = rule_reachable(r, root);
  std::vector<NodeId> remap(r.size(), -1);
  TermGraph out;
  for (NodeId n = 0; n < r.size(); ++n)
    if (seen[n]) {
      remap[n] = (NodeId)out.nodes.size();
      out.nodes.push_back({r.label(n), {}});
    }
  for (NodeId n = 0; n < r.size(); ++n)
    if (seen[n])
      for (NodeId v : r.succ(n)) out.nodes[remap[n]].succ.push_back(remap[v]);
  out.root = remap[root];
  return out;
}

}  // namespace

TermGraph rule_lhs(const Rule& r) { return rule_side(r, r.lhs_root); }
TermGraph rule_rhs(const Rule& r) { return rule_side(r, r.rhs_root); }

std::string rule_violation_text(const RuleViolation& v) {
  std::string s;
  switch (v.kind) {
    case RuleViolationKind::VariableNotInLhs: s = "variable not reachable from lhs"; break;
    case RuleViolationKind::DuplicateVariableNode: s = "duplicate variable node"; break;
    case RuleViolationKind::VariableAtLhsRoot: s = "lhs root labelled with a variable"; break;
    case RuleViolationKind::ArityMismatch: s = "arity mismatch"; break;
    case RuleViolationKind::UndeclaredSymbol: s = "undeclared symbol"; break;
    case RuleViolationKind::BottomInRule: s = "hole symbol in rule"; break;
    case RuleViolationKind::UnreachableNode: s = "node unreachable from lhs and rhs"; break;
    case RuleViolationKind::DanglingSuccessor: s = "dangling successor"; break;
  }
  if (v.node >= 0) s += " at node " + std::to_string(v.node);
  if (!v.detail.empty()) s += " (" + v.detail + ")";
  return s;
}

std::vector<RuleViolation> validate_rule(const Rule& r, const Signature& sig) {
  std::vector<RuleViolation> out;
  if (r.nodes.empty()) {
    out.push_back({RuleViolationKind::UnreachableNode, -1, "empty rule"});
    return out;
  }
  auto in_range = [&](NodeId n) { return n >= 0 && n < r.size(); };
  if (!in_range(r.lhs_root) || !in_range(r.rhs_root)) {
    out.push_back({RuleViolationKind::DanglingSuccessor, -1, "root id out of range"});
    return out;
  }
  for (NodeId n = 0; n < r.size(); ++n)
    for (NodeId v : r.succ(n))
      if (!in_range(v)) out.push_back({RuleViolationKind::DanglingSuccessor, n, {}});

  for (NodeId n = 0; n < r.size(); ++n) {
    const Label& l = r.label(n);
    if (l.is_bottom()) {
      out.push_back({RuleViolationKind::BottomInRule, n, {}});
      continue;
    }
    if (l.is_symbol() && !sig.declared(l.name)) {
      out.push_back({RuleViolationKind::UndeclaredSymbol, n, l.text()});
      continue;
    }
    int want = l.is_symbol() ? sig.arity_of(l.name) : 0;
    if ((int)r.succ(n).size() != want)
      out.push_back({RuleViolationKind::ArityMismatch, n, l.text()});
  }

  if (r.label(r.lhs_root).is_var())
    out.push_back({RuleViolationKind::VariableAtLhsRoot, r.lhs_root, {}});

  auto from_l = rule_reachable(r, r.lhs_root);
  auto from_r = rule_reachable(r, r.rhs_root);
  for (NodeId n = 0; n < r.size(); ++n)
    if (!from_l[n] && !from_r[n])
      out.push_back({RuleViolationKind::UnreachableNode, n, {}});

  std::map<std::string, NodeId> var_nodes;
  for (NodeId n = 0; n < r.size(); ++n) {
    if (!r.label(n).is_var()) continue;
    auto [it, fresh] = var_nodes.emplace(r.label(n).name, n);
    if (!fresh)
      out.push_back({RuleViolationKind::DuplicateVariableNode, n, r.label(n).text()});
    if (!from_l[n])
      out.push_back({RuleViolationKind::VariableNotInLhs, n, r.label(n).text()});
  }
  return out;
}

const Rule* GRS::find(const std::string& name) const {
  for (const Rule& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

std::optional<NodeMap> match_rule(const Rule& r, const TermGraph& g, NodeId n) {
  if (!g.has_node(n)) throw unknown_node_error("match_rule: unknown node");
  std::vector<NodeId> to(r.size(), -1);
  std::vector<NodeId> work;
  to[r.lhs_root] = n;
  work.push_back(r.lhs_root);
  while (!work.empty()) {
    NodeId u = work.back();
    work.pop_back();
    const Label& lu = r.label(u);
    if (lu.is_var()) continue;  // variables match any node
    NodeId v = to[u];
    if (lu != g.label(v)) return std::nullopt;
    const auto& su = r.succ(u);
    const auto& sv = g.succ(v);
    if (su.size() != sv.size()) return std::nullopt;
    for (size_t i = 0; i < su.size(); ++i) {
      NodeId a = su[i], b = sv[i];
      if (to[a] == -1) {
        to[a] = b;
        work.push_back(a);
      } else if (to[a] != b) {
        return std::nullopt;
      }
    }
  }
  return NodeMap{std::move(to), DeltaSet::variables()};
}

std::vector<std::pair<NodeId, int>> find_redexes(const GRS& grs, const TermGraph& g) {
  // Leftmost-outermost order: minimal positions compared lexicographically,
  // a prefix before its extensions. (Length-first ordering would pick a
  // shallow right redex over a deeper left one and lose the leftmost trace.)
  auto pos = minimal_positions(g);
  std::vector<NodeId> order(g.size());
  for (NodeId n = 0; n < g.size(); ++n) order[n] = n;
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return pos[a] < pos[b]; });
  std::vector<std::pair<NodeId, int>> out;
  for (NodeId n : order)
    for (int ri = 0; ri < (int)grs.rules.size(); ++ri)
      if (match_rule(grs.rules[ri], g, n)) out.push_back({n, ri});
  return out;
}

PreReductionStep apply_rule(const TermGraph& g, NodeId n, const Rule& r) {
  auto phi = match_rule(r, g, n);
  if (!phi) throw not_applicable_error("rule " + r.name + " does not match");

  auto in_lhs = rule_reachable(r, r.lhs_root);

  // g1: graft the part of the rule outside its left-hand side
  TermGraph g1 = g;
  std::vector<NodeId> copy(r.size(), -1);
  for (NodeId u = 0; u < r.size(); ++u)
    if (!in_lhs[u]) {
      copy[u] = (NodeId)g1.nodes.size();
      g1.nodes.push_back({r.label(u), {}});
    }
  for (NodeId u = 0; u < r.size(); ++u)
    if (!in_lhs[u])
      for (NodeId t : r.succ(u))
        g1.nodes[copy[u]].succ.push_back(in_lhs[t] ? phi->to[t] : copy[t]);

  NodeId nprime = in_lhs[r.rhs_root] ? phi->to[r.rhs_root] : copy[r.rhs_root];

  // g2: redirect every edge ending in the redex node to n'
  for (Node& nd : g1.nodes)
    for (NodeId& v : nd.succ)
      if (v == n) v = nprime;

  // g3: re-root if the redex was the root, prune unreachable nodes
  NodeId root = (n == g.root) ? nprime : g.root;
  std::vector<bool> seen(g1.nodes.size(), false);
  std::vector<NodeId> work{root};
  seen[root] = true;
  while (!work.empty()) {
    NodeId u = work.back();
    work.pop_back();
    for (NodeId v : g1.succ(u))
      if (!seen[v]) {
        seen[v] = true;
        work.push_back(v);
      }
  }
  TermGraph g3;
  std::vector<NodeId> remap(g1.nodes.size(), -1);
  for (NodeId u = 0; u < (NodeId)g1.nodes.size(); ++u)
    if (seen[u]) {
      remap[u] = (NodeId)g3.nodes.size();
      g3.nodes.push_back({g1.label(u), {}});
    }
  for (NodeId u = 0; u < (NodeId)g1.nodes.size(); ++u)
    if (seen[u])
      for (NodeId v : g1.succ(u)) g3.nodes[remap[u]].succ.push_back(remap[v]);
  g3.root = remap[root];

  return {g, n, r.name, remap[nprime], std::move(g3)};
}

ReductionStep step(const TermGraph& g, NodeId n, const Rule& r) {
  PreReductionStep pre = apply_rule(g, n, r);
  std::vector<NodeId> src_map, dst_map;
  CanonicalTermGraph src = canonicalize(pre.source, &src_map);
  CanonicalTermGraph dst = canonicalize(pre.target_raw, &dst_map);
  return {std::move(src), std::move(dst), src_map[pre.redex], dst_map[pre.result_node],
          pre.rule};
}

std::vector<CanonicalTermGraph> ReductionTrace::graphs() const {
  std::vector<CanonicalTermGraph> gs;
  gs.push_back(initial);
  for (const ReductionStep& s : steps) gs.push_back(s.target);
  return gs;
}

ReductionTrace run(const GRS& grs, const TermGraph& start, const Strategy& strategy,
                   int max_steps) {
  ReductionTrace trace;
  trace.initial = canonicalize(start);
  trace.deterministic = strategy.kind == Strategy::LeftmostOutermost;
  trace.strategy =
      strategy.kind == Strategy::LeftmostOutermost ? "leftmost-outermost" : "script";
  CanonicalTermGraph cur = trace.initial;
  trace.termination = Termination::StepCap;
  for (int k = 0; k < max_steps; ++k) {
    NodeId n = -1;
    const Rule* rule = nullptr;
    if (strategy.kind == Strategy::LeftmostOutermost) {
      auto redexes = find_redexes(grs, cur);
      if (redexes.empty()) {
        trace.termination = Termination::NormalForm;
        break;
      }
      n = redexes.front().first;
      rule = &grs.rules[redexes.front().second];
    } else {
      if (k >= (int)strategy.script.size()) {
        trace.termination = Termination::StrategyStall;
        break;
      }
      const auto& [pos, rname] = strategy.script[k];
      rule = grs.find(rname);
      if (!rule) throw script_mismatch_error("script names unknown rule " + rname);
      auto hit = node_at_opt(cur, pos);
      if (!hit)
        throw script_mismatch_error("script position " + position_text(pos) +
                                    " invalid at step " + std::to_string(k));
      n = *hit;
      if (!match_rule(*rule, cur, n))
        throw script_mismatch_error("rule " + rname + " does not match at " +
                                    position_text(pos) + " in step " + std::to_string(k));
    }
    trace.steps.push_back(step(cur, n, *rule));
    cur = trace.steps.back().target;
  }
  return trace;
}

std::optional<std::pair<int, int>> detect_periodicity(
    const std::vector<CanonicalTermGraph>& gs) {
  for (int k = 0; k < (int)gs.size(); ++k)
    for (int p = 1; k + p < (int)gs.size(); ++p)
      if (gs[k] == gs[k + p]) return std::make_pair(k, p);
  return std::nullopt;
}

namespace {

std::optional<SequenceProvider> as_periodic(const ReductionTrace& trace,
                                            std::optional<int> declared_period) {
  auto gs = trace.graphs();
  std::optional<std::pair<int, int>> kp;
  if (declared_period) {
    // Largest suffix of the window actually repeating with the declared
    // period; an inconsistent declaration falls back to window analysis.
    int p = *declared_period;
    if (p <= 0 || p >= (int)gs.size()) return std::nullopt;
    int last = (int)gs.size() - 1 - p;
    int k = 0;
    while (k <= last && !(gs[k] == gs[k + p])) ++k;
    if (k > last) return std::nullopt;
    for (int i = k; i <= last; ++i)
      if (!(gs[i] == gs[i + p])) return std::nullopt;
    kp = {{k, p}};
  } else if (trace.deterministic) {
    kp = detect_periodicity(gs);
  }
  if (!kp) return std::nullopt;
  auto [k, p] = *kp;
  std::vector<CanonicalTermGraph> prefix(gs.begin(), gs.begin() + k);
  std::vector<CanonicalTermGraph> period(gs.begin() + k, gs.begin() + k + p);
  return SequenceProvider::eventually_periodic(std::move(prefix), std::move(period));
}

}  // namespace

ApproxResult analyze_p_convergence(const ReductionTrace& trace, unsigned depth_goal,
                                   std::optional<int> declared_period) {
  auto gs = trace.graphs();
  if (gs.empty()) throw empty_sequence_error("empty trace");
  if (trace.termination == Termination::NormalForm) {
    ApproxResult r = liminf(SequenceProvider::finite(gs), depth_goal);
    r.evidence = "reduction ended in a normal form; " + r.evidence;
    return r;
  }
  if (auto seq = as_periodic(trace, declared_period)) {
    ApproxResult r = liminf(*seq, depth_goal);
    r.evidence = "eventually periodic graph sequence; " + r.evidence;
    return r;
  }
  return window_liminf(gs, depth_goal);
}

LimitResult analyze_m_convergence(const ReductionTrace& trace, unsigned depth_goal,
                                  std::optional<int> declared_period) {
  for (const auto& g : trace.graphs())
    if (contains_bot(g))
      throw partial_input_error("analyze_m_convergence: trace contains a partial graph");
  return metric_verdict(analyze_p_convergence(trace, depth_goal, declared_period),
                        depth_goal);
}

std::pair<CanonicalTermGraph, CanonicalTermGraph> unravel_rule(const Rule& r, unsigned d) {
  return {unravel_to_depth(rule_lhs(r), d), unravel_to_depth(rule_rhs(r), d)};
}

}  // namespace tg
