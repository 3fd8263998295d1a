// Acceptance suite: every check is exact (the domain is discrete); each
// criterion prints a single pass/fail line and the binary exits nonzero if
// any criterion fails.

#include <algorithm>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "util.hpp"

using namespace tgt;

namespace {

int failures = 0;
std::ostringstream detail;

void criterion(int number, const std::string& title, const std::function<void()>& body) {
  detail.str("");
  bool ok = true;
  std::string why;
  try {
    body();
  } catch (const std::exception& e) {
    ok = false;
    why = e.what();
  }
  if (ok) {
    std::cout << "PASS criterion " << number << ": " << title << "\n";
  } else {
    ++failures;
    std::cout << "FAIL criterion " << number << ": " << title << " -- " << why << "\n";
    if (!detail.str().empty()) std::cout << detail.str();
  }
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

// -------------------------------------------------------------- criterion 1

void join_example() {
  Document doc = load_fixture("join_pair.tg");
  TermGraph g = build_graph(doc, "lub_g");
  TermGraph h = build_graph(doc, "lub_h");
  auto r = lub_compatible(g, h);
  require(r.has_value(), "pair reported incompatible");
  require(*r == canonicalize(build_graph(doc, "lub_expected")),
          "join is not the single doubly-self-looping node");
}

// -------------------------------------------------------------- criterion 2

void meet_family() {
  Document doc = load_fixture("meet_family.tg");
  TermGraph g1 = build_graph(doc, "family_g1");
  TermGraph g2 = build_graph(doc, "family_g2");
  TermGraph g3 = build_graph(doc, "family_g3");
  TermGraph g4 = build_graph(doc, "family_g4");
  TermGraph g5 = build_graph(doc, "family_g5");
  require(glb2(g1, g2) == canonicalize(g5), "glb(g1,g2) is not g5");
  require(!leq_rigid(g3, g1), "g3 wrongly below g1 in the rigid order");
  require(!leq_rigid(g4, g1), "g4 wrongly below g1 in the rigid order");
  // negative-example regression: both ARE lower bounds in the injective order
  require(leq_injective(g3, g1) && leq_injective(g3, g2),
          "g3 lost its injective-order lower-bound status");
  require(leq_injective(g4, g1) && leq_injective(g4, g2),
          "g4 lost its injective-order lower-bound status");
}

// -------------------------------------------------------------- criterion 3

void glb_unravelling_failure() {
  Document doc = load_fixture("unravel_pair.tg");
  TermGraph g = build_graph(doc, "shared");
  TermGraph h = build_graph(doc, "tree");
  CanonicalTermGraph meet = glb2(g, h);
  require(meet == canonicalize(build_graph(doc, "expected_glb")), "glb is not f(_|_,_|_)");
  require(unravel_eq(g, h), "the two graphs must unravel equally");
  // strict inequality: unravel(g ⊓ h) below unravel(g) ⊓ unravel(h), not equal
  CanonicalTermGraph left = unravel_to_depth(meet, 2);
  CanonicalTermGraph right = glb2(unravel_to_depth(g, 2), unravel_to_depth(h, 2));
  require(leq_rigid(left, right), "weak preservation of glbs fails");
  require(left != right, "inequality is not strict");
}

// -------------------------------------------------------------- criterion 4

void truncation_examples() {
  Document doc = load_fixture("trunc_examples.tg");
  TermGraph loop2 = build_graph(doc, "loop2");
  auto parts = truncation_parts(loop2, 2);
  require(parts.retained == std::vector<NodeId>{0, 1}, "retained set of the 2-cycle");
  require(parts.fringe == std::vector<std::pair<NodeId, int>>{{1, 0}},
          "fringe of the 2-cycle must be the cycle-closing slot");
  require(truncate(loop2, Depth::finite(2)) == canonicalize(build_graph(doc, "loop2_trunc2")),
          "truncation of the 2-cycle");
  for (int n = 1; n <= 4; ++n) {
    TermGraph gn = sharing_family(n);
    require(truncate(gn, Depth::finite(2)) == canonicalize(gn),
            "family member " + std::to_string(n) + " not preserved at depth 2");
  }
  TermGraph ex = build_graph(doc, "excmp");
  CanonicalTermGraph rigid = truncate(ex, Depth::finite(2));
  require(rigid == canonicalize(build_graph(doc, "excmp_rigid2")),
          "rigid truncation of the comparison graph");
  // the simple truncation (no predecessor closure), built as a fixture
  CanonicalTermGraph simple = canonicalize(build_graph(doc, "excmp_simple2"));
  require(rigid != simple, "rigid and simple truncation must differ here");
  require(!leq_rigid(simple, ex), "the simple truncation must not sit below the graph");
  require(leq_rigid(rigid, ex), "the rigid truncation must sit below the graph");
}

// -------------------------------------------------------------- criterion 5

void divergence_family() {
  Document doc = load_fixture("dup.tg");
  GRS grs = build_system(doc, "dup3");
  ReductionTrace trace =
      run(grs, build_graph(doc, "start"), Strategy::leftmost_outermost(), 6);
  auto gs = trace.graphs();
  require(gs.size() == 7, "expected a 6-step window");
  for (size_t i = 0; i < gs.size(); ++i)
    for (unsigned d = 3; d <= 4; ++d)
      require(truncate(gs[i], Depth::finite(d)) == gs[i],
              "truncation beyond depth 2 must preserve every window element");
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = i + 1; j < gs.size(); ++j)
      require(distance(gs[i], gs[j]) >= DyadicDistance::exp(2),
              "pairwise distances must stay at least 2^-2");
  auto m = analyze_m_convergence(trace, 3);
  require(std::holds_alternative<NotCauchy>(m), "the leftmost trace must not be Cauchy");
}

// -------------------------------------------------------------- criterion 6

void prepend_examples() {
  Document doc = load_fixture("cons.tg");
  // one capture step from cons(a,c) to the b-cycle
  Rule rho2 = build_rule(doc, "rho2");
  TermGraph start = build_graph(doc, "start");
  TermGraph bcycle = build_graph(doc, "bcycle");
  require(step(start, start.root, rho2).target == canonicalize(bcycle),
          "one rho2 step must build the b-cycle");

  // the stepwise trace m-converges to the unravelling of the b-cycle
  GRS grs = build_system(doc, "just_rho1");
  ReductionTrace trace =
      run(grs, build_graph(doc, "acycle"), Strategy::leftmost_outermost(), 10);
  auto m = analyze_m_convergence(trace, 5);
  auto* ok = std::get_if<ApproxResult>(&m);
  require(ok != nullptr, "the prepend trace must be Cauchy to depth 5");
  CanonicalTermGraph at5 = truncate(ok->graph, Depth::finite(5));
  // the term-tree prefix: four full b's, then the capped cons
  TTerm expect = tt("cons", {tbot(), tbot()});
  for (int i = 0; i < 4; ++i) expect = tt("cons", {tt("b"), expect});
  require(at5 == canonicalize(term_to_graph(expect)),
          "depth-5 limit prefix is not the b-list truncation");
  require(unravel_to_depth(bcycle, 5) == at5,
          "unravelling the b-cycle to depth 5 must agree");
}

// -------------------------------------------------------------- criterion 7

void duplication_examples() {
  Document doc = load_fixture("dup.tg");
  TermGraph start = build_graph(doc, "start");

  Rule drho1 = build_rule(doc, "drho1");
  require(step(start, start.root, drho1).target ==
              canonicalize(build_graph(doc, "rho1_result")),
          "one capture step must build the doubly-self-looping f");

  unsigned goal = 4;

  GRS dup2 = build_system(doc, "dup2");
  ReductionTrace t2 = run(dup2, start, Strategy::leftmost_outermost(), 8);
  auto m2 = analyze_m_convergence(t2, goal);
  auto* ok2 = std::get_if<ApproxResult>(&m2);
  require(ok2 != nullptr, "the sharing trace must m-converge");
  TermGraph spine = gb({{"f", {1, 1}},
                        {"f", {2, 2}},
                        {"f", {3, 3}},
                        {"f", {4, 5}},
                        {"_|_", {}},
                        {"_|_", {}}});
  require(truncate(ok2->graph, Depth::finite(goal)) == canonicalize(spine),
          "depth-4 limit must match the doubled-spine truncation");

  GRS dup3 = build_system(doc, "dup3");
  ReductionTrace t3 = run(dup3, start, Strategy::leftmost_outermost(), 8);
  ApproxResult p3 = analyze_p_convergence(t3, goal);
  require(node_at_opt(p3.graph, {1, 0}).has_value() &&
              p3.graph.g.label(node_at(p3.graph, {1, 0})).is_bottom(),
          "the p-limit must have a hole at the shared-constant position");
  auto m3 = analyze_m_convergence(t3, goal);
  require(std::holds_alternative<NotCauchy>(m3), "the leftmost trace must fail m-convergence");

  // total-fragment cross-check on both traces
  for (const ReductionTrace* tr : {&t2, &t3}) {
    ApproxResult p = analyze_p_convergence(*tr, goal);
    auto m = analyze_m_convergence(*tr, goal);
    if (bot_depth(p.graph) >= Depth::finite(goal)) {
      auto* ok = std::get_if<ApproxResult>(&m);
      require(ok != nullptr, "hole-free p-limit but no m-limit");
      require(truncate(ok->graph, Depth::finite(goal)) ==
                  truncate(p.graph, Depth::finite(goal)),
              "m- and p-limits must agree on the goal truncation");
    } else {
      require(std::holds_alternative<NotCauchy>(m),
              "shallow hole in the p-limit but the m-analysis succeeded");
    }
  }
}

// -------------------------------------------------------------- criterion 8

void oracle_suite() {
  Signature sig;
  sig.declare("f", 2);
  sig.declare("a", 0);
  auto universe = enumerate_canonical(sig, 3, true);
  require(universe.size() > 50, "universe suspiciously small");
  size_t u = universe.size();
  std::map<CanonicalTermGraph, size_t> index;
  for (size_t i = 0; i < u; ++i) index[universe[i]] = i;

  std::vector<std::vector<bool>> leq(u, std::vector<bool>(u, false));
  for (size_t i = 0; i < u; ++i)
    for (size_t j = 0; j < u; ++j) {
      leq[i][j] = leq_rigid(universe[i], universe[j]);
      require(leq[i][j] == leq_rigid_characterisation(universe[i], universe[j]),
              "hom search disagrees with the position characterisation");
      if (leq[i][j])
        require(leq_simple(universe[i], universe[j]),
                "rigid order must refine the simple order");
    }

  // partial-order laws
  for (size_t i = 0; i < u; ++i) require(leq[i][i], "reflexivity");
  for (size_t i = 0; i < u; ++i)
    for (size_t j = 0; j < u; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) throw std::runtime_error("antisymmetry");
      if (!leq[i][j]) continue;
      for (size_t k = 0; k < u; ++k)
        if (leq[j][k] && !leq[i][k]) throw std::runtime_error("transitivity");
    }

  // maximal iff total
  for (size_t i = 0; i < u; ++i) {
    bool maximal = true;
    for (size_t j = 0; j < u; ++j)
      if (i != j && leq[i][j]) maximal = false;
    require(maximal == is_maximal_total(universe[i]), "maximality/totality mismatch");
  }

  // glb2 against the brute-force lower-bound table
  for (size_t i = 0; i < u; ++i)
    for (size_t j = i; j < u; ++j) {
      CanonicalTermGraph meet = glb2(universe[i], universe[j]);
      require(leq_rigid(meet, universe[i]) && leq_rigid(meet, universe[j]),
              "glb2 result is not a lower bound");
      auto at = index.find(meet);
      if (meet.size() <= 3)
        require(at != index.end(), "small glb2 result missing from the universe");
      for (size_t k = 0; k < u; ++k) {
        if (!(leq[k][i] && leq[k][j])) continue;
        bool below = at != index.end() ? leq[k][at->second] : leq_rigid(universe[k], meet);
        require(below, "glb2 misses a universe lower bound");
      }
    }

  // lub_compatible against the brute-force upper-bound table
  for (size_t i = 0; i < u; ++i)
    for (size_t j = i; j < u; ++j) {
      std::vector<size_t> ubs;
      for (size_t k = 0; k < u; ++k)
        if (leq[i][k] && leq[j][k]) ubs.push_back(k);
      auto join = lub_compatible(universe[i], universe[j]);
      if (!join) {
        require(ubs.empty(), "incompatible verdict despite a common upper bound");
        continue;
      }
      require(leq_rigid(universe[i], *join) && leq_rigid(universe[j], *join),
              "join is not an upper bound");
      auto at = index.find(*join);
      for (size_t k : ubs) {
        bool below = at != index.end() ? leq[at->second][k] : leq_rigid(*join, universe[k]);
        require(below, "join is not least among upper bounds");
      }
      if (join->size() <= 3)
        require(!ubs.empty(), "small join exists but brute force saw no upper bound");
    }

  // metric facet: ultrametric laws and similarity = hole depth of the meet
  std::vector<CanonicalTermGraph> total;
  for (const auto& g : universe)
    if (!contains_bot(g)) total.push_back(g);
  size_t t = total.size();
  std::vector<std::vector<DyadicDistance>> dist(
      t, std::vector<DyadicDistance>(t, DyadicDistance::zero()));
  for (size_t x = 0; x < t; ++x)
    for (size_t y = 0; y < t; ++y) dist[x][y] = distance(total[x], total[y]);
  for (size_t x = 0; x < t; ++x)
    for (size_t y = 0; y < t; ++y) {
      require((dist[x][y] == DyadicDistance::zero()) == (total[x] == total[y]),
              "metric identity");
      require(dist[x][y] == dist[y][x], "metric symmetry");
      require(similarity(total[x], total[y]) == bot_depth(glb2(total[x], total[y])),
              "similarity must equal the hole depth of the meet");
    }
  for (size_t x = 0; x < t; ++x)
    for (size_t y = 0; y < t; ++y)
      for (size_t z = 0; z < t; ++z)
        require(dist[x][z] <= std::max(dist[x][y], dist[y][z]),
                "strong triangle inequality");

  // truncations stay below; fresh holes appear only at the cut depth (for a
  // partial graph its own holes survive, bounding the claim by its ⊥-depth)
  for (const auto& g : universe)
    for (unsigned d = 0; d <= 4; ++d) {
      CanonicalTermGraph trunc = truncate(g, Depth::finite(d));
      require(leq_rigid(trunc, g), "truncation not below its graph");
      Depth floor = std::min(Depth::finite(d), bot_depth(g));
      require(bot_depth(trunc) >= floor, "truncation hole above the cut depth");
      if (!contains_bot(g))
        require(bot_depth(trunc) >= Depth::finite(d),
                "truncation of a total graph with a shallow hole");
    }
}

// -------------------------------------------------------------- criterion 9

void term_specialization() {
  std::mt19937 rng(424242);
  for (int i = 0; i < 500; ++i) {
    TTerm s = random_term(rng, 3);
    TTerm t = random_term(rng, 3);
    TermGraph gs = term_to_graph(s);
    TermGraph gt = term_to_graph(t);
    require(leq_rigid(gs, gt) == term_leq_bot(s, t), "rigid order vs term order");
    require(distance(gs, gt) == term_distance(s, t), "rigid metric vs term metric");
    for (unsigned d = 0; d <= 4; ++d)
      require(truncate(gs, Depth::finite(d)) ==
                  canonicalize(term_to_graph(term_truncate_oracle(s, d))),
              "rigid truncation vs term truncation");
  }
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<int> count(1, 3);
    std::vector<TTerm> period;
    for (int j = 0, k = count(rng); j < k; ++j) period.push_back(random_term(rng, 3));
    std::vector<CanonicalTermGraph> graphs;
    for (const TTerm& t : period) graphs.push_back(canonicalize(term_to_graph(t)));
    ApproxResult r = liminf(SequenceProvider::eventually_periodic({}, graphs), 4);
    require(r.graph == canonicalize(term_to_graph(term_liminf_periodic({}, period))),
            "graph liminf vs term liminf");
  }
}

// ------------------------------------------------------------- criterion 10

void embedding_suite() {
  std::mt19937 rng(777);
  int done = 0;
  while (done < 200) {
    TermGraph g = random_graph(rng, {{"f", 2}, {"h", 1}, {"a", 0}}, 6);
    std::uniform_int_distribution<int> dd(1, 4);
    unsigned d = dd(rng);
    if (bot_depth(g) < Depth::finite(d)) continue;  // need hole-free prefix
    ++done;

    // the canonical embedding of the truncation into g: retained nodes map
    // to themselves, fringe slots to the successor they replaced
    auto parts = truncation_parts(g, d);
    TermGraph tr;
    std::vector<NodeId> remap(g.size(), -1);
    std::vector<NodeId> to;  // embedding, indexed by truncation node id
    for (NodeId n : parts.retained) {
      remap[n] = (NodeId)tr.nodes.size();
      tr.nodes.push_back({g.label(n), {}});
      to.push_back(n);
    }
    std::map<std::pair<NodeId, int>, NodeId> fid;
    for (auto& f : parts.fringe) {
      fid[f] = (NodeId)tr.nodes.size();
      tr.nodes.push_back({Label::bottom(), {}});
      to.push_back(g.succ(f.first)[f.second]);
    }
    for (NodeId n : parts.retained)
      for (int i = 0; i < g.arity(n); ++i) {
        auto it = fid.find({n, i});
        tr.nodes[remap[n]].succ.push_back(it != fid.end() ? it->second
                                                          : remap[g.succ(n)[i]]);
      }
    tr.root = remap[g.root];

    NodeMap phi{to, DeltaSet::bottom_only()};
    require(is_delta_hom(phi, tr, g, DeltaSet::bottom_only()),
            "canonical embedding is not a hole-homomorphism");
    require(is_rigid(phi, tr, g, DeltaSet::bottom_only()),
            "canonical embedding is not rigid");

    // retained nodes map onto retained nodes (both directions)
    auto tparts = truncation_parts(tr, d);
    std::set<NodeId> image;
    for (NodeId n : tparts.retained) image.insert(phi.to[n]);
    std::set<NodeId> target(parts.retained.begin(), parts.retained.end());
    require(image == target, "retained nodes not mapped onto retained nodes");

    // fringe slots correspond both ways
    std::set<std::pair<NodeId, int>> mapped;
    for (auto& f : tparts.fringe) mapped.insert({phi.to[f.first], f.second});
    std::set<std::pair<NodeId, int>> expected(parts.fringe.begin(), parts.fringe.end());
    require(mapped == expected, "fringe slots not preserved both ways");

    // deep-hole comparability forces truncation agreement
    std::uniform_int_distribution<int> ee(0, (int)d);
    unsigned e = ee(rng);
    CanonicalTermGraph below = truncate(g, Depth::finite(d));
    require(leq_rigid(below, g) && bot_depth(below) >= Depth::finite(e),
            "sample violates the preconditions");
    require(truncate(below, Depth::finite(e)) == truncate(g, Depth::finite(e)),
            "comparable graphs with deep holes must truncate equally");
  }

  // the same preservation laws for arbitrary rigid maps between distinct
  // universe members, not just the canonical truncation embeddings
  Signature sig;
  sig.declare("f", 2);
  sig.declare("a", 0);
  auto universe = enumerate_canonical(sig, 3, true);
  int pairs = 0;
  for (const auto& g : universe) {
    for (const auto& h : universe) {
      if (pairs >= 200) break;
      auto phi = find_rigid_bot_hom(g, h);
      if (!phi) continue;
      for (unsigned d = 1; d <= 2; ++d) {
        if (bot_depth(g) < Depth::finite(d)) continue;
        ++pairs;
        auto pg = truncation_parts(g, d);
        auto ph = truncation_parts(h, d);
        std::set<NodeId> image;
        for (NodeId n : pg.retained) image.insert(phi->to[n]);
        require(image == std::set<NodeId>(ph.retained.begin(), ph.retained.end()),
                "rigid map does not carry retained nodes onto retained nodes");
        std::set<std::pair<NodeId, int>> mapped;
        for (auto& f : pg.fringe) mapped.insert({phi->to[f.first], f.second});
        require(mapped == std::set<std::pair<NodeId, int>>(ph.fringe.begin(), ph.fringe.end()),
                "rigid map does not preserve fringe slots both ways");
      }
    }
  }
  require(pairs >= 100, "too few comparable pairs sampled");
}

}  // namespace

int main() {
  criterion(1, "join of the compatible pair collapses to one self-looping node", join_example);
  criterion(2, "counterexample family: rigid glb, non-bounds, injective bounds", meet_family);
  criterion(3, "glbs are only weakly preserved under unravelling", glb_unravelling_failure);
  criterion(4, "truncation examples: cycle fringe, preserved family, rigid vs simple",
            truncation_examples);
  criterion(5, "leftmost duplication window: rigid truncations, distances, not Cauchy",
            divergence_family);
  criterion(6, "prepend examples: capture step, depth-5 metric limit, unravelling",
            prepend_examples);
  criterion(7, "duplication examples: capture, m-limit, p-limit, total fragment",
            duplication_examples);
  criterion(8, "exhaustive 3-node oracle: order, glb, lub, maximality, ultrametric",
            oracle_suite);
  criterion(9, "term specialization: order, metric, truncation, liminf", term_specialization);
  criterion(10, "truncation embeddings preserve retained and fringe nodes", embedding_suite);

  if (failures) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
