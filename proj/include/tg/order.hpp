#pragma once

#include "tg/hom.hpp"

namespace tg {

// g ⊑⊥ᴿ h: a rigid ⊥-homomorphism g -> h exists.
bool leq_rigid(const TermGraph& g, const TermGraph& h);

// g ⊑⊥ˢ h: a plain ⊥-homomorphism exists.
bool leq_simple(const TermGraph& g, const TermGraph& h);

// g ⊑⊥ⁱ h: a ⊥-homomorphism injective on non-⊥ nodes exists.
bool leq_injective(const TermGraph& g, const TermGraph& h);

// Greatest lower bound of two graphs: synchronized product with clashing
// pairs capped by ⊥, then a rigidity cut to fixpoint.
CanonicalTermGraph glb2(const TermGraph& g, const TermGraph& h,
                        int node_cap = default_node_cap());

CanonicalTermGraph glb(const std::vector<TermGraph>& gs);

// Least upper bound of a compatible pair (disjoint-union quotient by shared
// positions); nullopt when the inputs have no common upper bound.
std::optional<CanonicalTermGraph> lub_compatible(const TermGraph& g, const TermGraph& h);

// Maximum of a finite directed set; throws not_directed_error otherwise.
CanonicalTermGraph lub_directed_finite(const std::vector<TermGraph>& gs);

// Maximal in the rigid order iff total (no ⊥).
bool is_maximal_total(const TermGraph& g);

// A finite window onto an ω-sequence: prefix·period^ω, or just a closed
// finite sequence when the period is empty.
struct SequenceProvider {
  std::vector<CanonicalTermGraph> prefix;
  std::vector<CanonicalTermGraph> period;

  bool periodic() const { return !period.empty(); }
  static SequenceProvider finite(std::vector<CanonicalTermGraph> gs) {
    return {std::move(gs), {}};
  }
  static SequenceProvider eventually_periodic(std::vector<CanonicalTermGraph> pre,
                                              std::vector<CanonicalTermGraph> per) {
    if (per.empty()) throw error("SequenceProvider: empty period");
    return {std::move(pre), std::move(per)};
  }
};

struct Exactness {
  enum Kind { WindowStable = 0, DepthExact = 1, Exact = 2 };
  Kind kind = WindowStable;
  unsigned param = 0;  // depth for DepthExact, stable-run length for WindowStable

  static Exactness exact() { return {Exact, 0}; }
  static Exactness depth_exact(unsigned d) { return {DepthExact, d}; }
  static Exactness window_stable(unsigned w) { return {WindowStable, w}; }

  std::string text() const;
  friend bool operator==(const Exactness&, const Exactness&) = default;
  // Exact > DepthExact(d) > WindowStable(w); larger depth/run is stronger.
  friend bool operator<(const Exactness& a, const Exactness& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.param < b.param;
  }
  friend bool operator>=(const Exactness& a, const Exactness& b) { return !(a < b); }
};

struct ApproxResult {
  CanonicalTermGraph graph;
  Exactness exactness;
  std::string evidence;
};

// Limit inferior of the given sequence. A finite sequence is closed (its
// liminf is the last element); an eventually periodic one stabilizes at the
// glb of the period elements.
ApproxResult liminf(const SequenceProvider& seq, unsigned depth_goal);

// Open-window reading of a finite prefix of an unknown ω-sequence: the
// suffix-glb chain over the window, reported with honest exactness.
ApproxResult window_liminf(const std::vector<CanonicalTermGraph>& gs, unsigned depth_goal);

// All canonical term graphs over sig (plus ⊥ if requested) with at most
// max_nodes nodes, deduplicated, deterministically ordered.
std::vector<CanonicalTermGraph> enumerate_canonical(const Signature& sig, int max_nodes,
                                                    bool include_bot,
                                                    long long bound = 1'000'000);

}  // namespace tg
