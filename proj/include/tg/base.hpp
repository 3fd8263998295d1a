#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tg {

using NodeId = int32_t;

// A position is a path of successor indices from the root.
using Position = std::vector<int>;

std::string position_text(const Position& p);

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct size_limit_error : error {
  using error::error;
};

struct invalid_position_error : error {
  using error::error;
};

struct unknown_node_error : error {
  using error::error;
};

struct not_a_homomorphism_error : error {
  using error::error;
};

struct not_applicable_error : error {
  using error::error;
};

struct not_directed_error : error {
  using error::error;
};

struct empty_sequence_error : error {
  using error::error;
};

struct partial_input_error : error {
  using error::error;
};

struct script_mismatch_error : error {
  using error::error;
};

struct undeclared_symbol_error : error {
  using error::error;
};

// Node labels: proper signature symbols, the hole symbol ⊥, and variables.
// ⊥ and variables are always nullary.
enum class LabelKind : uint8_t { Symbol = 0, Bottom = 1, Variable = 2 };

struct Label {
  LabelKind kind = LabelKind::Bottom;
  std::string name;

  static Label symbol(std::string s) { return Label{LabelKind::Symbol, std::move(s)}; }
  static Label bottom() { return Label{LabelKind::Bottom, {}}; }
  static Label var(std::string v) { return Label{LabelKind::Variable, std::move(v)}; }

  bool is_symbol() const { return kind == LabelKind::Symbol; }
  bool is_bottom() const { return kind == LabelKind::Bottom; }
  bool is_var() const { return kind == LabelKind::Variable; }

  // Text form as used by the .tg format: f, _|_, $x
  std::string text() const;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label& a, const Label& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    return a.name <=> b.name;
  }
};

// ℕ ∪ {ω}, with ω as top.
class Depth {
 public:
  constexpr Depth() : omega_(true), n_(0) {}
  static constexpr Depth finite(unsigned n) { return Depth(false, n); }
  static constexpr Depth omega() { return Depth(true, 0); }

  bool is_omega() const { return omega_; }
  bool is_finite() const { return !omega_; }
  unsigned value() const {
    if (omega_) throw error("Depth: omega has no finite value");
    return n_;
  }

  friend bool operator==(const Depth&, const Depth&) = default;
  friend bool operator<(Depth a, Depth b) {
    if (b.omega_) return !a.omega_;
    if (a.omega_) return false;
    return a.n_ < b.n_;
  }
  friend bool operator<=(Depth a, Depth b) { return a == b || a < b; }
  friend bool operator>(Depth a, Depth b) { return b < a; }
  friend bool operator>=(Depth a, Depth b) { return b <= a; }

  std::string text() const { return omega_ ? "omega" : std::to_string(n_); }

 private:
  constexpr Depth(bool o, unsigned n) : omega_(o), n_(n) {}
  bool omega_;
  unsigned n_;
};

// Exact dyadic distances 2^-k, plus zero. No floating point anywhere.
class DyadicDistance {
 public:
  static DyadicDistance zero() { return DyadicDistance(true, 0); }
  static DyadicDistance exp(unsigned k) { return DyadicDistance(false, k); }
  static DyadicDistance from_similarity(Depth sim) {
    return sim.is_omega() ? zero() : exp(sim.value());
  }

  bool is_zero() const { return zero_; }
  unsigned exponent() const {
    if (zero_) throw error("DyadicDistance: zero has no exponent");
    return k_;
  }

  friend bool operator==(const DyadicDistance&, const DyadicDistance&) = default;
  friend bool operator<(DyadicDistance a, DyadicDistance b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.k_ > b.k_;  // 2^-k shrinks as k grows
  }
  friend bool operator<=(DyadicDistance a, DyadicDistance b) { return a == b || a < b; }
  friend bool operator>(DyadicDistance a, DyadicDistance b) { return b < a; }
  friend bool operator>=(DyadicDistance a, DyadicDistance b) { return b <= a; }

  std::string text() const { return zero_ ? "0" : "2^-" + std::to_string(k_); }

 private:
  DyadicDistance(bool z, unsigned k) : zero_(z), k_(k) {}
  bool zero_;
  unsigned k_;
};

// Ranked signature. ⊥ and variables are implicit and may not be declared.
class Signature {
 public:
  void declare(const std::string& name, int arity);
  bool declared(const std::string& name) const { return arities_.count(name) != 0; }
  int arity_of(const std::string& name) const;

  // Arity of an arbitrary label: 0 for ⊥/variables, declared arity otherwise.
  int arity(const Label& l) const;
  bool knows(const Label& l) const;

  const std::map<std::string, int>& symbols() const { return arities_; }

  // Union of two signatures; conflicting arities are an error.
  void merge(const Signature& other);

 private:
  std::map<std::string, int> arities_;
};

// A set of labels at which homomorphism conditions are suspended.
// Either an explicit set of (nullary) labels or "all variables".
struct DeltaSet {
  bool all_variables = false;
  std::set<Label> labels;

  bool contains(const Label& l) const {
    if (all_variables && l.is_var()) return true;
    return labels.count(l) != 0;
  }

  static DeltaSet none() { return DeltaSet{}; }
  static DeltaSet bottom_only() { return DeltaSet{false, {Label::bottom()}}; }
  static DeltaSet variables() { return DeltaSet{true, {}}; }
  static DeltaSet of(std::set<Label> ls) { return DeltaSet{false, std::move(ls)}; }
};

// Node cap for simple-path enumeration and product constructions.
// Overridable via the TG_NODE_CAP environment variable.
int default_node_cap();

}  // namespace tg
