#include "tg/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace tg {

namespace {

struct Token {
  enum Kind { Ident, Nat, Punct, Bottom, Dollar, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    int l = line_, c = col_;
    if (pos_ >= src_.size()) return {Token::End, "", l, c};
    char ch = src_[pos_];
    if (src_.compare(pos_, 3, "_|_") == 0) {
      advance(3);
      return {Token::Bottom, "_|_", l, c};
    }
    if (std::isalpha((unsigned char)ch) || ch == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
        advance(1);
      return {Token::Ident, std::string(src_.substr(start, pos_ - start)), l, c};
    }
    if (std::isdigit((unsigned char)ch)) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) advance(1);
      return {Token::Nat, std::string(src_.substr(start, pos_ - start)), l, c};
    }
    if (ch == '$') {
      advance(1);
      return {Token::Dollar, "$", l, c};
    }
    if (std::string("{}();:,/").find(ch) != std::string::npos) {
      advance(1);
      return {Token::Punct, std::string(1, ch), l, c};
    }
    throw parse_error(std::string("unexpected character '") + ch + "'", l, c);
  }

 private:
  void skip_ws() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) advance(1);
      if (pos_ < src_.size() && src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
        continue;
      }
      break;
    }
  }
  void advance(int n) {
    for (int i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }
  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { bump(); }

  Document parse_document() {
    Document doc;
    while (tok_.kind != Token::End) {
      Token at = tok_;
      std::string kw = expect_ident("item keyword");
      if (kw == "sig") {
        parse_sig(doc);
      } else if (kw == "graph") {
        RawGraph g = parse_graph();
        if (doc.find_graph(g.name))
          throw parse_error("duplicate graph " + g.name, at.line, at.col);
        doc.graphs.push_back(std::move(g));
      } else if (kw == "rule") {
        RawRule r = parse_rule();
        if (doc.find_rule(r.name))
          throw parse_error("duplicate rule " + r.name, at.line, at.col);
        doc.rules.push_back(std::move(r));
      } else if (kw == "system") {
        RawSystem s = parse_system();
        if (doc.find_system(s.name))
          throw parse_error("duplicate system " + s.name, at.line, at.col);
        doc.systems.push_back(std::move(s));
      } else {
        fail("expected sig, graph, rule or system, got '" + kw + "'");
      }
    }
    return doc;
  }

 private:
  void bump() { tok_ = lex_.next(); }
  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error(msg, tok_.line, tok_.col);
  }
  void expect_punct(char c) {
    if (tok_.kind != Token::Punct || tok_.text[0] != c)
      fail(std::string("expected '") + c + "'");
    bump();
  }
  std::string expect_ident(const std::string& what) {
    if (tok_.kind != Token::Ident) fail("expected " + what);
    std::string s = tok_.text;
    bump();
    return s;
  }
  bool at_punct(char c) const {
    return tok_.kind == Token::Punct && tok_.text[0] == c;
  }

  void parse_sig(Document& doc) {
    expect_punct('{');
    while (!at_punct('}')) {
      Token name = tok_;
      std::string sym = expect_ident("symbol name");
      expect_punct('/');
      if (tok_.kind != Token::Nat) fail("expected arity");
      int ar = std::stoi(tok_.text);
      bump();
      expect_punct(';');
      try {
        doc.sig.declare(sym, ar);
      } catch (const error& e) {
        throw parse_error(e.what(), name.line, name.col);
      }
    }
    bump();
  }

  RawNode parse_nodedef(const std::string& name, int line, int col) {
    RawNode nd;
    nd.name = name;
    nd.line = line;
    nd.col = col;
    expect_punct(':');
    if (tok_.kind == Token::Bottom) {
      nd.label = Label::bottom();
      bump();
    } else if (tok_.kind == Token::Dollar) {
      bump();
      nd.label = Label::var(expect_ident("variable name"));
    } else {
      nd.label = Label::symbol(expect_ident("label"));
    }
    if (at_punct('(')) {
      bump();
      for (;;) {
        nd.succ.push_back(expect_ident("successor node"));
        if (at_punct(',')) {
          bump();
          continue;
        }
        break;
      }
      expect_punct(')');
    }
    expect_punct(';');
    return nd;
  }

  RawGraph parse_graph() {
    RawGraph g;
    g.name = expect_ident("graph name");
    expect_punct('{');
    std::string kw = expect_ident("'root'");
    if (kw != "root") fail("graph must start with its root declaration");
    g.root = expect_ident("root node");
    expect_punct(';');
    while (!at_punct('}')) {
      Token t = tok_;
      std::string n = expect_ident("node name");
      g.nodes.push_back(parse_nodedef(n, t.line, t.col));
    }
    bump();
    return g;
  }

  RawRule parse_rule() {
    RawRule r;
    r.name = expect_ident("rule name");
    expect_punct('{');
    std::string kw = expect_ident("'lhs'");
    if (kw != "lhs") fail("rule must declare lhs first");
    r.lhs = expect_ident("lhs node");
    expect_punct(';');
    kw = expect_ident("'rhs'");
    if (kw != "rhs") fail("rule must declare rhs after lhs");
    r.rhs = expect_ident("rhs node");
    expect_punct(';');
    while (!at_punct('}')) {
      Token t = tok_;
      std::string n = expect_ident("node name");
      r.nodes.push_back(parse_nodedef(n, t.line, t.col));
    }
    bump();
    return r;
  }

  RawSystem parse_system() {
    RawSystem s;
    s.name = expect_ident("system name");
    expect_punct('{');
    while (!at_punct('}')) {
      s.rules.push_back(expect_ident("rule name"));
      expect_punct(';');
    }
    bump();
    return s;
  }

  Lexer lex_;
  Token tok_{Token::End, "", 0, 0};
};

// Resolves raw node names to dense ids; referenced-but-undefined names are
// collected as dangling.
struct Resolved {
  std::vector<Node> nodes;
  std::map<std::string, NodeId> ids;
  std::vector<std::string> dangling;
};

Resolved resolve_nodes(const std::vector<RawNode>& raw) {
  Resolved rs;
  for (const RawNode& nd : raw) {
    auto [it, fresh] = rs.ids.emplace(nd.name, (NodeId)rs.ids.size());
    if (!fresh) throw error("duplicate node definition: " + nd.name);
  }
  rs.nodes.resize(rs.ids.size());
  for (const RawNode& nd : raw) {
    Node n;
    n.label = nd.label;
    for (const std::string& s : nd.succ) {
      auto it = rs.ids.find(s);
      if (it == rs.ids.end()) {
        rs.dangling.push_back(nd.name + " -> " + s);
        continue;
      }
      n.succ.push_back(it->second);
    }
    rs.nodes[rs.ids[nd.name]] = std::move(n);
  }
  return rs;
}

}  // namespace

const RawGraph* Document::find_graph(const std::string& name) const {
  for (const auto& g : graphs)
    if (g.name == name) return &g;
  return nullptr;
}

const RawRule* Document::find_rule(const std::string& name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

const RawSystem* Document::find_system(const std::string& name) const {
  for (const auto& s : systems)
    if (s.name == name) return &s;
  return nullptr;
}

void Document::merge(const Document& other) {
  sig.merge(other.sig);
  for (const auto& g : other.graphs) {
    if (find_graph(g.name)) throw error("duplicate graph " + g.name);
    graphs.push_back(g);
  }
  for (const auto& r : other.rules) {
    if (find_rule(r.name)) throw error("duplicate rule " + r.name);
    rules.push_back(r);
  }
  for (const auto& s : other.systems) {
    if (find_system(s.name)) throw error("duplicate system " + s.name);
    systems.push_back(s);
  }
}

Document parse(std::string_view text) { return Parser(text).parse_document(); }

TermGraph build_graph(const Document& doc, const RawGraph& rg) {
  Resolved rs = resolve_nodes(rg.nodes);
  if (!rs.dangling.empty())
    throw error("graph " + rg.name + ": dangling successor " + rs.dangling.front());
  auto root = rs.ids.find(rg.root);
  if (root == rs.ids.end()) throw error("graph " + rg.name + ": undefined root " + rg.root);
  TermGraph g;
  g.nodes = std::move(rs.nodes);
  g.root = root->second;
  auto problems = validate(g, doc.sig);
  if (!problems.empty())
    throw error("graph " + rg.name + ": " + violation_text(problems.front()));
  return g;
}

TermGraph build_graph(const Document& doc, const std::string& name) {
  const RawGraph* rg = doc.find_graph(name);
  if (!rg) throw error("no graph named " + name);
  return build_graph(doc, *rg);
}

Rule build_rule(const Document& doc, const RawRule& rr) {
  Resolved rs = resolve_nodes(rr.nodes);
  if (!rs.dangling.empty())
    throw error("rule " + rr.name + ": dangling successor " + rs.dangling.front());
  auto l = rs.ids.find(rr.lhs);
  auto r = rs.ids.find(rr.rhs);
  if (l == rs.ids.end()) throw error("rule " + rr.name + ": undefined lhs " + rr.lhs);
  if (r == rs.ids.end()) throw error("rule " + rr.name + ": undefined rhs " + rr.rhs);
  Rule rule;
  rule.name = rr.name;
  rule.nodes = std::move(rs.nodes);
  rule.lhs_root = l->second;
  rule.rhs_root = r->second;
  auto problems = validate_rule(rule, doc.sig);
  if (!problems.empty())
    throw error("rule " + rr.name + ": " + rule_violation_text(problems.front()));
  return rule;
}

Rule build_rule(const Document& doc, const std::string& name) {
  const RawRule* rr = doc.find_rule(name);
  if (!rr) throw error("no rule named " + name);
  return build_rule(doc, *rr);
}

GRS build_system(const Document& doc, const std::string& name) {
  const RawSystem* rs = doc.find_system(name);
  if (!rs) throw error("no system named " + name);
  GRS grs;
  grs.sig = doc.sig;
  for (const std::string& rn : rs->rules) grs.rules.push_back(build_rule(doc, rn));
  return grs;
}

namespace {

std::string node_name(NodeId n) { return "n" + std::to_string(n); }

void emit_nodedef(std::ostringstream& os, const std::string& name, const Label& l,
                  const std::vector<NodeId>& succ) {
  os << "  " << name << ": " << l.text();
  if (!succ.empty()) {
    os << "(";
    for (size_t i = 0; i < succ.size(); ++i) {
      if (i) os << ", ";
      os << node_name(succ[i]);
    }
    os << ")";
  }
  os << ";\n";
}

}  // namespace

std::string serialize_graph(const TermGraph& g, const std::string& name) {
  CanonicalTermGraph c = canonicalize(g);
  std::ostringstream os;
  os << "graph " << name << " {\n  root n0;\n";
  for (NodeId n = 0; n < c.g.size(); ++n) emit_nodedef(os, node_name(n), c.g.label(n), c.g.succ(n));
  os << "}\n";
  return os.str();
}

std::string serialize_rule(const Rule& r, const std::string& name) {
  // Deterministic numbering: BFS from the lhs root, then from the rhs root.
  std::vector<NodeId> order;
  std::vector<NodeId> newid(r.size(), -1);
  auto bfs = [&](NodeId from) {
    if (newid[from] >= 0) return;
    newid[from] = (NodeId)order.size();
    order.push_back(from);
    for (size_t qi = order.size() - 1; qi < order.size(); ++qi)
      for (NodeId v : r.succ(order[qi]))
        if (newid[v] < 0) {
          newid[v] = (NodeId)order.size();
          order.push_back(v);
        }
  };
  bfs(r.lhs_root);
  bfs(r.rhs_root);
  std::ostringstream os;
  os << "rule " << name << " {\n  lhs " << node_name(newid[r.lhs_root]) << ";\n  rhs "
     << node_name(newid[r.rhs_root]) << ";\n";
  for (size_t i = 0; i < order.size(); ++i) {
    std::vector<NodeId> succ;
    for (NodeId v : r.succ(order[i])) succ.push_back(newid[v]);
    emit_nodedef(os, node_name((NodeId)i), r.label(order[i]), succ);
  }
  os << "}\n";
  return os.str();
}

std::string serialize_signature(const Signature& sig) {
  std::ostringstream os;
  os << "sig {";
  for (const auto& [name, ar] : sig.symbols()) os << " " << name << "/" << ar << ";";
  os << " }\n";
  return os.str();
}

std::string serialize(const Document& doc) {
  std::ostringstream os;
  os << serialize_signature(doc.sig);
  for (const auto& g : doc.graphs) os << serialize_graph(build_graph(doc, g), g.name);
  for (const auto& r : doc.rules) os << serialize_rule(build_rule(doc, r), r.name);
  for (const auto& s : doc.systems) {
    os << "system " << s.name << " {";
    for (const auto& rn : s.rules) os << " " << rn << ";";
    os << " }\n";
  }
  return os.str();
}

std::string export_dot(const TermGraph& g, const std::string& name) {
  CanonicalTermGraph c = canonicalize(g);
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=TB;\n  node [shape=record];\n";
  for (NodeId n = 0; n < c.g.size(); ++n)
    os << "  n" << n << " [label=\"" << c.g.label(n).text() << "\"];\n";
  for (NodeId n = 0; n < c.g.size(); ++n)
    for (int i = 0; i < c.g.arity(n); ++i)
      os << "  n" << n << " -> n" << c.g.succ(n)[i] << " [label=\"" << i << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string export_dot(const Rule& r, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=TB;\n  node [shape=record];\n";
  os << "  __lhs [shape=plaintext, label=\"lhs\"];\n";
  os << "  __rhs [shape=plaintext, label=\"rhs\"];\n";
  for (NodeId n = 0; n < r.size(); ++n)
    os << "  n" << n << " [label=\"" << r.label(n).text() << "\"];\n";
  os << "  __lhs -> n" << r.lhs_root << " [style=dashed];\n";
  os << "  __rhs -> n" << r.rhs_root << " [style=dashed];\n";
  for (NodeId n = 0; n < r.size(); ++n)
    for (int i = 0; i < (int)r.succ(n).size(); ++i)
      os << "  n" << n << " -> n" << r.succ(n)[i] << " [label=\"" << i << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace tg
