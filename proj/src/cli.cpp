#include "tg/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tg/format.hpp"

namespace tg::cli {

namespace {

struct Loader {
  std::map<std::string, Document> cache;
  Signature merged_sig;

  const Document& load(const std::string& path) {
    auto it = cache.find(path);
    if (it != cache.end()) return it->second;
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Document doc = parse(buf.str());
    merged_sig.merge(doc.sig);  // arity consistency across files
    return cache.emplace(path, std::move(doc)).first->second;
  }

  // SPEC = file or file:name
  std::pair<const Document*, std::string> resolve(const std::string& spec) {
    std::string file = spec, name;
    if (auto pos = spec.rfind(':'); pos != std::string::npos) {
      std::ifstream probe(spec);
      if (!probe) {
        file = spec.substr(0, pos);
        name = spec.substr(pos + 1);
      }
    }
    const Document& doc = load(file);
    return {&doc, name};
  }

  TermGraph graph(const std::string& spec) {
    auto [doc, name] = resolve(spec);
    if (name.empty()) {
      if (doc->graphs.size() != 1)
        throw error(spec + ": file holds " + std::to_string(doc->graphs.size()) +
                    " graphs, use file:name");
      return build_graph(*doc, doc->graphs.front());
    }
    return build_graph(*doc, name);
  }

  GRS system(const std::string& spec) {
    auto [doc, name] = resolve(spec);
    if (name.empty()) {
      if (doc->systems.size() != 1)
        throw error(spec + ": file holds " + std::to_string(doc->systems.size()) +
                    " systems, use file:name");
      name = doc->systems.front().name;
    }
    return build_system(*doc, name);
  }
};

Depth parse_depth(const std::string& s) {
  if (s == "omega") return Depth::omega();
  return Depth::finite((unsigned)std::stoul(s));
}

Position parse_position(const std::string& s) {
  Position p;
  if (s == "e" || s.empty()) return p;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) p.push_back(std::stoi(part));
  return p;
}

void print_approx(std::ostream& out, const ApproxResult& r) {
  out << "exactness: " << r.exactness.text() << "\n";
  out << "evidence: " << r.evidence << "\n";
  out << serialize_graph(r.graph, "result");
}

int print_limit(std::ostream& out, const LimitResult& r) {
  if (const auto* nc = std::get_if<NotCauchy>(&r)) {
    out << "not-cauchy\n";
    out << "witness: " << position_text(nc->witness) << "\n";
    out << "evidence: " << nc->evidence << "\n";
    return 1;
  }
  print_approx(out, std::get<ApproxResult>(r));
  return 0;
}

DeltaSet parse_delta(const std::string& spec) {
  DeltaSet d;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    if (part == "_|_")
      d.labels.insert(Label::bottom());
    else if (part == "$*")
      d.all_variables = true;
    else if (part[0] == '$')
      d.labels.insert(Label::var(part.substr(1)));
    else
      d.labels.insert(Label::symbol(part));
  }
  return d;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"term graph toolkit: sharing-aware orders, metrics and rewriting"};
  app.require_subcommand(1);
  Loader fs;

  std::string a_spec, b_spec, sys_spec;
  std::vector<std::string> specs;
  std::string depth_str = "omega", delta_str, analyze, strategy = "leftmost-outermost";
  std::vector<std::string> script;
  int steps = 100, period = 0, max_nodes = 2, depth_goal = 4;
  bool simple = false, no_bot = false, show_trace = false;
  std::string sig_file;

  auto* canon = app.add_subcommand("canon", "print the canonical form of a graph");
  canon->add_option("graph", a_spec)->required();

  auto* iso = app.add_subcommand("iso", "isomorphism test (exit 1 if distinct)");
  iso->add_option("a", a_spec)->required();
  iso->add_option("b", b_spec)->required();

  auto* hom = app.add_subcommand("hom", "find the Δ-homomorphism a -> b");
  hom->add_option("--delta", delta_str, "comma list of labels; _|_, $x, $* allowed");
  hom->add_option("a", a_spec)->required();
  hom->add_option("b", b_spec)->required();

  auto* rigid = app.add_subcommand("rigid", "find the rigid ⊥-homomorphism a -> b");
  rigid->add_option("a", a_spec)->required();
  rigid->add_option("b", b_spec)->required();

  auto* leq = app.add_subcommand("leq", "rigid order test a ⊑ b (exit 1 if not)");
  leq->add_flag("--simple", simple, "use the simple order instead");
  leq->add_option("a", a_spec)->required();
  leq->add_option("b", b_spec)->required();

  auto* glbc = app.add_subcommand("glb", "greatest lower bound of the given graphs");
  glbc->add_option("graphs", specs)->required()->expected(-2);

  auto* lubc = app.add_subcommand("lub", "least upper bound of a compatible pair");
  lubc->add_option("a", a_spec)->required();
  lubc->add_option("b", b_spec)->required();

  auto* trunc = app.add_subcommand("trunc", "rigid truncation at a depth");
  trunc->add_option("-d,--depth", depth_str, "depth (number or omega)")->required();
  trunc->add_option("graph", a_spec)->required();

  auto* dist = app.add_subcommand("dist", "rigid distance (2^-k or 0)");
  dist->add_option("a", a_spec)->required();
  dist->add_option("b", b_spec)->required();

  auto* sim = app.add_subcommand("sim", "rigid similarity (number or omega)");
  sim->add_option("a", a_spec)->required();
  sim->add_option("b", b_spec)->required();

  auto* unravel = app.add_subcommand("unravel", "depth-bounded unravelling to a term tree");
  unravel->add_option("-d,--depth", depth_str)->required();
  unravel->add_option("graph", a_spec)->required();

  auto* uneq = app.add_subcommand("uneq", "unravelling equality (exit 1 if distinct)");
  uneq->add_option("a", a_spec)->required();
  uneq->add_option("b", b_spec)->required();

  auto* lim = app.add_subcommand("liminf", "limit inferior of a graph sequence");
  lim->add_option("--period", period, "trailing K graphs repeat forever");
  lim->add_option("--depth", depth_goal, "analysis depth goal");
  lim->add_option("graphs", specs)->required()->expected(-1);

  auto* rew = app.add_subcommand("rewrite", "run a system and analyze convergence");
  rew->add_option("system", sys_spec)->required();
  rew->add_option("graph", a_spec)->required();
  rew->add_option("--strategy", strategy, "leftmost-outermost (default) or script");
  rew->add_option("--script", script, "script entries RULE@POS (POS = e or 0.1.0)");
  rew->add_option("--steps", steps, "step cap (default 100)");
  rew->add_option("--analyze", analyze, "m or p");
  rew->add_option("--depth", depth_goal, "analysis depth goal (default 4)");
  rew->add_option("--period", period, "declared period of the trace tail");
  rew->add_flag("--trace", show_trace, "print every intermediate graph");

  auto* enumc = app.add_subcommand("enum", "enumerate canonical graphs over a signature");
  enumc->add_option("--max-nodes", max_nodes)->required();
  enumc->add_option("--sig", sig_file, "file providing the signature")->required();
  enumc->add_flag("--no-bot", no_bot, "exclude the hole symbol");

  auto* dot = app.add_subcommand("dot", "DOT export of a graph or rule");
  dot->add_option("item", a_spec)->required();

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*canon) {
      out << serialize_graph(fs.graph(a_spec), "canon");
      return 0;
    }
    if (*iso) {
      bool eq = is_isomorphic(fs.graph(a_spec), fs.graph(b_spec));
      out << (eq ? "isomorphic" : "distinct") << "\n";
      return eq ? 0 : 1;
    }
    if (*hom || *rigid) {
      TermGraph a = fs.graph(a_spec), b = fs.graph(b_spec);
      std::optional<NodeMap> m;
      if (*rigid) {
        m = find_rigid_bot_hom(a, b);
      } else {
        m = find_delta_hom(a, b, parse_delta(delta_str));
      }
      if (!m) {
        out << "none\n";
        return 1;
      }
      for (NodeId n = 0; n < a.size(); ++n) out << n << " -> " << m->to[n] << "\n";
      return 0;
    }
    if (*leq) {
      bool ok = simple ? leq_simple(fs.graph(a_spec), fs.graph(b_spec))
                       : leq_rigid(fs.graph(a_spec), fs.graph(b_spec));
      out << (ok ? "true" : "false") << "\n";
      return ok ? 0 : 1;
    }
    if (*glbc) {
      std::vector<TermGraph> gs;
      for (const auto& s : specs) gs.push_back(fs.graph(s));
      out << serialize_graph(glb(gs), "result");
      return 0;
    }
    if (*lubc) {
      auto r = lub_compatible(fs.graph(a_spec), fs.graph(b_spec));
      if (!r) {
        out << "incompatible\n";
        return 1;
      }
      out << serialize_graph(*r, "result");
      return 0;
    }
    if (*trunc) {
      out << serialize_graph(truncate(fs.graph(a_spec), parse_depth(depth_str)), "result");
      return 0;
    }
    if (*dist) {
      out << distance(fs.graph(a_spec), fs.graph(b_spec)).text() << "\n";
      return 0;
    }
    if (*sim) {
      out << similarity(fs.graph(a_spec), fs.graph(b_spec)).text() << "\n";
      return 0;
    }
    if (*unravel) {
      Depth d = parse_depth(depth_str);
      if (d.is_omega()) throw error("unravel needs a finite depth");
      out << serialize_graph(unravel_to_depth(fs.graph(a_spec), d.value()), "result");
      return 0;
    }
    if (*uneq) {
      bool eq = unravel_eq(fs.graph(a_spec), fs.graph(b_spec));
      out << (eq ? "equal" : "distinct") << "\n";
      return eq ? 0 : 1;
    }
    if (*lim) {
      std::vector<CanonicalTermGraph> gs;
      for (const auto& s : specs) gs.push_back(canonicalize(fs.graph(s)));
      SequenceProvider seq;
      if (period > 0) {
        if (period > (int)gs.size()) throw error("period longer than the sequence");
        seq.period.assign(gs.end() - period, gs.end());
        seq.prefix.assign(gs.begin(), gs.end() - period);
      } else {
        seq.prefix = std::move(gs);
      }
      print_approx(out, liminf(seq, (unsigned)depth_goal));
      return 0;
    }
    if (*rew) {
      GRS grs = fs.system(sys_spec);
      TermGraph start = fs.graph(a_spec);
      Strategy strat;
      if (strategy == "script") {
        std::vector<std::pair<Position, std::string>> entries;
        for (const std::string& s : script) {
          auto at = s.find('@');
          if (at == std::string::npos) throw error("script entry must be RULE@POS: " + s);
          entries.push_back({parse_position(s.substr(at + 1)), s.substr(0, at)});
        }
        strat = Strategy::by_script(std::move(entries));
      } else if (strategy != "leftmost-outermost" && strategy != "lo") {
        throw error("unknown strategy " + strategy);
      }
      ReductionTrace trace = run(grs, start, strat, steps);
      for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& st = trace.steps[i];
        out << "step " << i << ": " << st.rule << " @ n" << st.redex << "\n";
        if (show_trace) out << serialize_graph(st.target, "g" + std::to_string(i + 1));
      }
      switch (trace.termination) {
        case Termination::NormalForm: out << "termination: normal-form\n"; break;
        case Termination::StepCap: out << "termination: step-cap\n"; break;
        case Termination::StrategyStall: out << "termination: strategy-stall\n"; break;
      }
      out << serialize_graph(trace.last(), "final");
      if (analyze.empty()) return 0;
      std::optional<int> declared;
      if (period > 0) declared = period;
      if (analyze == "p") {
        print_approx(out, analyze_p_convergence(trace, (unsigned)depth_goal, declared));
        return 0;
      }
      if (analyze == "m")
        return print_limit(out, analyze_m_convergence(trace, (unsigned)depth_goal, declared));
      throw error("unknown analysis " + analyze);
    }
    if (*enumc) {
      const Document& doc = fs.load(sig_file);
      auto all = enumerate_canonical(doc.sig, max_nodes, !no_bot);
      for (size_t i = 0; i < all.size(); ++i)
        out << serialize_graph(all[i], "g" + std::to_string(i));
      out << "count: " << all.size() << "\n";
      return 0;
    }
    if (*dot) {
      auto [doc, name] = fs.resolve(a_spec);
      if (!name.empty() && doc->find_rule(name)) {
        out << export_dot(build_rule(*doc, name), name);
        return 0;
      }
      if (name.empty() && doc->graphs.empty() && doc->rules.size() == 1) {
        out << export_dot(build_rule(*doc, doc->rules.front()), doc->rules.front().name);
        return 0;
      }
      std::string gname = name;
      if (gname.empty()) {
        if (doc->graphs.size() != 1) throw error(a_spec + ": ambiguous item, use file:name");
        gname = doc->graphs.front().name;
      }
      out << export_dot(build_graph(*doc, gname), gname);
      return 0;
    }
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const size_limit_error& e) {
    err << "limit: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace tg::cli
