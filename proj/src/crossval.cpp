/*
 * Copyright 2026 The truecon Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "truecon/charform.hpp"
#include "truecon/distinguish.hpp"
#include "truecon/eval.hpp"
#include "truecon/examples.hpp"
#include "truecon/frontend.hpp"
#include "truecon/harness.hpp"

namespace truecon {

bool CrossReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed(); });
}

const PropertyResult* CrossReport::find(std::string_view name) const {
  for (const PropertyResult& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

std::string CrossReport::to_text() const {
  std::ostringstream out;
  out << "universe: " << structures << " structures (<= " << budget.max_events << " events, <= "
      << budget.max_labels << " labels), " << pairs << " pairs\n";
  for (const PropertyResult& p : properties) {
    out << (p.passed() ? "PASS " : "FAIL ") << p.name << ": " << p.checked << " checked, "
        << p.violations << " violations\n";
    if (p.first_counterexample) out << "  first counterexample:\n" << *p.first_counterexample << "\n";
  }
  for (const PairVerdicts& v : named) {
    out << "pair " << v.name << ":";
    for (auto [k, eq] : v.equivalent) out << " " << to_string(k) << "=" << (eq ? "equivalent" : "inequivalent");
    out << "\n";
  }
  out << "elapsed: " << seconds << " s\n";
  return out.str();
}

std::string CrossReport::to_json() const {
  nlohmann::ordered_json j;
  j["budget"] = {{"max_events", budget.max_events}, {"max_labels", budget.max_labels}, {"cap", budget.cap}};
  j["structures"] = structures;
  j["pairs"] = pairs;
  j["passed"] = passed();
  j["properties"] = nlohmann::ordered_json::array();
  for (const PropertyResult& p : properties) {
    nlohmann::ordered_json e{{"name", p.name}, {"checked", p.checked}, {"violations", p.violations},
                             {"passed", p.passed()}};
    e["first_counterexample"] = p.first_counterexample ? nlohmann::ordered_json(*p.first_counterexample)
                                                       : nlohmann::ordered_json(nullptr);
    j["properties"].push_back(std::move(e));
  }
  j["named_pairs"] = nlohmann::ordered_json::array();
  for (const PairVerdicts& v : named) {
    nlohmann::ordered_json e{{"name", v.name}};
    for (auto [k, eq] : v.equivalent) e["verdicts"][to_string(k)] = eq;
    j["named_pairs"].push_back(std::move(e));
  }
  j["seconds"] = seconds;
  return j.dump(2);
}

std::vector<NamedPair> example_pairs() {
  return {
      {"interleaving", parse_term("a|b"), parse_term("a.b+b.a")},
      {"autoconcurrency", parse_term("a|a"), parse_term("a.a")},
      {"idempotence", parse_term("a"), parse_term("a+a")},
      {"fig2", examples::fig2_e(), examples::fig2_f()},
      {"absorption", parse_term(examples::kAbsorptionLhs), parse_term(examples::kAbsorptionRhs)},
      {"fig3", examples::fig3_e(), examples::fig3_f()},
  };
}

namespace {

constexpr BisimKind kKinds[] = {BisimKind::IB, BisimKind::WH, BisimKind::H, BisimKind::HWH, BisimKind::HH};

std::string repro_pair(const Structure& c, const Structure& d, const std::string& what) {
  return what + "\n--- lhs\n" + render_structure_file(c) + "--- rhs\n" + render_structure_file(d);
}

std::string repro_one(const Structure& s, const std::string& what) {
  return what + "\n--- structure\n" + render_structure_file(s);
}

// Results for one task, merged in task order so reports are deterministic.
struct Tally {
  std::map<std::string, PropertyResult> props;

  void record(const std::string& name, bool ok, const std::function<std::string()>& repro) {
    PropertyResult& p = props[name];
    p.name = name;
    ++p.checked;
    if (ok) return;
    if (p.violations++ == 0) p.first_counterexample = repro();
  }

  void merge(const Tally& o) {
    for (const auto& [name, q] : o.props) {
      PropertyResult& p = props[name];
      p.name = name;
      p.checked += q.checked;
      if (q.violations && !p.violations) p.first_counterexample = q.first_counterexample;
      p.violations += q.violations;
    }
  }
};

template <class F>
std::vector<Tally> parallel(std::size_t tasks, unsigned threads, F&& work) {
  std::vector<Tally> out(tasks);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next++) < tasks;) work(i, out[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  return out;
}

std::size_t factorial(unsigned n) {
  std::size_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

NaiveEnv to_naive(const Environment& rho) {
  NaiveEnv out;
  for (auto [x, e] : rho.bindings()) out[x] = e;
  return out;
}

// All properties about one ordered pair (C, D).
void pair_properties(const Structure& c, const Structure& d, Tally& t) {
  auto repro = [&](const std::string& what) { return [&, what] { return repro_pair(c, d, what); }; };
  std::map<BisimKind, Verdict> v;
  for (BisimKind k : kKinds) {
    try {
      v[k] = check_equivalence(c, d, k);
    } catch (const InternalVerificationFailed& e) {
      t.record("distinguishing formulas verify", false, repro(std::string(to_string(k)) + ": " + e.what()));
      Options o;
      o.want_formula = false;
      v[k] = check_equivalence(c, d, k, o);
    }
  }
  auto eq = [&](BisimKind k) { return v[k].equivalent; };

  // Hierarchy of the equivalences.
  bool hier = (!eq(BisimKind::HH) || (eq(BisimKind::H) && eq(BisimKind::HWH))) &&
              (!(eq(BisimKind::H) || eq(BisimKind::HWH)) || eq(BisimKind::WH)) &&
              (!eq(BisimKind::WH) || eq(BisimKind::IB));
  t.record("hierarchy inclusions", hier, repro("hierarchy violated"));

  // Symmetry.
  for (BisimKind k : kKinds) {
    Options o;
    o.want_formula = false;
    bool sym = check_equivalence(d, c, k, o).equivalent == eq(k);
    t.record("symmetry", sym, repro(std::string("asymmetric verdict for ") + to_string(k)));
  }

  // Witnesses and distinguishing formulas.
  for (BisimKind k : kKinds) {
    const Verdict& vk = v[k];
    if (vk.equivalent) {
      auto why = validate_witness(c, d, k, vk.witness);
      t.record("witness relations satisfy their clauses", !why,
               repro(std::string(to_string(k)) + " witness: " + why.value_or("")));
      continue;
    }
    const bool has = vk.counterexample.has_value();
    bool ok = has;
    std::string text;
    if (has) {
      const Counterexample& cx = *vk.counterexample;
      text = render_formula(cx.formula);
      const Structure& yes = cx.side == Side::Lhs ? c : d;
      const Structure& no = cx.side == Side::Lhs ? d : c;
      ok = naive_satisfies(yes, {}, {}, cx.formula) && !naive_satisfies(no, {}, {}, cx.formula) &&
           in_sublogic(cx.formula, sublogic_of(k));
      // Re-parse the rendered text and check again.
      Formula back = parse_formula(text, union_alphabet(c, d));
      ok = ok && satisfies(yes, back) && !satisfies(no, back);
    }
    t.record("distinguishing formulas verify", ok,
             repro(std::string(to_string(k)) + " distinguisher " + text));
    if (k == BisimKind::HH && has) {
      bool depth = vk.counterexample->depth <= *vk.s + vk.c;
      t.record("hh distinguisher depth <= s + c", depth,
               repro("depth " + std::to_string(vk.counterexample->depth) + " > s + c = " +
                     std::to_string(*vk.s + vk.c) + " for " + text));
    }
  }

  // Size bound on the game state space.
  const Verdict& hh = v[BisimKind::HH];
  bool bound = *hh.s <= c.num_configs() * d.num_configs() * factorial(hh.c);
  t.record("s <= |C|.|D|.c!", bound, repro("s = " + std::to_string(*hh.s)));

  // Game verdicts.
  GameSolution g = solve_game(c, d);
  t.record("hh fixed point = safety game", g.defender_wins == eq(BisimKind::HH), repro("game mismatch"));
  bool literal = naive_game_hh(c, d);
  t.record("hh fixed point = literal game search", literal == eq(BisimKind::HH), repro("literal game mismatch"));
  if (!g.defender_wins)
    t.record("game losing trace within s + c", g.losing_trace.size() <= *hh.s + hh.c, repro("long trace"));

  // Characteristic formulas of C checked on D.
  const auto act = union_alphabet(c, d);
  FormulaDag wh = char_formula_wh(c, act);
  t.record("chi_wh(C) holds on D iff wh", satisfies(d, wh.root) == eq(BisimKind::WH), repro("chi_wh mismatch"));
  FormulaDag h = char_formula_h(c, act);
  t.record("chi_h(C) holds on D iff h", satisfies(d, h.root) == eq(BisimKind::H), repro("chi_h mismatch"));
  FormulaDag chh = char_formula_hh(c, static_cast<unsigned>(*hh.s), act);
  t.record("chi_hh(C, s) holds on D iff hh", satisfies(d, chh.root) == eq(BisimKind::HH),
           repro("chi_hh mismatch at depth " + std::to_string(*hh.s)));
  const unsigned cc = c.max_config_size();
  // With c = 0 the box conjunct alone has depth 1, above 2c.
  bool depths = (cc == 0 || (wh.depth <= 2 * cc && h.depth <= 2 * cc)) && chh.depth <= *hh.s + cc;
  t.record("characteristic formula depth bounds", depths,
           repro("depths wh " + std::to_string(wh.depth) + ", h " + std::to_string(h.depth) + ", hh " +
                 std::to_string(chh.depth) + " with c = " + std::to_string(cc)));
}

// Properties of a single structure.
void self_properties(const Structure& s, Tally& t) {
  auto repro = [&](const std::string& what) { return [&, what] { return repro_one(s, what); }; };
  for (BisimKind k : kKinds) {
    Options o;
    o.want_formula = false;
    t.record("reflexivity", check_equivalence(s, s, k, o).equivalent,
             repro(std::string("not ") + to_string(k) + "-equivalent to itself"));
  }
  const auto act = s.alphabet();
  t.record("self satisfaction", satisfies(s, char_formula_wh(s, act).root), repro("chi_wh"));
  t.record("self satisfaction", satisfies(s, char_formula_h(s, act).root), repro("chi_h"));
  const std::size_t n = *count_iso_triples(s, s);
  for (std::size_t depth = 0; depth <= n; ++depth)
    t.record("self satisfaction", satisfies(s, char_formula_hh(s, static_cast<unsigned>(depth), act).root),
             repro("chi_hh at depth " + std::to_string(depth)));
}

// The examples whose verdicts are stated alongside the definitions.
struct Example {
  const char* structure;  // term; empty means Example 1 below
  const char* config;
  const char* env;
  const char* formula;
};

Structure example1() {
  return validate_stable({{"e1", Label("a")}, {"e2", Label("a")}, {"e3", Label("a")}},
                         {{}, {0}, {2}, {0, 1}, {0, 2}, {0, 1, 2}});
}

const Example kExamples[] = {
    {"", "", "", "<x:a><y:a><-x>tt"},
    {"", "", "", "<x:a><y:a>~<-x>tt"},
    {"", "e1 e2", "x=e1,y=e2", "(x:a)<-x><-y>tt"},
    {"", "e1 e3", "x=e1", "<-x>tt"},
    {"", "e1 e2", "x=e1,y=e2", "<-y>tt"},
    {"a+a", "", "", "<x:a><-x><y:a>~<-x>tt"},
    {"a", "", "", "<x:a><-x><y:a>~<-x>tt"},
    {"a|a", "", "", "<x:a><y:a><-x>tt"},
    {"a.a", "", "", "<x:a><y:a><-x>tt"},
    {"a|b", "", "", "<a><b><-a>tt"},
    {"a.b+b.a", "", "", "<a><b><-a>tt"},
    {"a|b", "", "", "<a><b>~<-a>tt"},
    {"a.b+b.a", "", "", "<a><b>~<-a>tt"},
    {"(a.a)|a", "", "", "<{a,a}>tt"},
    {"a.a", "", "", "<{a,a}>tt"},
    {"a|a", "e1 e2", "", "<-{a,a}>tt"},
};

} // namespace

void check_theta_lemmas(const std::vector<Structure>& universe, PropertyResult& plain, PropertyResult& open) {
  // Reverse-only formulas only look below the current configuration, so
  // configurations are grouped by the labelled family of their subsets.
  struct Instance {
    const Structure* s;
    Configuration x;
  };
  std::map<std::pair<std::vector<std::string>, std::vector<std::uint64_t>>, Instance> classes;
  for (const Structure& s : universe)
    for (Configuration x : s.configs()) {
      const std::vector<EventId> ev = x.members();
      std::vector<unsigned> p(ev.size());
      std::iota(p.begin(), p.end(), 0U);
      std::pair<std::vector<std::string>, std::vector<std::uint64_t>> best;
      bool first = true;
      do {
        std::vector<std::string> labels(ev.size());
        for (std::size_t i = 0; i < ev.size(); ++i) labels[p[i]] = s.label(ev[i]).name();
        std::vector<std::uint64_t> fam;
        for (Configuration z : s.configs()) {
          if (!z.subset_of(x)) continue;
          std::uint64_t m = 0;
          for (std::size_t i = 0; i < ev.size(); ++i)
            if (z.contains(ev[i])) m |= std::uint64_t{1} << p[i];
          fam.push_back(m);
        }
        std::sort(fam.begin(), fam.end());
        auto key = std::make_pair(labels, fam);
        if (first || key < best) best = key;
        first = false;
      } while (std::next_permutation(p.begin(), p.end()));
      classes.emplace(best, Instance{&s, x});
    }

  std::vector<Instance> reps;
  for (auto& [k, inst] : classes) reps.push_back(inst);
  for (const Instance& a : reps) {
    Formula th = theta_closed(*a.s, a.x);
    Formula th_open = theta_open(*a.s, a.x);
    std::vector<Ident> ids = free_identifiers(th_open);
    LabeledPoset pa = causality_poset(*a.s, a.x);
    for (const Instance& b : reps) {
      if (b.x.size() != a.x.size()) continue;
      const bool iso = isomorphic(pa, causality_poset(*b.s, b.x));
      auto what = [&](const char* which) {
        return std::string(which) + " for X = " + a.s->render_config(a.x) + " in\n" +
               render_structure_file(*a.s) + "Y = " + b.s->render_config(b.x) + " in\n" +
               render_structure_file(*b.s);
      };
      ++plain.checked;
      if (satisfies(*b.s, b.x, {}, th) != iso && plain.violations++ == 0)
        plain.first_counterexample = what("theta");

      // Every label-respecting environment from the identifiers into Y.
      std::vector<std::vector<EventId>> ys(ids.size());
      for (std::size_t i = 0; i < ids.size(); ++i)
        a.x.for_each([&](EventId e) {
          if (event_ident(e) != ids[i]) return;
          b.x.for_each([&](EventId d) {
            if (b.s->label(d) == a.s->label(e)) ys[i].push_back(d);
          });
        });
      bool more = std::none_of(ys.begin(), ys.end(), [](const auto& v) { return v.empty(); });
      bool found = false;
      std::vector<std::size_t> pick(ids.size(), 0);
      Evaluator ev(*b.s);
      while (more) {
        Environment rho;
        for (std::size_t i = 0; i < ids.size(); ++i) rho.bind(ids[i], ys[i][pick[i]]);
        if (ev.satisfies(b.x, rho, th_open)) {
          found = true;
          break;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == ys[i].size()) pick[i++] = 0;
        more = i < pick.size();
      }
      ++open.checked;
      if (found != iso && open.violations++ == 0) open.first_counterexample = what("theta'");
    }
  }
}

void check_step_operators(const std::vector<Structure>& universe, unsigned max_step, PropertyResult& out) {
  for (const Structure& s : universe) {
    Evaluator ev(s);
    const std::vector<Label>& labels = s.alphabet();
    // Multisets over the alphabet of size 1..max_step.
    std::vector<std::vector<Label>> steps;
    std::function<void(std::vector<Label>&, std::size_t)> gen = [&](std::vector<Label>& cur, std::size_t from) {
      if (!cur.empty()) steps.push_back(cur);
      if (cur.size() == max_step) return;
      for (std::size_t i = from; i < labels.size(); ++i) {
        cur.push_back(labels[i]);
        gen(cur, i);
        cur.pop_back();
      }
    };
    std::vector<Label> cur;
    gen(cur, 0);

    for (std::size_t xi = 0; xi < s.num_configs(); ++xi) {
      const Configuration x = s.config(xi);
      for (const auto& a : steps) {
        const auto fwd = step_transitions(s, x, a);
        bool back = false;
        for (Configuration w : s.configs())
          if (w.subset_of(x)) {
            const auto ts = step_transitions(s, w, a);
            back = back || std::find(ts.begin(), ts.end(), x) != ts.end();
          }
        auto fail = [&](const std::string& f) {
          if (out.violations++ == 0)
            out.first_counterexample = repro_one(s, f + " at " + s.render_config(x));
        };
        ++out.checked;
        if (ev.satisfies(x, {}, step(a, tt())) != !fwd.empty()) fail(render_formula(step(a, tt())));
        ++out.checked;
        if (ev.satisfies(x, {}, rev_step(a, tt())) != back) fail(render_formula(rev_step(a, tt())));
        for (Label b : labels) {
          bool expect = false;
          for (Configuration y : fwd)
            for (const auto& m : s.forward(s.require(y))) expect = expect || s.label(m.event) == b;
          Formula f = step(a, label_diamond(b, tt()));
          ++out.checked;
          if (ev.satisfies(x, {}, f) != expect) fail(render_formula(f));
        }
      }
    }
  }
}

CrossReport cross_validate(const CrossOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  CrossReport rep;
  rep.budget = opt.budget;
  const unsigned threads =
      opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());

  const std::vector<Structure> universe = enumerate_structures(opt.budget);
  rep.structures = universe.size();

  Tally total;
  {
    PropertyResult& p = total.props["enumerated structures re-validate"];
    p.name = "enumerated structures re-validate";
    for (const Structure& s : universe) {
      ++p.checked;
      std::vector<Configuration> fam = s.configs();
      try {
        validate_stable(s.events(), fam);
      } catch (const InvalidStructure& e) {
        if (p.violations++ == 0) p.first_counterexample = repro_one(s, e.what());
      }
    }
  }

  // Pairs: the enumerated universe plus the example pairs in both orders.
  std::vector<std::pair<const Structure*, const Structure*>> pairs;
  for (const Structure& c : universe)
    for (const Structure& d : universe) pairs.emplace_back(&c, &d);
  std::vector<NamedPair> named = example_pairs();
  named.insert(named.end(), opt.named.begin(), opt.named.end());
  for (const NamedPair& p : named) {
    pairs.emplace_back(&p.lhs, &p.rhs);
    pairs.emplace_back(&p.rhs, &p.lhs);
  }
  rep.pairs = pairs.size();

  for (const Tally& t : parallel(pairs.size(), threads, [&](std::size_t i, Tally& t) {
         pair_properties(*pairs[i].first, *pairs[i].second, t);
       }))
    total.merge(t);
  for (const Tally& t : parallel(universe.size(), threads, [&](std::size_t i, Tally& t) {
         self_properties(universe[i], t);
       }))
    total.merge(t);

  for (const NamedPair& p : named) {
    PairVerdicts pv{p.name, {}};
    Options o;
    o.want_formula = false;
    for (BisimKind k : kKinds) pv.equivalent[k] = check_equivalence(p.lhs, p.rhs, k, o).equivalent;
    rep.named.push_back(std::move(pv));
  }

  // Theta lemmas.
  {
    EnumBudget b = opt.budget;
    b.max_events = std::max(opt.theta_events, b.max_events);
    const std::vector<Structure> u = b.max_events == opt.budget.max_events ? universe : enumerate_structures(b);
    PropertyResult plain;
    plain.name = "theta_X holds exactly on isomorphic configurations";
    PropertyResult open;
    open.name = "theta'_X satisfiable exactly on isomorphic configurations";
    check_theta_lemmas(u, plain, open);
    total.props[plain.name] = plain;
    total.props[open.name] = open;
  }

  // Evaluator agreement: examples, then random cases.
  {
    PropertyResult p;
    p.name = "memoised and naive evaluators agree on the examples";
    const Structure ex1 = example1();
    for (const Example& e : kExamples) {
      Structure s = *e.structure ? parse_term(e.structure) : ex1;
      Configuration x;
      std::istringstream names(e.config);
      for (std::string n; names >> n;) x.insert(*s.find_event(n));
      Environment rho = parse_environment(s, e.env);
      Formula f = parse_formula(e.formula, s.alphabet());
      ++p.checked;
      if (satisfies(s, x, rho, f) != naive_satisfies(s, x, to_naive(rho), f) && p.violations++ == 0)
        p.first_counterexample = repro_one(s, std::string(e.formula) + " at " + s.render_config(x));
    }
    total.props[p.name] = p;
  }
  {
    PropertyResult p;
    p.name = "memoised and naive evaluators agree on random cases";
    std::mt19937 rng(opt.seed);
    const std::vector<Ident> ids{Ident("x"), Ident("y")};
    for (std::size_t i = 0; i < opt.random_cases && !universe.empty(); ++i) {
      const Structure& s = universe[rng() % universe.size()];
      const Configuration x = s.config(rng() % s.num_configs());
      std::vector<Ident> free;
      Environment rho;
      if (!x.empty()) {
        const auto evs = x.members();
        for (Ident id : ids) {
          free.push_back(id);
          rho.bind(id, evs[rng() % evs.size()]);
        }
      }
      Formula f = random_formula(rng, s.alphabet(), free, 1 + static_cast<unsigned>(rng() % 4));
      ++p.checked;
      if (satisfies(s, x, rho, f) != naive_satisfies(s, x, to_naive(rho), f) && p.violations++ == 0)
        p.first_counterexample =
            repro_one(s, render_formula(f) + " at " + s.render_config(x) + " with " + rho.render(s));
    }
    total.props[p.name] = p;
  }

  // Reverse-only formulas cannot tell isomorphic configurations apart.
  {
    PropertyResult p;
    p.name = "reverse-only formulas are invariant under isomorphism";
    std::mt19937 rng(opt.seed + 1);
    std::vector<std::pair<const Structure*, Configuration>> inst;
    for (const Structure& s : universe)
      for (Configuration x : s.configs()) inst.emplace_back(&s, x);
    std::vector<Formula> ro;
    while (ro.size() < 200) {
      Formula f = random_formula(rng, {Label("a"), Label("b")}, {}, 4);
      if (f.closed() && in_sublogic(f, Sublogic::EIL_ro)) ro.push_back(f);
      else {
        // Build one directly from declarations and reverse steps.
        std::vector<Ident> xs;
        Formula g = tt();
        const unsigned n = 1 + rng() % 3;
        for (unsigned k = 0; k < n; ++k) xs.push_back(Ident("r" + std::to_string(k)));
        for (unsigned k = 0; k < n; ++k) {
          Formula r = reverse(xs[rng() % n], tt());
          g = rng() % 2 ? conj({g, r}) : conj({g, neg(r)});
        }
        for (unsigned k = n; k-- > 0;) g = declare(xs[k], rng() % 2 ? Label("a") : Label("b"), g);
        if (g.closed() && in_sublogic(g, Sublogic::EIL_ro)) ro.push_back(g);
      }
    }
    // Each configuration is compared with the first isomorphic one seen.
    std::vector<std::pair<const Structure*, Configuration>> reps;
    for (auto [s2, x2] : inst) {
      const LabeledPoset p2 = causality_poset(*s2, x2);
      auto it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) {
        return r.second.size() == x2.size() && isomorphic(causality_poset(*r.first, r.second), p2);
      });
      if (it == reps.end()) {
        reps.emplace_back(s2, x2);
        continue;
      }
      auto [s1, x1] = *it;
      for (const Formula& f : ro) {
        ++p.checked;
        if (satisfies(*s1, x1, {}, f) != satisfies(*s2, x2, {}, f) && p.violations++ == 0)
          p.first_counterexample = render_formula(f) + " separates " + s1->render_config(x1) + " and " +
                                   s2->render_config(x2) + "\n" + render_structure_file(*s1) +
                                   render_structure_file(*s2);
      }
    }
    total.props[p.name] = p;
  }

  // Step operators.
  {
    EnumBudget b = opt.budget;
    b.max_events = opt.step_events;
    const std::vector<Structure> u = b.max_events == opt.budget.max_events ? universe : enumerate_structures(b);
    std::vector<PropertyResult> parts(u.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
      for (std::size_t i; (i = next++) < u.size();) check_step_operators({u[i]}, 3, parts[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    PropertyResult p;
    p.name = "step operators agree with the step transition relation";
    for (const PropertyResult& q : parts) {
      p.checked += q.checked;
      if (q.violations && !p.violations) p.first_counterexample = q.first_counterexample;
      p.violations += q.violations;
    }
    total.props[p.name] = p;
  }

  for (auto& [name, p] : total.props) rep.properties.push_back(p);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace truecon
