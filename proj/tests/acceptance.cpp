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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "truecon/distinguish.hpp"
#include "truecon/eval.hpp"
#include "truecon/examples.hpp"
#include "truecon/frontend.hpp"
#include "truecon/harness.hpp"

using namespace truecon;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) why << "; ";
    ok = false;
    why << what;
  }
};

bool holds(const Structure& s, const std::string& f) { return satisfies(s, parse_formula(f, s.alphabet())); }

bool equivalent(const Structure& c, const Structure& d, BisimKind k) {
  Options o;
  o.want_formula = false;
  return check_equivalence(c, d, k, o).equivalent;
}

void verdicts(Check& c, const Structure& l, const Structure& r,
              std::initializer_list<std::pair<BisimKind, bool>> want) {
  for (auto [k, eq] : want)
    c.expect(equivalent(l, r, k) == eq, std::string(to_string(k)) + (eq ? " should hold" : " should fail"));
}

void c1(Check& c) {
  Structure l = parse_term("a|b"), r = parse_term("a.b+b.a");
  verdicts(c, l, r, {{BisimKind::IB, true}, {BisimKind::HH, false}});
  c.expect(holds(l, "<a><b><-a>tt") && !holds(r, "<a><b><-a>tt"), "<a><b><-a>tt");
  c.expect(!holds(l, "<a><b>~<-a>tt") && holds(r, "<a><b>~<-a>tt"), "<a><b>~<-a>tt");
}

void c2(Check& c) {
  const char* f = "<x:a><y:a><-x>tt";
  c.expect(holds(parse_term("a|a"), f), "a|a should satisfy");
  c.expect(!holds(parse_term("a.a"), f), "a.a should not satisfy");
}

void c3(Check& c) {
  Structure l = parse_term("a"), r = parse_term("a+a");
  verdicts(c, l, r, {{BisimKind::HH, true}});
  const char* f = "<x:a><-x><y:a>~<-x>tt";
  c.expect(!holds(l, f) && !holds(r, f), "formula should fail on both");
}

void c4(Check& c) {
  Structure s = validate_stable({{"e1", Label("a")}, {"e2", Label("a")}, {"e3", Label("a")}},
                                {{}, {0}, {2}, {0, 1}, {0, 2}, {0, 1, 2}});
  c.expect(holds(s, "<x:a><y:a><-x>tt"), "<x:a><y:a><-x>tt");
  c.expect(holds(s, "<x:a><y:a>~<-x>tt"), "<x:a><y:a>~<-x>tt");
  Environment rho = parse_environment(s, "x=e1,y=e2");
  c.expect(!satisfies(s, Configuration{0, 1}, rho, parse_formula("(x:a)<-x><-y>tt", s.alphabet())),
           "(x:a)<-x><-y>tt at {e1,e2}");
  c.expect(!holds(parse_term("a+a"), "<x:a><-x><y:a>~<-x>tt"), "a+a");
  c.expect(holds(parse_term("a|a"), "<x:a><y:a><-x>tt") && !holds(parse_term("a.a"), "<x:a><y:a><-x>tt"),
           "a|a versus a.a");
}

void c5(Check& c) {
  Structure e = examples::fig2_e(), f = examples::fig2_f();
  verdicts(c, e, f, {{BisimKind::WH, true}, {BisimKind::HWH, true}, {BisimKind::H, false}, {BisimKind::HH, false}});
  const char* phi = "[x:a][y:a](<z:b>~<-x>tt & <w:b>~<-y>tt)";
  c.expect(holds(e, phi) && !holds(f, phi), "phi");
}

void c6(Check& c) {
  Structure l = parse_term(examples::kAbsorptionLhs), r = parse_term(examples::kAbsorptionRhs);
  verdicts(c, l, r, {{BisimKind::H, true}, {BisimKind::WH, true}, {BisimKind::HWH, false}});
  const char* psi = "<x:a>([w:c]ff & <y:b><-x>[z:c]ff)";
  c.expect(holds(l, psi) && !holds(r, psi), "psi");
}

void c7(Check& c) {
  Structure e = examples::fig3_e(), f = examples::fig3_f();
  verdicts(c, e, f, {{BisimKind::H, true}, {BisimKind::HWH, true}, {BisimKind::HH, false}});
  const char* hh = "<x:a><y:a>(~<-x>tt & <z:a><-y><w:a>~<-z>tt & <z':a><-y>~<w':a>~<-z'>tt)";
  c.expect(holds(e, hh) && !holds(f, hh), "hh formula");
}

void require(Check& c, const CrossReport& r, const char* name) {
  const PropertyResult* p = r.find(name);
  if (!p) {
    c.expect(false, std::string("missing property ") + name);
    return;
  }
  c.expect(p->checked > 0 && p->passed(),
           std::string(name) + ": " + std::to_string(p->violations) + " of " + std::to_string(p->checked) +
               (p->first_counterexample ? "\n" + *p->first_counterexample : std::string()));
}

} // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char* title, const std::function<void(Check&)>& body) {
    Check c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    if (!c.ok) ++failures;
    std::cout << (c.ok ? "PASS " : "FAIL ") << n << " " << title;
    if (!c.ok) std::cout << ": " << c.why.str();
    std::cout << std::endl;
  };

  report(1, "intro pair a|b vs a.b+b.a", c1);
  report(2, "autoconcurrency pair a|a vs a.a", c2);
  report(3, "idempotence pair a vs a+a", c3);
  report(4, "worked example satisfaction battery", c4);
  report(5, "figure 2 pair", c5);
  report(6, "absorption law pair", c6);
  report(7, "figure 3 pair", c7);

  // One harness run backs criteria 8 to 10.
  CrossReport rep;
  std::string harness_error;
  try {
    CrossOptions o;
    o.budget = {3, 2, 1'000'000};
    o.random_cases = 10'000;
    o.step_events = 5;
    o.theta_events = 3;
    rep = cross_validate(o);
  } catch (const std::exception& e) {
    harness_error = e.what();
  }
  auto harness = [&](int n, const char* title, std::initializer_list<const char*> props) {
    report(n, title, [&](Check& c) {
      c.expect(harness_error.empty(), "harness: " + harness_error);
      for (const char* p : props) require(c, rep, p);
    });
  };
  harness(8, "theorem suite (<= 3 events, <= 2 labels)",
          {"theta_X holds exactly on isomorphic configurations",
           "theta'_X satisfiable exactly on isomorphic configurations", "chi_wh(C) holds on D iff wh",
           "chi_h(C) holds on D iff h", "chi_hh(C, s) holds on D iff hh", "hh fixed point = safety game",
           "hh fixed point = literal game search", "hierarchy inclusions", "distinguishing formulas verify",
           "hh distinguisher depth <= s + c", "s <= |C|.|D|.c!"});
  report(9, "memoised and naive evaluators agree", [&](Check& c) {
    c.expect(harness_error.empty(), "harness: " + harness_error);
    require(c, rep, "memoised and naive evaluators agree on random cases");
    require(c, rep, "memoised and naive evaluators agree on the examples");
    const PropertyResult* p = rep.find("memoised and naive evaluators agree on random cases");
    c.expect(p && p->checked >= 10'000, "fewer than 10^4 random cases");
  });
  report(10, "step operators (<= 5 events, |A| <= 3)", [&](Check& c) {
    c.expect(harness_error.empty(), "harness: " + harness_error);
    require(c, rep, "step operators agree with the step transition relation");
  });
  if (harness_error.empty())
    std::cout << "harness: " << rep.structures << " structures, " << rep.pairs << " pairs, " << rep.seconds
              << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
