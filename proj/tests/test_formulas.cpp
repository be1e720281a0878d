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

#include <doctest.h>

#include "support.hpp"
#include "truecon/charform.hpp"
#include "truecon/distinguish.hpp"
#include "truecon/examples.hpp"

using namespace testing;

namespace {

Configuration top(const Structure& s) { return s.configs().back(); }

// Every environment sending the identifiers of f injectively or not into y.
bool some_env_satisfies(const Structure& s, Configuration y, const std::vector<Ident>& ids,
                        const Formula& f) {
  std::vector<EventId> evs = y.members();
  if (evs.empty()) return satisfies(s, y, {}, f);
  std::vector<std::size_t> pick(ids.size(), 0);
  for (;;) {
    Environment rho;
    for (std::size_t i = 0; i < ids.size(); ++i) rho.bind(ids[i], evs[pick[i]]);
    if (satisfies(s, y, rho, f)) return true;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == evs.size()) pick[i++] = 0;
    if (i == pick.size()) return false;
  }
}

} // namespace

TEST_CASE("topological order breaks ties by id") {
  Structure s = parse_term("b.a | c");  // e1:b < e2:a, e3:c
  CHECK(topological_order(s, top(s)) == std::vector<EventId>{0, 1, 2});
  Structure t = parse_term("c | b.a");
  CHECK(topological_order(t, top(t)) == std::vector<EventId>{0, 1, 2});
}

TEST_CASE("theta of the empty configuration") {
  Structure s = parse_term("a");
  CHECK(theta_closed(s, {}).op() == Op::Tt);
  CHECK(theta_open(s, {}).op() == Op::Tt);
  CHECK(theta_convention(s, {}).empty());
}

TEST_CASE("theta' of a singleton") {
  Structure s = parse_term("a");
  CHECK(render_formula(theta_open(s, top(s))) == "<-z1>tt");
}

TEST_CASE("theta of a chain") {
  Structure aa = parse_term("a.a"), par = parse_term("a|a");
  Formula th = theta_closed(aa, top(aa));
  CHECK(th.closed());
  CHECK(in_sublogic(th, Sublogic::EIL_ro));
  CHECK(satisfies(aa, top(aa), {}, th));
  CHECK_FALSE(satisfies(par, top(par), {}, th));

  Formula open = theta_open(aa, top(aa));
  CHECK(in_sublogic(open, Sublogic::EIL_dfro));
  CHECK(free_identifiers(open) == std::vector<Ident>{Ident("z1"), Ident("z2")});
  CHECK(satisfies(aa, top(aa), theta_convention(aa, top(aa)), open));
  CHECK(render_formula(open) == "<-z2><-z1>tt & <-z2>tt & ~<-z1>tt");
  CHECK_FALSE(some_env_satisfies(par, top(par), free_identifiers(open), open));
}

TEST_CASE("theta of a concurrent pair") {
  Structure ab = parse_term("a|b"), seq = parse_term("a.b");
  Formula th = theta_closed(ab, top(ab));
  CHECK(satisfies(ab, top(ab), {}, th));
  CHECK_FALSE(satisfies(seq, top(seq), {}, th));
}

TEST_CASE("characteristic formulas of small terms") {
  Structure a = parse_term("a"), aa = parse_term("a+a"), seq = parse_term("a.a");
  auto act = union_alphabet(a, aa);
  FormulaDag wh = char_formula_wh(a, act);
  CHECK(satisfies(aa, wh.root));
  CHECK_FALSE(satisfies(seq, wh.root));
  CHECK(in_sublogic(wh.root, Sublogic::EIL_wh));

  FormulaDag h = char_formula_h(a, act);
  CHECK(in_sublogic(h.root, Sublogic::EIL_h));
  CHECK(satisfies(aa, h.root));

  CHECK(char_formula_hh(a, 0, act).depth == 0);
  CHECK(char_formula_hh(seq, 0, act).root.op() == Op::Tt);

  // The wh formula of a re-parses to the same formula.
  Formula back = parse_formula(render_formula(wh.root), act);
  CHECK(alpha_equivalent(back, wh.root));
  CHECK(satisfies(aa, back));
  CHECK_FALSE(satisfies(seq, back));
}

TEST_CASE("chi_hh separates a|b from a.b+b.a") {
  Structure c = parse_term("a|b"), d = parse_term("a.b+b.a");
  auto s = count_iso_triples(c, d);
  REQUIRE(s.has_value());
  FormulaDag chi = char_formula_hh(c, static_cast<unsigned>(*s), union_alphabet(c, d));
  CHECK(satisfies(c, chi.root));
  CHECK_FALSE(satisfies(d, chi.root));
  CHECK(chi.depth <= *s + c.max_config_size());
}

TEST_CASE("characteristic formulas on the figure pairs") {
  Structure e = examples::fig3_e(), f = examples::fig3_f();
  auto act = union_alphabet(e, f);
  CHECK(satisfies(f, char_formula_h(e, act).root));
  CHECK(satisfies(f, char_formula_wh(e, act).root));
  auto s = count_iso_triples(e, f);
  REQUIRE(s.has_value());
  FormulaDag chi = char_formula_hh(e, static_cast<unsigned>(*s), act);
  CHECK(satisfies(e, chi.root));
  CHECK_FALSE(satisfies(f, chi.root));
  CHECK(chi.depth <= *s + e.max_config_size());

  Structure e2 = examples::fig2_e(), f2 = examples::fig2_f();
  act = union_alphabet(e2, f2);
  CHECK_FALSE(satisfies(f2, char_formula_h(e2, act).root));
  CHECK(satisfies(f2, char_formula_wh(e2, act).root));
}

TEST_CASE("dag guard") {
  Structure s = examples::fig3_e();
  CHECK_THROWS_AS(char_formula_hh(s, 6, s.alphabet(), 50), DagTooLarge);
}

namespace {

void check_distinguisher(const Structure& c, const Structure& d, BisimKind k) {
  auto cx = distinguishing_formula(c, d, k);
  REQUIRE(cx.has_value());
  const Structure& yes = cx->side == Side::Lhs ? c : d;
  const Structure& no = cx->side == Side::Lhs ? d : c;
  CHECK(satisfies(yes, cx->formula));
  CHECK_FALSE(satisfies(no, cx->formula));
  CHECK(in_sublogic(cx->formula, sublogic_of(k)));
  // The rendered text is accepted back by the parser with the same verdicts.
  auto act = union_alphabet(c, d);
  Formula back = parse_formula(render_formula(cx->formula), act);
  CHECK(satisfies(yes, back));
  CHECK_FALSE(satisfies(no, back));
}

} // namespace

TEST_CASE("distinguishing formulas") {
  Structure ab = parse_term("a|b"), inter = parse_term("a.b+b.a");
  check_distinguisher(ab, inter, BisimKind::HH);
  check_distinguisher(ab, inter, BisimKind::H);
  check_distinguisher(ab, inter, BisimKind::HWH);
  check_distinguisher(ab, inter, BisimKind::WH);
  check_distinguisher(inter, ab, BisimKind::WH);
  check_distinguisher(parse_term("a.(b+c)"), parse_term("a.b+a.c"), BisimKind::IB);

  check_distinguisher(examples::fig2_e(), examples::fig2_f(), BisimKind::H);
  check_distinguisher(examples::fig2_e(), examples::fig2_f(), BisimKind::HH);
  check_distinguisher(examples::fig3_e(), examples::fig3_f(), BisimKind::HH);
  Structure l = parse_term(examples::kAbsorptionLhs), r = parse_term(examples::kAbsorptionRhs);
  check_distinguisher(l, r, BisimKind::HWH);
  check_distinguisher(r, l, BisimKind::HWH);
  check_distinguisher(parse_term("a|a"), parse_term("a.a"), BisimKind::WH);
}

TEST_CASE("no distinguisher for equivalent pairs") {
  Structure c = examples::fig3_e();
  for (BisimKind k : {BisimKind::IB, BisimKind::WH, BisimKind::H, BisimKind::HWH, BisimKind::HH})
    CHECK_FALSE(distinguishing_formula(c, c, k).has_value());
  CHECK_FALSE(distinguishing_formula(parse_term("a"), parse_term("a+a"), BisimKind::HH).has_value());
}

TEST_CASE("intro pair distinguisher has small depth") {
  auto cx = distinguishing_formula(parse_term("a|b"), parse_term("a.b+b.a"), BisimKind::HH);
  REQUIRE(cx.has_value());
  CHECK(cx->depth <= 3);
}

TEST_CASE("published distinguishing formulas") {
  Structure e2 = examples::fig2_e(), f2 = examples::fig2_f();
  const char* phi = "[x:a][y:a](<z:b>~<-x>tt & <w:b>~<-y>tt)";
  CHECK(holds(e2, phi));
  CHECK_FALSE(holds(f2, phi));

  Structure e3 = examples::fig3_e(), f3 = examples::fig3_f();
  const char* hh = "<x:a><y:a>(~<-x>tt & <z:a><-y><w:a>~<-z>tt & <z':a><-y>~<w':a>~<-z'>tt)";
  CHECK(holds(e3, hh));
  CHECK_FALSE(holds(f3, hh));

  Structure l = parse_term(examples::kAbsorptionLhs), r = parse_term(examples::kAbsorptionRhs);
  const char* psi = "<x:a>([w:c]ff & <y:b><-x>[z:c]ff)";
  CHECK(holds(l, psi));
  CHECK_FALSE(holds(r, psi));
}

TEST_CASE("characteristic formulas of the inert structure exceed 2c") {
  // c = 0, yet the box conjunct over a nonempty alphabet has depth 1.
  Structure s = validate_stable({}, {Configuration{}});
  const std::vector<Label> act{Label("a")};
  CHECK(char_formula_wh(s, act).depth == 1);
  CHECK(char_formula_h(s, act).depth == 1);
  CHECK(char_formula_wh(s, {}).depth == 0);
  CHECK_FALSE(satisfies(parse_term("a"), char_formula_wh(s, act).root));
}
