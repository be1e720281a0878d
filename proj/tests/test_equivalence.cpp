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
#include "truecon/equivalence.hpp"
#include "truecon/examples.hpp"

using namespace testing;

namespace {

bool equiv(const Structure& c, const Structure& d, BisimKind k) {
  Options o;
  o.want_formula = false;
  return check_equivalence(c, d, k, o).equivalent;
}

constexpr BisimKind kAll[] = {BisimKind::IB, BisimKind::WH, BisimKind::H, BisimKind::HWH, BisimKind::HH};

} // namespace

TEST_CASE("kind names round trip") {
  for (BisimKind k : kAll) CHECK(parse_kind(to_string(k)) == k);
  CHECK_FALSE(parse_kind("hp").has_value());
}

TEST_CASE("state space of a against itself") {
  Structure a = parse_term("a");
  StateSpace sp = build_state_space(a, a);
  CHECK(sp.size() == 2);
  CHECK(sp.c() == 1);
  CHECK(count_iso_triples(a, a) == std::optional<std::size_t>(2));
}

TEST_CASE("state space of a|a against a.a") {
  // Sizes 0, 1, 2: one empty triple, 2x1 singletons, no isomorphism at the top.
  Structure c = parse_term("a|a"), d = parse_term("a.a");
  StateSpace sp = build_state_space(c, d);
  CHECK(sp.size() == 3);
  CHECK(count_iso_triples(c, d) == std::optional<std::size_t>(3));
  CHECK(count_iso_triples(c, c) == std::optional<std::size_t>(1 + 4 + 2));
}

TEST_CASE("state cap") {
  Structure c = parse_term("a|a|a");
  CHECK_THROWS_AS(build_state_space(c, c, 5), StateSpaceTooLarge);
  CHECK_FALSE(count_iso_triples(c, c, 5).has_value());
}

TEST_CASE("interleaving vs true concurrency") {
  Structure c = parse_term("a|b"), d = parse_term("a.b+b.a");
  CHECK(equiv(c, d, BisimKind::IB));
  CHECK_FALSE(equiv(c, d, BisimKind::WH));
  CHECK_FALSE(equiv(c, d, BisimKind::HH));
}

TEST_CASE("a and a+a") {
  Structure c = parse_term("a"), d = parse_term("a+a");
  for (BisimKind k : kAll) CHECK(equiv(c, d, k));
}

TEST_CASE("fig 2") {
  Structure e = examples::fig2_e(), f = examples::fig2_f();
  CHECK(e.num_events() == 8);
  CHECK(e.num_configs() == 18);
  CHECK(f.num_configs() == 17);
  CHECK(equiv(e, f, BisimKind::IB));
  CHECK(equiv(e, f, BisimKind::WH));
  CHECK(equiv(e, f, BisimKind::HWH));
  CHECK_FALSE(equiv(e, f, BisimKind::H));
  CHECK_FALSE(equiv(e, f, BisimKind::HH));
}

TEST_CASE("absorption") {
  Structure l = parse_term(examples::kAbsorptionLhs), r = parse_term(examples::kAbsorptionRhs);
  CHECK(equiv(l, r, BisimKind::WH));
  CHECK(equiv(l, r, BisimKind::H));
  CHECK_FALSE(equiv(l, r, BisimKind::HWH));
  CHECK_FALSE(equiv(l, r, BisimKind::HH));
}

TEST_CASE("fig 3") {
  Structure e = examples::fig3_e(), f = examples::fig3_f();
  CHECK(equiv(e, f, BisimKind::H));
  CHECK(equiv(e, f, BisimKind::HWH));
  CHECK_FALSE(equiv(e, f, BisimKind::HH));
}

TEST_CASE("symmetry and reflexivity") {
  std::vector<Structure> all = {parse_term("a|b"), parse_term("a.b+b.a"), parse_term("a.(b|c)"),
                                parse_term("a|a"), parse_term("a.a"), examples::fig3_e(),
                                parse_term(examples::kAbsorptionRhs)};
  for (const Structure& c : all) {
    for (BisimKind k : kAll) CHECK(equiv(c, c, k));
    for (const Structure& d : all)
      for (BisimKind k : kAll) CHECK(equiv(c, d, k) == equiv(d, c, k));
  }
}

TEST_CASE("witness relations pass the clause checker") {
  Structure e = examples::fig3_e(), f = examples::fig3_f();
  for (BisimKind k : {BisimKind::IB, BisimKind::WH, BisimKind::H, BisimKind::HWH}) {
    Verdict v = check_equivalence(e, f, k);
    REQUIRE(v.equivalent);
    CHECK(validate_witness(e, f, k, v.witness) == std::nullopt);
  }
  Verdict v = check_equivalence(parse_term("a"), parse_term("a+a"), BisimKind::HH);
  CHECK(validate_witness(parse_term("a"), parse_term("a+a"), BisimKind::HH, v.witness) == std::nullopt);
}

TEST_CASE("clause checker rejects a broken relation") {
  Structure c = parse_term("a|b"), d = parse_term("a.b+b.a");
  // Every triple of the HH state space is not a bisimulation here.
  StateSpace sp = build_state_space(c, d);
  CHECK(validate_witness(c, d, BisimKind::HH, sp.states()).has_value());
  CHECK(validate_witness(c, d, BisimKind::H, {}).has_value());
}

TEST_CASE("safety game") {
  Structure c = parse_term("a|b"), d = parse_term("a.b+b.a");
  GameSolution g = solve_game(c, d);
  CHECK_FALSE(g.defender_wins);
  REQUIRE_FALSE(g.losing_trace.empty());
  CHECK(g.losing_trace.front() == g.space.initial());

  GameSolution same = solve_game(c, c);
  CHECK(same.defender_wins);
  // Every attacker move from a winning position has an answer.
  for (auto& [t, answers] : same.strategy) {
    std::size_t moves = c.forward(same.space.state(t).x).size() * 2 +
                        c.reverse(same.space.state(t).x).size() * 2;
    CHECK(answers.size() == moves);
  }
}

TEST_CASE("fig 3 game trace is bounded") {
  Structure e = examples::fig3_e(), f = examples::fig3_f();
  GameSolution g = solve_game(e, f);
  CHECK_FALSE(g.defender_wins);
  CHECK(g.losing_trace.size() <= g.space.size() + g.space.c());
}

TEST_CASE("rounds and s bound") {
  Structure e = examples::fig2_e(), f = examples::fig2_f();
  Verdict v = check_equivalence(e, f, BisimKind::HH);
  REQUIRE(v.s.has_value());
  CHECK(v.rounds >= 1);
  CHECK(v.rounds <= *v.s);
  std::size_t fact = 1;
  for (unsigned i = 2; i <= v.c; ++i) fact *= i;
  CHECK(*v.s <= e.num_configs() * f.num_configs() * fact);
}
