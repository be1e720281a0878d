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

#include <algorithm>
#include <numeric>
#include <set>

#include "support.hpp"
#include "truecon/examples.hpp"
#include "truecon/harness.hpp"

using namespace testing;

namespace {

using Family = std::vector<unsigned>;  // sorted subset masks

// Stable by the definitions, over every family of subsets of n events.
bool literally_stable(const Family& f, unsigned n) {
  auto in = [&](unsigned x) { return std::binary_search(f.begin(), f.end(), x); };
  if (!in(0)) return false;
  unsigned used = 0;
  for (unsigned x : f) used |= x;
  if (used != (1U << n) - 1) return false;
  for (unsigned x : f) {
    if (x == 0) continue;
    bool conn = false;
    for (unsigned e = 0; e < n; ++e)
      if (((x >> e) & 1U) && in(x & ~(1U << e))) conn = true;
    if (!conn) return false;
  }
  for (unsigned x : f)
    for (unsigned y : f) {
      bool bounded = false;
      for (unsigned z : f) bounded = bounded || ((x | y) & ~z) == 0;
      if (bounded && (!in(x | y) || !in(x & y))) return false;
    }
  return true;
}

std::vector<Family> power_set_sweep(unsigned n) {
  std::vector<Family> out;
  const unsigned subsets = 1U << n;
  for (unsigned long m = 0; m < (1UL << subsets); ++m) {
    Family f;
    for (unsigned x = 0; x < subsets; ++x)
      if ((m >> x) & 1UL) f.push_back(x);
    if (literally_stable(f, n)) out.push_back(f);
  }
  return out;
}

// Isomorphism classes of labelled families, labels drawn from k letters,
// up to event renaming and label renaming.
std::size_t classes(unsigned n, unsigned k) {
  std::set<std::pair<std::vector<unsigned>, Family>> seen;
  std::vector<unsigned> lab(n, 0);
  for (const Family& f : power_set_sweep(n)) {
    std::fill(lab.begin(), lab.end(), 0U);
    for (;;) {
      std::pair<std::vector<unsigned>, Family> best;
      bool first = true;
      std::vector<unsigned> p(n);
      std::iota(p.begin(), p.end(), 0U);
      do {
        std::vector<unsigned> q(k);
        std::iota(q.begin(), q.end(), 0U);
        do {
          std::vector<unsigned> l(n);
          for (unsigned i = 0; i < n; ++i) l[p[i]] = q[lab[i]];
          Family g;
          for (unsigned x : f) {
            unsigned y = 0;
            for (unsigned i = 0; i < n; ++i)
              if ((x >> i) & 1U) y |= 1U << p[i];
            g.push_back(y);
          }
          std::sort(g.begin(), g.end());
          auto key = std::make_pair(l, g);
          if (first || key < best) best = key;
          first = false;
        } while (std::next_permutation(q.begin(), q.end()));
      } while (std::next_permutation(p.begin(), p.end()));
      seen.insert(best);
      unsigned i = 0;
      while (i < n && ++lab[i] == k) lab[i++] = 0;
      if (i == n) break;
    }
  }
  return seen.size();
}

std::size_t with_events(const std::vector<Structure>& u, unsigned n) {
  return static_cast<std::size_t>(
      std::count_if(u.begin(), u.end(), [&](const Structure& s) { return s.num_events() == n; }));
}

} // namespace

TEST_CASE("stable family counts") {
  const std::size_t golden[] = {1, 1, 4, 48, 2262};
  for (unsigned n = 0; n <= 4; ++n) CHECK(count_stable_families(n) == golden[n]);
  CHECK_THROWS_AS(count_stable_families(6), BudgetExceeded);
}

TEST_CASE("stable family counts agree with a power-set sweep") {
  for (unsigned n = 0; n <= 4; ++n) CHECK(count_stable_families(n) == power_set_sweep(n).size());
}

TEST_CASE("structure classes per event count") {
  const auto one = enumerate_structures({4, 1, 1'000'000});
  const auto two = enumerate_structures({4, 2, 1'000'000});
  const std::size_t g1[] = {1, 1, 3, 14, 151}, g2[] = {1, 1, 6, 43, 966};
  for (unsigned n = 0; n <= 4; ++n) {
    CHECK(with_events(one, n) == g1[n]);
    CHECK(with_events(two, n) == g2[n]);
  }
  CHECK(enumerate_structures({}).size() == 51);
}

TEST_CASE("structure classes agree with brute-force canonical forms") {
  for (unsigned n = 0; n <= 3; ++n) {
    const auto one = enumerate_structures({n, 1, 1'000'000});
    const auto two = enumerate_structures({n, 2, 1'000'000});
    CHECK(with_events(one, n) == classes(n, 1));
    CHECK(with_events(two, n) == classes(n, 2));
  }
}

TEST_CASE("enumeration budgets") {
  CHECK_THROWS_AS(enumerate_structures({6, 1, 1'000'000}), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_structures({3, 2, 10}), BudgetExceeded);
}

TEST_CASE("naive evaluator on the worked example") {
  Structure s = example1();
  auto naive = [&](std::initializer_list<const char*> x, NaiveEnv rho, const char* f) {
    return naive_satisfies(s, cfg(s, x), rho, fml(s, f));
  };
  const Ident x("x"), y("y");
  CHECK(naive({}, {}, "<x:a><y:a><-x>tt"));
  CHECK(naive({}, {}, "<x:a><y:a>~<-x>tt"));
  CHECK_FALSE(naive({"e1", "e2"}, {{x, ev(s, "e1")}, {y, ev(s, "e2")}}, "(x:a)<-x><-y>tt"));
  CHECK(naive({"e1", "e2"}, {{x, ev(s, "e1")}, {y, ev(s, "e2")}}, "<-y>tt"));
  CHECK_FALSE(naive({"e1", "e2"}, {{x, ev(s, "e1")}, {y, ev(s, "e2")}}, "<-x>tt"));
  CHECK(naive({"e1", "e3"}, {{x, ev(s, "e1")}}, "<-x>tt"));
  CHECK_THROWS_AS(naive({"e2"}, {}, "tt"), NotAConfiguration);
  CHECK_THROWS_AS(naive({"e1"}, {{x, ev(s, "e3")}}, "<-x>tt"), NotPermissible);
}

TEST_CASE("naive and memoised evaluators agree on random formulas") {
  std::mt19937 rng(7);
  for (const char* term : {"a|b", "a.b+b.a", "a|a", "a.a", "a.c|b+a"}) {
    Structure s = parse_term(term);
    for (int i = 0; i < 300; ++i) {
      Formula f = random_formula(rng, s.alphabet(), {}, 1 + static_cast<unsigned>(rng() % 4));
      for (Configuration x : s.configs()) CHECK(satisfies(s, x, {}, f) == naive_satisfies(s, x, {}, f));
    }
  }
}

TEST_CASE("literal game search") {
  CHECK(naive_game_hh(parse_term("a"), parse_term("a")));
  CHECK(naive_game_hh(parse_term("a"), parse_term("a+a")));
  CHECK_FALSE(naive_game_hh(parse_term("a|b"), parse_term("a.b+b.a")));
  CHECK_FALSE(naive_game_hh(parse_term("a|a"), parse_term("a.a")));
  CHECK_FALSE(naive_game_hh(examples::fig3_e(), examples::fig3_f()));
  CHECK_THROWS_AS(naive_game_hh(examples::fig2_e(), examples::fig2_f(), 3), BudgetExceeded);
}

TEST_CASE("theta lemmas up to four events") {
  PropertyResult plain, open;
  check_theta_lemmas(enumerate_structures({4, 2, 1'000'000}), plain, open);
  CHECK(plain.checked > 0);
  CHECK(plain.passed());
  CHECK(open.passed());
}

TEST_CASE("step operators on small structures") {
  PropertyResult p;
  check_step_operators(enumerate_structures({3, 2, 1'000'000}), 3, p);
  CHECK(p.checked > 0);
  CHECK(p.passed());
}

TEST_CASE("cross validation at a small budget") {
  CrossOptions o;
  o.budget = {2, 1, 1'000'000};
  o.random_cases = 500;
  o.step_events = 3;
  o.theta_events = 3;
  CrossReport r = cross_validate(o);
  CHECK(r.structures == 5);
  CHECK(r.passed());
  REQUIRE(r.find("symmetry") != nullptr);
  CHECK(r.find("symmetry")->checked > 0);
  CHECK(r.named.size() == example_pairs().size());
  CHECK(r.to_json().find("\"passed\": true") != std::string::npos);
}

TEST_CASE("a dropped configuration changes the verdict") {
  Structure e = examples::fig2_e(), f = examples::fig2_f();
  CHECK(check_equivalence(e, f, BisimKind::WH).equivalent);
  // Removing a maximal configuration from E leaves a stable structure that
  // no longer matches F.
  std::vector<Configuration> fam = e.configs();
  fam.pop_back();
  Structure m = validate_stable(e.events(), fam);
  CHECK_FALSE(check_equivalence(m, f, BisimKind::WH).equivalent);
}
