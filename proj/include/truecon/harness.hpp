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

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "truecon/equivalence.hpp"
#include "truecon/error.hpp"
#include "truecon/formula.hpp"
#include "truecon/structure.hpp"

namespace truecon {

class BudgetExceeded : public LimitExceeded {
 public:
  using LimitExceeded::LimitExceeded;
};

struct EnumBudget {
  unsigned max_events = 3;
  unsigned max_labels = 2;
  std::size_t cap = 1'000'000;
};

/// Every stable structure with at most max_events events and at most
/// max_labels distinct labels, one per isomorphism class (event renaming and
/// label permutation). Ordered by event count, then canonical family, then
/// canonical labelling. Events are named e1, e2, ...; labels a, b, c, ...
std::vector<Structure> enumerate_structures(const EnumBudget& budget);

/// Number of stable families over exactly n events, without any quotient.
std::size_t count_stable_families(unsigned n);

using NaiveEnv = std::map<Ident, EventId>;

/// Satisfaction by plain structural recursion over the surface syntax,
/// including derived operators, without memoisation. Same contract and
/// errors as satisfies().
bool naive_satisfies(const Structure& s, Configuration x, const NaiveEnv& rho, const Formula& f);

/// HH game where the defender wins every infinite play (equivalently, any
/// play that revisits a position). Positions are triples built from the
/// literal definitions of causality and configuration; the winning region is
/// computed by removing losing positions until stable. `budget` bounds the
/// number of positions.
bool naive_game_hh(const Structure& c, const Structure& d, std::size_t budget = 5'000'000);

/// Random formula over `labels` whose free identifiers are drawn from `free`.
Formula random_formula(std::mt19937& rng, const std::vector<Label>& labels,
                       const std::vector<Ident>& free, unsigned depth);

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// Self-contained reproduction of the first violation.
  std::optional<std::string> first_counterexample;

  bool passed() const { return violations == 0; }
};

struct NamedPair {
  std::string name;
  Structure lhs, rhs;
};

/// Verdict of every kind on one named pair.
struct PairVerdicts {
  std::string name;
  std::map<BisimKind, bool> equivalent;
};

struct CrossReport {
  EnumBudget budget;
  std::size_t structures = 0;
  std::size_t pairs = 0;
  std::vector<PropertyResult> properties;
  std::vector<PairVerdicts> named;
  double seconds = 0;

  bool passed() const;
  const PropertyResult* find(std::string_view name) const;
  std::string to_text() const;
  std::string to_json() const;
};

struct CrossOptions {
  EnumBudget budget;
  /// Random cases for the evaluator agreement property.
  std::size_t random_cases = 10'000;
  /// Event bound for the step-operator property.
  unsigned step_events = 5;
  /// Event bound for the exhaustive theta lemma property.
  unsigned theta_events = 3;
  /// Pairs checked against the examples in addition to the enumerated ones.
  std::vector<NamedPair> named;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint32_t seed = 1;
};

/// The example pairs used throughout: intro, autoconcurrency, idempotence,
/// figure 2, absorption, figure 3.
std::vector<NamedPair> example_pairs();

CrossReport cross_validate(const CrossOptions& opt);

// Individual property runners, exposed for tests. Each appends to `out`.
void check_theta_lemmas(const std::vector<Structure>& universe, PropertyResult& plain,
                        PropertyResult& open);
void check_step_operators(const std::vector<Structure>& universe, unsigned max_step,
                          PropertyResult& out);

} // namespace truecon
