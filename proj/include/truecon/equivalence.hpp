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
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "truecon/formula.hpp"
#include "truecon/structure.hpp"

namespace truecon {

enum class BisimKind { IB, WH, H, HWH, HH };
const char* to_string(BisimKind k);
std::optional<BisimKind> parse_kind(std::string_view text);

/// Which structure a move or a formula refers to.
enum class Side { Lhs, Rhs };
const char* to_string(Side s);
inline Side other(Side s) { return s == Side::Lhs ? Side::Rhs : Side::Lhs; }

class StateSpaceTooLarge : public LimitExceeded {
 public:
  using LimitExceeded::LimitExceeded;
};

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// (X, Y, f) with X, Y given by configuration indices. In pair spaces
/// (IB, WH) f is left empty.
struct IsoTriple {
  std::size_t x = 0, y = 0;
  Iso f;
};

class StateSpace {
 public:
  const Structure& lhs() const { return *lhs_; }
  const Structure& rhs() const { return *rhs_; }
  std::size_t size() const { return states_.size(); }
  const IsoTriple& state(std::size_t i) const { return states_[i]; }
  const std::vector<IsoTriple>& states() const { return states_; }
  std::size_t initial() const { return 0; }
  bool pairs_only() const { return pairs_only_; }

  std::optional<std::size_t> find(std::size_t x, std::size_t y, const Iso& f) const;
  /// States whose configurations are (x, y), in enumeration order.
  const std::vector<std::size_t>& between(std::size_t x, std::size_t y) const;

  /// min of the two maximal configuration sizes.
  unsigned c() const;

 private:
  friend StateSpace build_state_space(const Structure&, const Structure&, std::size_t);
  friend StateSpace build_pair_space(const Structure&, const Structure&, bool, std::size_t);

  void add(IsoTriple t, std::size_t cap);

  const Structure* lhs_ = nullptr;
  const Structure* rhs_ = nullptr;
  bool pairs_only_ = false;
  std::vector<IsoTriple> states_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_pair_;
};

/// S(C,D): every (X, Y, f) with f an isomorphism of the causal posets.
/// States are ordered by configuration index of X, then Y, then the
/// isomorphism search order; the initial state comes first.
StateSpace build_state_space(const Structure& c, const Structure& d,
                             std::size_t cap = kDefaultStateCap);

/// Pairs (X, Y), restricted to isomorphic pairs when `require_iso`.
StateSpace build_pair_space(const Structure& c, const Structure& d, bool require_iso,
                            std::size_t cap = kDefaultStateCap);

/// |S(C,D)| without storing the states; nullopt once `cap` is exceeded.
std::optional<std::size_t> count_iso_triples(const Structure& c, const Structure& d,
                                             std::size_t cap = kDefaultStateCap);

/// An attacker move: a forward or reverse transition of one event on one side.
struct Move {
  Side side;
  bool reverse;
  EventId event;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Refinement bookkeeping. For a state, every attacker move is a challenge
/// listing the states the defender may answer with.
struct Challenge {
  Move move;
  std::vector<std::size_t> responses;
};

struct Refinement {
  BisimKind kind;
  StateSpace space;
  std::vector<std::vector<Challenge>> challenges;
  std::vector<bool> alive;
  /// For removed states: index of the challenge that failed and
  /// 1 + the largest generation among its responses.
  std::vector<int> failed;
  std::vector<unsigned> generation;
  std::vector<std::size_t> removal_order;

  bool equivalent() const { return alive[space.initial()]; }
  unsigned rounds() const;
};

struct Options {
  std::size_t state_cap = kDefaultStateCap;
  /// Build and verify a distinguishing formula for inequivalent pairs.
  bool want_formula = true;
  /// Greedily drop conjuncts of distinguishing formulas.
  bool prune = true;
};

/// Greatest fixed point of the kind's transfer clauses, computed by worklist
/// removal of violating states.
Refinement refine(const Structure& c, const Structure& d, BisimKind kind, const Options& opt = {});

struct Counterexample {
  Formula formula;
  /// The structure that satisfies the formula; the other one does not.
  Side side;
  unsigned depth;
};

struct Verdict {
  BisimKind kind;
  bool equivalent = false;
  /// Surviving states when equivalent (f empty for IB and WH).
  std::vector<IsoTriple> witness;
  std::optional<Counterexample> counterexample;
  std::optional<std::size_t> s;
  unsigned c = 0;
  unsigned rounds = 0;
  std::size_t states = 0;
};

Verdict check_equivalence(const Structure& c, const Structure& d, BisimKind kind,
                          const Options& opt = {});

/// Checks the kind's transfer clauses on `relation` directly from the
/// definitions, independently of the refinement. Returns a description of
/// the first violated clause, or nullopt.
std::optional<std::string> validate_witness(const Structure& c, const Structure& d, BisimKind kind,
                                            const std::vector<IsoTriple>& relation);

struct GameSolution {
  bool defender_wins = false;
  /// For every state in the defender's winning region and every attacker
  /// move from it, a response state inside the region.
  std::unordered_map<std::size_t, std::vector<std::pair<Move, std::size_t>>> strategy;
  /// When the attacker wins: states visited by an attacker-optimal play
  /// against a rank-maximising defender, starting at the initial state.
  std::vector<std::size_t> losing_trace;
  StateSpace space;
};

/// HH game on S(C,D) solved as a safety game: the attacker's attractor to
/// positions where the defender has no legal answer.
GameSolution solve_game(const Structure& c, const Structure& d, std::size_t cap = kDefaultStateCap);

} // namespace truecon
