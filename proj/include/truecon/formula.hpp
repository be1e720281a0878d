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
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "truecon/symbol.hpp"

namespace truecon {

/// Operators of the logic. The first six form the core syntax; the rest are
/// derived forms removed by expand_derived.
enum class Op {
  Tt,
  Neg,
  And,       // n-ary, at least two operands
  Diamond,   // <x:a>F
  Declare,   // (x:a)F
  Reverse,   // <-x>F
  Ff,
  Or,        // n-ary, at least two operands
  Box,       // [x:a]F
  RevBox,    // [-x]F
  LDiamond,  // <a>F
  LBox,      // [a]F
  LReverse,  // <-a>F
  LRevBox,   // [-a]F
  Step,      // <{a,...}>F
  RevStep,   // <-{a,...}>F
};

bool is_core(Op op);

class Formula;

struct FormulaNode {
  Op op;
  Ident ident;                // Diamond, Declare, Reverse, Box, RevBox
  Label label;                // Diamond, Declare, Box, LDiamond, LBox, LReverse, LRevBox
  std::vector<Label> labels;  // Step, RevStep (sorted by name)
  std::vector<Formula> kids;

  std::vector<Ident> free;  // sorted by id
  unsigned depth = 0;       // modal depth of the core expansion
  bool core = true;         // no derived operator anywhere below
  std::size_t hash = 0;
};

/// Immutable, shared formula. Copies are cheap; structurally equal
/// subformulas may or may not share a node.
class Formula {
 public:
  Formula();  // tt

  const FormulaNode& operator*() const { return *node_; }
  const FormulaNode* operator->() const { return node_.get(); }
  const FormulaNode* get() const { return node_.get(); }

  Op op() const { return node_->op; }
  const Formula& kid(std::size_t i = 0) const { return node_->kids[i]; }

  bool closed() const { return node_->free.empty(); }
  bool is_free(Ident x) const;

  /// Structural identity (no alpha conversion).
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend Formula make_node(FormulaNode node);
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

/// Fills in the cached fields and wraps the node.
Formula make_node(FormulaNode node);

Formula tt();
Formula ff();
Formula neg(Formula f);
/// Empty gives tt, a single operand is returned unchanged.
Formula conj(std::vector<Formula> fs);
/// Empty gives ff, a single operand is returned unchanged.
Formula disj(std::vector<Formula> fs);
Formula diamond(Ident x, Label a, Formula f);
Formula declare(Ident x, Label a, Formula f);
Formula reverse(Ident x, Formula f);
Formula box(Ident x, Label a, Formula f);
Formula rev_box(Ident x, Formula f);
Formula label_diamond(Label a, Formula f);
Formula label_box(Label a, Formula f);
Formula label_reverse(Label a, Formula f);
Formula label_rev_box(Label a, Formula f);
Formula step(std::vector<Label> labels, Formula f);
Formula rev_step(std::vector<Label> labels, Formula f);

/// FI(F), sorted by name.
std::vector<Ident> free_identifiers(const Formula& f);

/// Every identifier occurring in f, bound or free.
std::set<Ident> identifiers(const Formula& f);

/// Capture-avoiding f[to/from]: free occurrences of `from` become `to`;
/// clashing binders are renamed by appending primes.
Formula substitute(const Formula& f, Ident to, Ident from);

/// Simultaneous capture-avoiding substitution of free identifiers.
Formula substitute(const Formula& f, const std::vector<std::pair<Ident, Ident>>& to_from);

/// Capture-avoiding substitution that remembers its results across calls,
/// so that repeated substitutions into shared subformulas stay shared.
class SubstitutionCache {
 public:
  SubstitutionCache();
  ~SubstitutionCache();
  SubstitutionCache(const SubstitutionCache&) = delete;
  SubstitutionCache& operator=(const SubstitutionCache&) = delete;

  Formula apply(const Formula& f, const std::vector<std::pair<Ident, Ident>>& to_from);
  /// Number of nodes created so far.
  std::size_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Rewrites every derived operator into core syntax. Fresh identifiers are
/// drawn from the reserved names $0, $1, ... Shared subterms stay shared.
Formula expand_derived(const Formula& f);

unsigned modal_depth(const Formula& f);

/// Number of distinct nodes reachable from f.
std::size_t dag_size(const Formula& f);

enum class Sublogic { EIL, EIL_h, EIL_wh, EIL_hwh, EIL_ro, EIL_dfro };
const char* to_string(Sublogic s);

/// Grammars that accept the core expansion of f. A forward diamond <x:a>F
/// whose body does not mention x is read as the label diamond <a>F.
std::vector<Sublogic> classify_sublogic(const Formula& f);
bool in_sublogic(const Formula& f, Sublogic s);

/// Alpha equivalence on core or surface syntax.
bool alpha_equivalent(const Formula& a, const Formula& b);

} // namespace truecon
