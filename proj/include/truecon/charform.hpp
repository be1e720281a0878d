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
#include <vector>

#include "truecon/eval.hpp"
#include "truecon/formula.hpp"
#include "truecon/structure.hpp"

namespace truecon {

/// Identifier naming event e in generated formulas: prefix followed by the
/// 1-based event id (z1, z2, ... by default).
Ident event_ident(EventId e, char prefix = 'z');

/// Events of x in topological order, ties broken by event id.
std::vector<EventId> topological_order(const Structure& s, Configuration x);

/// theta'_X: declaration-free reverse-only formula over the identifiers
/// event_ident(e, prefix), e in X.
Formula theta_open(const Structure& s, Configuration x, char prefix = 'z');
/// rho_X: event_ident(e, prefix) -> e for every e in X.
Environment theta_convention(const Structure& s, Configuration x, char prefix = 'z');
/// theta_X: theta'_X under one declaration per event, outermost first in
/// topological order. Closed.
Formula theta_closed(const Structure& s, Configuration x);

class DagTooLarge : public LimitExceeded {
 public:
  using LimitExceeded::LimitExceeded;
};

inline constexpr std::size_t kDefaultDagGuard = 1'000'000;

struct FormulaDag {
  Formula root;
  std::size_t nodes = 0;
  unsigned depth = 0;
};

enum class CharKind { HH, H, WH };

/// Labels of both structures, ordered by name.
std::vector<Label> union_alphabet(const Structure& c, const Structure& d);

/// chi_hh(C, n) with the box conjuncts ranging over `act`.
FormulaDag char_formula_hh(const Structure& s, unsigned depth, const std::vector<Label>& act,
                           std::size_t guard = kDefaultDagGuard);
FormulaDag char_formula_h(const Structure& s, const std::vector<Label>& act,
                          std::size_t guard = kDefaultDagGuard);
FormulaDag char_formula_wh(const Structure& s, const std::vector<Label>& act,
                           std::size_t guard = kDefaultDagGuard);
/// Dispatches on kind; depth is ignored unless kind is HH.
FormulaDag char_formula(const Structure& s, CharKind kind, unsigned depth,
                        const std::vector<Label>& act, std::size_t guard = kDefaultDagGuard);

/// chi_hh at a given configuration (used by the characterisation checks).
Formula char_formula_hh_at(const Structure& s, Configuration x, unsigned depth,
                           const std::vector<Label>& act, std::size_t guard = kDefaultDagGuard);

} // namespace truecon
