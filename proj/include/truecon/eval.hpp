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
#include <utility>
#include <vector>

#include "truecon/formula.hpp"
#include "truecon/structure.hpp"

namespace truecon {

/// Partial map from identifiers to events. Need not be injective.
class Environment {
 public:
  Environment() = default;
  Environment(std::initializer_list<std::pair<Ident, EventId>> bindings);

  std::optional<EventId> lookup(Ident x) const;
  void bind(Ident x, EventId e);
  Environment with(Ident x, EventId e) const;
  bool empty() const { return bindings_.empty(); }
  /// Bindings ordered by identifier id.
  const std::vector<std::pair<Ident, EventId>>& bindings() const { return bindings_; }

  /// FI(f) is in the domain and mapped into x.
  bool permissible(const Formula& f, Configuration x) const;

  std::string render(const Structure& s) const;

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  std::vector<std::pair<Ident, EventId>> bindings_;
};

/// Parses "x=e1,y=e2" against the event names of s.
Environment parse_environment(const Structure& s, std::string_view text);

/// Memoising model checker for one structure. The memo is keyed on
/// (configuration, formula node, environment restricted to the node's free
/// identifiers) and persists across calls on the same evaluator.
class Evaluator {
 public:
  explicit Evaluator(const Structure& s) : s_(s) {}

  /// Throws NotAConfiguration or NotPermissible. Derived operators are
  /// expanded first.
  bool satisfies(Configuration x, const Environment& rho, const Formula& f);
  bool satisfies(const Formula& f) { return satisfies(Configuration{}, {}, f); }

  std::size_t memo_size() const { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  bool eval(std::size_t config, const Environment& rho, const Formula& f);
  Formula core(const Formula& f);

  const Structure& s_;
  std::unordered_map<std::string, bool> memo_;
  std::unordered_map<const FormulaNode*, std::pair<Formula, Formula>> expanded_;
  std::unordered_map<const FormulaNode*, Formula> roots_;
};

bool satisfies(const Structure& s, Configuration x, const Environment& rho, const Formula& f);
inline bool satisfies(const Structure& s, const Formula& f) {
  return satisfies(s, Configuration{}, {}, f);
}

} // namespace truecon
