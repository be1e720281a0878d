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

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace truecon {

namespace detail {

// Process-wide interning tables. Lookups and insertions are serialised by a
// mutex; interned strings live until program exit.
std::uint32_t intern(int table, std::string_view name);
const std::string& symbol_name(int table, std::uint32_t id);

} // namespace detail

/// Interned token. Two symbols compare equal iff their names are equal.
/// Ordering follows interning order, so use name() for anything user-facing.
template <int Table>
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name) : id_(detail::intern(Table, name)) {}

  const std::string& name() const { return detail::symbol_name(Table, id_); }
  std::uint32_t id() const { return id_; }

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  std::uint32_t id_ = 0;
};

/// Action label (a, b, c, ...).
using Label = Symbol<0>;
/// Event identifier of the logic (x, y, z, ...).
using Ident = Symbol<1>;

struct ByName {
  template <int T>
  bool operator()(Symbol<T> a, Symbol<T> b) const { return a.name() < b.name(); }
};

} // namespace truecon

template <int T>
struct std::hash<truecon::Symbol<T>> {
  std::size_t operator()(truecon::Symbol<T> s) const noexcept { return s.id(); }
};
