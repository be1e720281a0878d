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

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace truecon {

using EventId = unsigned;

inline constexpr unsigned kMaxEvents = 64;

/// Finite set of events of one structure, stored as a 64-bit mask.
class EventSet {
 public:
  constexpr EventSet() = default;
  constexpr explicit EventSet(std::uint64_t bits) : bits_(bits) {}
  EventSet(std::initializer_list<EventId> events) {
    for (EventId e : events) insert(e);
  }

  static constexpr EventSet single(EventId e) { return EventSet(std::uint64_t{1} << e); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool contains(EventId e) const { return (bits_ >> e) & 1U; }
  constexpr bool subset_of(EventSet o) const { return (bits_ & ~o.bits_) == 0; }

  void insert(EventId e) { bits_ |= std::uint64_t{1} << e; }
  void erase(EventId e) { bits_ &= ~(std::uint64_t{1} << e); }

  constexpr EventSet with(EventId e) const { return EventSet(bits_ | (std::uint64_t{1} << e)); }
  constexpr EventSet without(EventId e) const { return EventSet(bits_ & ~(std::uint64_t{1} << e)); }

  friend constexpr EventSet operator|(EventSet a, EventSet b) { return EventSet(a.bits_ | b.bits_); }
  friend constexpr EventSet operator&(EventSet a, EventSet b) { return EventSet(a.bits_ & b.bits_); }
  friend constexpr EventSet operator-(EventSet a, EventSet b) { return EventSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(EventSet, EventSet) = default;

  /// Canonical order: by cardinality, then by mask value.
  friend constexpr bool operator<(EventSet a, EventSet b) {
    unsigned sa = a.size(), sb = b.size();
    return sa != sb ? sa < sb : a.bits_ < b.bits_;
  }

  /// Position of e among the members in increasing id order.
  unsigned rank(EventId e) const {
    return static_cast<unsigned>(std::popcount(bits_ & ((std::uint64_t{1} << e) - 1)));
  }

  /// Smallest member; undefined on the empty set.
  EventId first() const { return static_cast<EventId>(std::countr_zero(bits_)); }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<EventId>(std::countr_zero(b)));
  }

  std::vector<EventId> members() const {
    std::vector<EventId> out;
    out.reserve(size());
    for_each([&](EventId e) { out.push_back(e); });
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

using Configuration = EventSet;

} // namespace truecon

template <>
struct std::hash<truecon::EventSet> {
  std::size_t operator()(truecon::EventSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
