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

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "truecon/error.hpp"
#include "truecon/event_set.hpp"
#include "truecon/symbol.hpp"

namespace truecon {

struct Event {
  std::string name;
  Label label;
};

/// Thrown by validate_stable. witness holds the offending configurations
/// (one for NotConnected, three for the closure failures: X, Y and the bound Z).
class InvalidStructure : public Error {
 public:
  enum class Kind {
    TooManyEvents,
    NotRooted,
    NotConnected,
    UnionNotClosed,
    IntersectionNotClosed,
    EventUnused,
    UnknownEvent,
    DuplicateEvent,
  };

  InvalidStructure(Kind kind, std::string message, std::vector<Configuration> witness = {},
                   std::optional<EventId> event = std::nullopt)
      : Error(std::move(message)), kind_(kind), witness_(std::move(witness)), event_(event) {}

  Kind kind() const { return kind_; }
  const std::vector<Configuration>& witness() const { return witness_; }
  std::optional<EventId> event() const { return event_; }

 private:
  Kind kind_;
  std::vector<Configuration> witness_;
  std::optional<EventId> event_;
};

const char* to_string(InvalidStructure::Kind kind);

/// (X, <_X, l|X). below[e] holds the strict predecessors of e; entries for
/// events outside the carrier are empty.
struct LabeledPoset {
  EventSet carrier;
  std::array<EventSet, kMaxEvents> below{};
  std::array<Label, kMaxEvents> label{};

  bool less(EventId d, EventId e) const { return below[e].contains(d); }
  bool concurrent(EventId d, EventId e) const { return d != e && !less(d, e) && !less(e, d); }
};

/// Bijection between two event sets of equal size, stored as a lookup table
/// on the domain.
class Iso {
 public:
  Iso() = default;

  EventSet domain() const { return dom_; }
  EventSet codomain() const { return cod_; }
  unsigned size() const { return dom_.size(); }
  bool defined(EventId e) const { return dom_.contains(e); }
  EventId operator()(EventId e) const { return to_[e]; }

  void set(EventId from, EventId to) {
    dom_.insert(from);
    cod_.insert(to);
    to_[from] = static_cast<std::uint8_t>(to);
  }
  Iso extended(EventId from, EventId to) const {
    Iso r = *this;
    r.set(from, to);
    return r;
  }
  Iso restricted(EventSet to_domain) const;
  Iso inverse() const;
  std::vector<std::pair<EventId, EventId>> pairs() const;

  friend bool operator==(const Iso& a, const Iso& b);
  std::size_t hash() const;

 private:
  EventSet dom_, cod_;
  std::array<std::uint8_t, kMaxEvents> to_{};
};

/// Finite stable configuration structure. Immutable once built; configurations
/// are kept in canonical order (size, then mask) and addressed by index.
class Structure {
 public:
  struct Move {
    EventId event;
    std::size_t target;
  };

  std::size_t num_events() const { return events_.size(); }
  const std::vector<Event>& events() const { return events_; }
  const std::string& event_name(EventId e) const { return events_[e].name; }
  Label label(EventId e) const { return events_[e].label; }
  std::optional<EventId> find_event(std::string_view name) const;
  EventSet all_events() const;

  /// Labels in the range of the labelling, ordered by name.
  const std::vector<Label>& alphabet() const { return alphabet_; }

  std::size_t num_configs() const { return configs_.size(); }
  const std::vector<Configuration>& configs() const { return configs_; }
  const Configuration& config(std::size_t index) const { return configs_[index]; }
  std::optional<std::size_t> index_of(Configuration x) const;
  bool is_config(Configuration x) const { return index_.count(x) != 0; }
  /// Index of x; throws NotAConfiguration otherwise.
  std::size_t require(Configuration x) const;

  const std::vector<Move>& forward(std::size_t index) const { return forward_[index]; }
  const std::vector<Move>& reverse(std::size_t index) const { return reverse_[index]; }

  /// Strict causal predecessors of e within configuration `index`.
  EventSet below(std::size_t index, EventId e) const { return below_[index * events_.size() + e]; }
  bool less(std::size_t index, EventId d, EventId e) const { return below(index, e).contains(d); }
  bool concurrent(std::size_t index, EventId d, EventId e) const {
    return d != e && !less(index, d, e) && !less(index, e, d);
  }

  unsigned max_config_size() const { return max_size_; }

  std::string render_config(Configuration x) const;

 private:
  friend Structure validate_stable(std::vector<Event> events, std::vector<Configuration> family);

  std::vector<Event> events_;
  std::vector<Label> alphabet_;
  std::vector<Configuration> configs_;
  std::unordered_map<Configuration, std::size_t> index_;
  std::vector<std::vector<Move>> forward_;
  std::vector<std::vector<Move>> reverse_;
  std::vector<EventSet> below_;
  unsigned max_size_ = 0;
};

/// Checks the stability axioms in the order: event count, rooted, connected,
/// bounded-union and bounded-intersection closure, event usage. Duplicate
/// configurations in `family` are ignored.
Structure validate_stable(std::vector<Event> events, std::vector<Configuration> family);

LabeledPoset causality_poset(const Structure& s, Configuration x);

std::vector<std::pair<EventId, Configuration>> forward_transitions(const Structure& s, Configuration x);
std::vector<std::pair<EventId, Configuration>> reverse_transitions(const Structure& s, Configuration x);

/// Targets X' with X' \ X pairwise concurrent in X' and labelled by the
/// multiset `step`; ordered canonically.
std::vector<Configuration> step_transitions(const Structure& s, Configuration x,
                                            const std::vector<Label>& step);

/// Calls `yield` once per label- and order-preserving bijection from p to q;
/// stops early when it returns false.
void for_each_isomorphism(const LabeledPoset& p, const LabeledPoset& q,
                          const std::function<bool(const Iso&)>& yield);
std::vector<Iso> poset_isomorphisms(const LabeledPoset& p, const LabeledPoset& q);
bool isomorphic(const LabeledPoset& p, const LabeledPoset& q);

/// True when f maps p onto q preserving labels and order in both directions.
bool is_isomorphism(const LabeledPoset& p, const LabeledPoset& q, const Iso& f);

} // namespace truecon

template <>
struct std::hash<truecon::Iso> {
  std::size_t operator()(const truecon::Iso& f) const noexcept { return f.hash(); }
};
