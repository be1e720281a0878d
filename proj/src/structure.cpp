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

#include "truecon/structure.hpp"

#include <algorithm>
#include <set>

namespace truecon {

const char* to_string(InvalidStructure::Kind kind) {
  switch (kind) {
    case InvalidStructure::Kind::TooManyEvents: return "TooManyEvents";
    case InvalidStructure::Kind::NotRooted: return "NotRooted";
    case InvalidStructure::Kind::NotConnected: return "NotConnected";
    case InvalidStructure::Kind::UnionNotClosed: return "UnionNotClosed";
    case InvalidStructure::Kind::IntersectionNotClosed: return "IntersectionNotClosed";
    case InvalidStructure::Kind::EventUnused: return "EventUnused";
    case InvalidStructure::Kind::UnknownEvent: return "UnknownEvent";
    case InvalidStructure::Kind::DuplicateEvent: return "DuplicateEvent";
  }
  return "?";
}

// ---------------------------------------------------------------- Iso

Iso Iso::restricted(EventSet to_domain) const {
  Iso r;
  (dom_ & to_domain).for_each([&](EventId e) { r.set(e, to_[e]); });
  return r;
}

Iso Iso::inverse() const {
  Iso r;
  dom_.for_each([&](EventId e) { r.set(to_[e], e); });
  return r;
}

std::vector<std::pair<EventId, EventId>> Iso::pairs() const {
  std::vector<std::pair<EventId, EventId>> out;
  dom_.for_each([&](EventId e) { out.emplace_back(e, to_[e]); });
  return out;
}

bool operator==(const Iso& a, const Iso& b) {
  if (a.dom_ != b.dom_ || a.cod_ != b.cod_) return false;
  bool same = true;
  a.dom_.for_each([&](EventId e) { same = same && a.to_[e] == b.to_[e]; });
  return same;
}

std::size_t Iso::hash() const {
  std::size_t h = std::hash<std::uint64_t>{}(dom_.bits());
  dom_.for_each([&](EventId e) { h = h * 1099511628211ULL + to_[e] + 1; });
  return h;
}

// ---------------------------------------------------------------- Structure

std::optional<EventId> Structure::find_event(std::string_view name) const {
  for (EventId e = 0; e < events_.size(); ++e)
    if (events_[e].name == name) return e;
  return std::nullopt;
}

EventSet Structure::all_events() const {
  return events_.size() == 64 ? EventSet(~std::uint64_t{0})
                              : EventSet((std::uint64_t{1} << events_.size()) - 1);
}

std::optional<std::size_t> Structure::index_of(Configuration x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Structure::require(Configuration x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw NotAConfiguration(render_config(x) + " is not a configuration");
  return it->second;
}

std::string Structure::render_config(Configuration x) const {
  std::string out = "{";
  bool first = true;
  x.for_each([&](EventId e) {
    if (!first) out += ' ';
    first = false;
    out += e < events_.size() ? events_[e].name : "#" + std::to_string(e);
  });
  return out + "}";
}

Structure validate_stable(std::vector<Event> events, std::vector<Configuration> family) {
  using K = InvalidStructure::Kind;
  if (events.size() > kMaxEvents)
    throw InvalidStructure(K::TooManyEvents,
                           "too many events: " + std::to_string(events.size()) + " > 64");

  Structure s;
  s.events_ = std::move(events);
  {
    std::set<std::string> seen;
    for (EventId e = 0; e < s.events_.size(); ++e)
      if (!seen.insert(s.events_[e].name).second)
        throw InvalidStructure(K::DuplicateEvent, "duplicate event " + s.events_[e].name, {}, e);
  }
  const EventSet all = s.all_events();
  for (Configuration x : family)
    if (!x.subset_of(all))
      throw InvalidStructure(K::UnknownEvent, "configuration uses undeclared events", {x});

  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  s.configs_ = std::move(family);
  for (std::size_t i = 0; i < s.configs_.size(); ++i) s.index_.emplace(s.configs_[i], i);

  if (!s.is_config(Configuration{}))
    throw InvalidStructure(K::NotRooted, "not rooted: {} is not a configuration");

  for (Configuration x : s.configs_) {
    if (x.empty()) continue;
    bool ok = false;
    x.for_each([&](EventId e) { ok = ok || s.is_config(x.without(e)); });
    if (!ok)
      throw InvalidStructure(K::NotConnected, "not connected: " + s.render_config(x), {x});
  }

  std::vector<Configuration> maximal;
  for (std::size_t i = s.configs_.size(); i-- > 0;) {
    Configuration x = s.configs_[i];
    bool covered = std::any_of(maximal.begin(), maximal.end(),
                               [&](Configuration m) { return x.subset_of(m); });
    if (!covered) maximal.push_back(x);
  }
  const std::size_t n = s.configs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Configuration x = s.configs_[i], y = s.configs_[j];
      if (x.subset_of(y) || y.subset_of(x)) continue;
      Configuration u = x | y;
      auto bound = std::find_if(maximal.begin(), maximal.end(),
                                [&](Configuration m) { return u.subset_of(m); });
      if (bound == maximal.end()) continue;
      if (!s.is_config(u))
        throw InvalidStructure(K::UnionNotClosed,
                               "not closed under bounded union: " + s.render_config(x) + " and " +
                                   s.render_config(y) + " bounded by " + s.render_config(*bound),
                               {x, y, *bound});
      if (!s.is_config(x & y))
        throw InvalidStructure(K::IntersectionNotClosed,
                               "not closed under bounded intersection: " + s.render_config(x) +
                                   " and " + s.render_config(y) + " bounded by " +
                                   s.render_config(*bound),
                               {x, y, *bound});
    }
  }

  EventSet used;
  for (Configuration x : s.configs_) used = used | x;
  for (EventId e = 0; e < s.events_.size(); ++e)
    if (!used.contains(e))
      throw InvalidStructure(K::EventUnused, "event " + s.events_[e].name + " occurs in no configuration",
                             {}, e);

  std::set<Label, ByName> labels;
  for (const Event& ev : s.events_) labels.insert(ev.label);
  s.alphabet_.assign(labels.begin(), labels.end());

  const std::size_t ne = s.events_.size();
  s.forward_.resize(n);
  s.reverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Configuration x = s.configs_[i];
    s.max_size_ = std::max(s.max_size_, x.size());
    for (EventId e = 0; e < ne; ++e) {
      if (x.contains(e)) {
        if (auto j = s.index_of(x.without(e))) s.reverse_[i].push_back({e, *j});
      } else if (auto j = s.index_of(x.with(e))) {
        s.forward_[i].push_back({e, *j});
      }
    }
  }

  // Down-set of e in X: X intersected with its down-sets in every X \ {e'}
  // reachable by one reverse step that keeps e. Configurations are processed
  // by increasing size, so those are already known.
  s.below_.assign(n * ne, EventSet{});
  for (std::size_t i = 0; i < n; ++i) {
    Configuration x = s.configs_[i];
    x.for_each([&](EventId e) {
      EventSet down = x;
      for (const Structure::Move& m : s.reverse_[i])
        if (m.event != e) down = down & (s.below_[m.target * ne + e].with(e));
      s.below_[i * ne + e] = down.without(e);
    });
  }
  return s;
}

LabeledPoset causality_poset(const Structure& s, Configuration x) {
  std::size_t i = s.require(x);
  LabeledPoset p;
  p.carrier = x;
  x.for_each([&](EventId e) {
    p.below[e] = s.below(i, e);
    p.label[e] = s.label(e);
  });
  return p;
}

std::vector<std::pair<EventId, Configuration>> forward_transitions(const Structure& s, Configuration x) {
  std::vector<std::pair<EventId, Configuration>> out;
  for (const auto& m : s.forward(s.require(x))) out.emplace_back(m.event, s.config(m.target));
  return out;
}

std::vector<std::pair<EventId, Configuration>> reverse_transitions(const Structure& s, Configuration x) {
  std::vector<std::pair<EventId, Configuration>> out;
  for (const auto& m : s.reverse(s.require(x))) out.emplace_back(m.event, s.config(m.target));
  return out;
}

std::vector<Configuration> step_transitions(const Structure& s, Configuration x,
                                            const std::vector<Label>& step) {
  s.require(x);
  std::vector<std::uint32_t> want;
  for (Label a : step) want.push_back(a.id());
  std::sort(want.begin(), want.end());

  std::vector<Configuration> out;
  for (std::size_t j = 0; j < s.num_configs(); ++j) {
    Configuration y = s.config(j);
    if (!x.subset_of(y) || y.size() != x.size() + step.size()) continue;
    Configuration diff = y - x;
    std::vector<std::uint32_t> got;
    diff.for_each([&](EventId e) { got.push_back(s.label(e).id()); });
    std::sort(got.begin(), got.end());
    if (got != want) continue;
    bool independent = true;
    diff.for_each([&](EventId e) { independent = independent && (s.below(j, e) & diff).empty(); });
    if (independent) out.push_back(y);
  }
  return out;
}

// ---------------------------------------------------------------- isomorphisms

namespace {

struct Signature {
  std::uint32_t label;
  unsigned preds, succs;
  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(const LabeledPoset& p, EventId e) {
  unsigned succs = 0;
  p.carrier.for_each([&](EventId d) { succs += p.less(e, d); });
  return {p.label[e].id(), p.below[e].size(), succs};
}

struct IsoSearch {
  const LabeledPoset& p;
  const LabeledPoset& q;
  const std::function<bool(const Iso&)>& yield;
  std::vector<EventId> order;
  std::vector<EventId> targets;
  std::vector<Signature> psig, qsig;
  Iso current;
  bool stopped = false;

  void run(std::size_t k) {
    if (stopped) return;
    if (k == order.size()) {
      if (!yield(current)) stopped = true;
      return;
    }
    EventId e = order[k];
    for (std::size_t t = 0; t < targets.size() && !stopped; ++t) {
      EventId g = targets[t];
      if (current.codomain().contains(g) || !(psig[k] == qsig[t])) continue;
      bool ok = true;
      current.domain().for_each([&](EventId d) {
        EventId fd = current(d);
        ok = ok && p.less(d, e) == q.less(fd, g) && p.less(e, d) == q.less(g, fd);
      });
      if (!ok) continue;
      Iso saved = current;
      current.set(e, g);
      run(k + 1);
      current = saved;
    }
  }
};

} // namespace

void for_each_isomorphism(const LabeledPoset& p, const LabeledPoset& q,
                          const std::function<bool(const Iso&)>& yield) {
  if (p.carrier.size() != q.carrier.size()) return;
  IsoSearch search{p, q, yield, p.carrier.members(), q.carrier.members(), {}, {}, {}};
  for (EventId e : search.order) search.psig.push_back(signature(p, e));
  for (EventId e : search.targets) search.qsig.push_back(signature(q, e));
  std::vector<Signature> a = search.psig, b = search.qsig;
  auto key = [](const Signature& s) { return std::tuple(s.label, s.preds, s.succs); };
  auto cmp = [&](const Signature& x, const Signature& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  if (a != b) return;
  search.run(0);
}

std::vector<Iso> poset_isomorphisms(const LabeledPoset& p, const LabeledPoset& q) {
  std::vector<Iso> out;
  for_each_isomorphism(p, q, [&](const Iso& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

bool isomorphic(const LabeledPoset& p, const LabeledPoset& q) {
  bool found = false;
  for_each_isomorphism(p, q, [&](const Iso&) {
    found = true;
    return false;
  });
  return found;
}

bool is_isomorphism(const LabeledPoset& p, const LabeledPoset& q, const Iso& f) {
  if (f.domain() != p.carrier || f.codomain() != q.carrier) return false;
  bool ok = true;
  p.carrier.for_each([&](EventId d) {
    ok = ok && p.label[d] == q.label[f(d)];
    p.carrier.for_each([&](EventId e) { ok = ok && p.less(d, e) == q.less(f(d), f(e)); });
  });
  return ok;
}

} // namespace truecon
