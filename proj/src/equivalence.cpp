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

#include "truecon/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "truecon/distinguish.hpp"

namespace truecon {

const char* to_string(BisimKind k) {
  switch (k) {
    case BisimKind::IB: return "ib";
    case BisimKind::WH: return "wh";
    case BisimKind::H: return "h";
    case BisimKind::HWH: return "hwh";
    case BisimKind::HH: return "hh";
  }
  return "?";
}

std::optional<BisimKind> parse_kind(std::string_view text) {
  for (BisimKind k : {BisimKind::IB, BisimKind::WH, BisimKind::H, BisimKind::HWH, BisimKind::HH})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(Side s) { return s == Side::Lhs ? "lhs" : "rhs"; }

// ---------------------------------------------------------------- state spaces

std::optional<std::size_t> StateSpace::find(std::size_t x, std::size_t y, const Iso& f) const {
  for (std::size_t i : between(x, y))
    if (states_[i].f == f) return i;
  return std::nullopt;
}

const std::vector<std::size_t>& StateSpace::between(std::size_t x, std::size_t y) const {
  static const std::vector<std::size_t> none;
  auto it = by_pair_.find(x * rhs_->num_configs() + y);
  return it == by_pair_.end() ? none : it->second;
}

unsigned StateSpace::c() const { return std::min(lhs_->max_config_size(), rhs_->max_config_size()); }

void StateSpace::add(IsoTriple t, std::size_t cap) {
  if (states_.size() >= cap)
    throw StateSpaceTooLarge("state space exceeds the cap of " + std::to_string(cap) + " states");
  by_pair_[t.x * rhs_->num_configs() + t.y].push_back(states_.size());
  states_.push_back(std::move(t));
}

namespace {

std::vector<LabeledPoset> posets(const Structure& s) {
  std::vector<LabeledPoset> out;
  out.reserve(s.num_configs());
  for (Configuration x : s.configs()) out.push_back(causality_poset(s, x));
  return out;
}

bool same_labels(const Structure& c, Configuration x, const Structure& d, Configuration y) {
  std::vector<std::uint32_t> a, b;
  x.for_each([&](EventId e) { a.push_back(c.label(e).id()); });
  y.for_each([&](EventId e) { b.push_back(d.label(e).id()); });
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

} // namespace

StateSpace build_state_space(const Structure& c, const Structure& d, std::size_t cap) {
  StateSpace sp;
  sp.lhs_ = &c;
  sp.rhs_ = &d;
  auto pc = posets(c);
  auto pd = posets(d);
  for (std::size_t i = 0; i < c.num_configs(); ++i)
    for (std::size_t j = 0; j < d.num_configs(); ++j) {
      if (c.config(i).size() != d.config(j).size() ||
          !same_labels(c, c.config(i), d, d.config(j)))
        continue;
      for_each_isomorphism(pc[i], pd[j], [&](const Iso& f) {
        sp.add({i, j, f}, cap);
        return true;
      });
    }
  return sp;
}

StateSpace build_pair_space(const Structure& c, const Structure& d, bool require_iso,
                            std::size_t cap) {
  StateSpace sp;
  sp.lhs_ = &c;
  sp.rhs_ = &d;
  sp.pairs_only_ = true;
  std::vector<LabeledPoset> pc, pd;
  if (require_iso) {
    pc = posets(c);
    pd = posets(d);
  }
  for (std::size_t i = 0; i < c.num_configs(); ++i)
    for (std::size_t j = 0; j < d.num_configs(); ++j) {
      if (require_iso && (c.config(i).size() != d.config(j).size() ||
                          !same_labels(c, c.config(i), d, d.config(j)) || !isomorphic(pc[i], pd[j])))
        continue;
      sp.add({i, j, Iso{}}, cap);
    }
  return sp;
}

std::optional<std::size_t> count_iso_triples(const Structure& c, const Structure& d,
                                             std::size_t cap) {
  auto pc = posets(c);
  auto pd = posets(d);
  std::size_t n = 0;
  for (std::size_t i = 0; i < c.num_configs() && n <= cap; ++i)
    for (std::size_t j = 0; j < d.num_configs() && n <= cap; ++j) {
      if (c.config(i).size() != d.config(j).size() ||
          !same_labels(c, c.config(i), d, d.config(j)))
        continue;
      for_each_isomorphism(pc[i], pd[j], [&](const Iso&) { return ++n <= cap; });
    }
  if (n > cap) return std::nullopt;
  return n;
}

// ---------------------------------------------------------------- refinement

unsigned Refinement::rounds() const {
  unsigned r = 0;
  for (std::size_t i : removal_order) r = std::max(r, generation[i]);
  return r;
}

namespace {

std::vector<std::vector<Challenge>> build_challenges(const StateSpace& sp, BisimKind kind) {
  const Structure& c = sp.lhs();
  const Structure& d = sp.rhs();
  const bool extend = kind == BisimKind::H || kind == BisimKind::HH;
  const bool reverse = kind == BisimKind::HH || kind == BisimKind::HWH;

  std::vector<std::vector<Challenge>> out(sp.size());
  for (std::size_t t = 0; t < sp.size(); ++t) {
    const IsoTriple& st = sp.state(t);
    auto& chs = out[t];

    for (const Structure::Move& m : c.forward(st.x)) {
      Challenge ch{{Side::Lhs, false, m.event}, {}};
      for (const Structure::Move& r : d.forward(st.y)) {
        if (d.label(r.event) != c.label(m.event)) continue;
        if (extend) {
          if (auto k = sp.find(m.target, r.target, st.f.extended(m.event, r.event)))
            ch.responses.push_back(*k);
        } else {
          for (std::size_t k : sp.between(m.target, r.target)) ch.responses.push_back(k);
        }
      }
      chs.push_back(std::move(ch));
    }
    for (const Structure::Move& m : d.forward(st.y)) {
      Challenge ch{{Side::Rhs, false, m.event}, {}};
      for (const Structure::Move& r : c.forward(st.x)) {
        if (c.label(r.event) != d.label(m.event)) continue;
        if (extend) {
          if (auto k = sp.find(r.target, m.target, st.f.extended(r.event, m.event)))
            ch.responses.push_back(*k);
        } else {
          for (std::size_t k : sp.between(r.target, m.target)) ch.responses.push_back(k);
        }
      }
      chs.push_back(std::move(ch));
    }
    if (!reverse) continue;

    // Reverse moves are answered by undoing the image (resp. preimage).
    const Iso inv = st.f.inverse();
    for (const Structure::Move& m : c.reverse(st.x)) {
      Challenge ch{{Side::Lhs, true, m.event}, {}};
      if (auto y2 = d.index_of(d.config(st.y).without(st.f(m.event))))
        if (auto k = sp.find(m.target, *y2, st.f.restricted(c.config(m.target))))
          ch.responses.push_back(*k);
      chs.push_back(std::move(ch));
    }
    for (const Structure::Move& m : d.reverse(st.y)) {
      Challenge ch{{Side::Rhs, true, m.event}, {}};
      EventId e = inv(m.event);
      if (auto x2 = c.index_of(c.config(st.x).without(e)))
        if (auto k = sp.find(*x2, m.target, st.f.restricted(c.config(*x2))))
          ch.responses.push_back(*k);
      chs.push_back(std::move(ch));
    }
  }
  return out;
}

} // namespace

Refinement refine(const Structure& c, const Structure& d, BisimKind kind, const Options& opt) {
  StateSpace sp = kind == BisimKind::IB   ? build_pair_space(c, d, false, opt.state_cap)
                  : kind == BisimKind::WH ? build_pair_space(c, d, true, opt.state_cap)
                                          : build_state_space(c, d, opt.state_cap);
  Refinement r{kind, std::move(sp), {}, {}, {}, {}, {}};
  const std::size_t n = r.space.size();
  r.challenges = build_challenges(r.space, kind);
  r.alive.assign(n, true);
  r.failed.assign(n, -1);
  r.generation.assign(n, 0);

  std::vector<std::vector<std::size_t>> pending(n);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> watchers(n);
  std::deque<std::size_t> queue;

  auto kill = [&](std::size_t t, std::size_t ch) {
    r.alive[t] = false;
    r.failed[t] = static_cast<int>(ch);
    unsigned g = 0;
    for (std::size_t k : r.challenges[t][ch].responses) g = std::max(g, r.generation[k]);
    r.generation[t] = g + 1;
    r.removal_order.push_back(t);
    queue.push_back(t);
  };

  for (std::size_t t = 0; t < n; ++t) {
    pending[t].resize(r.challenges[t].size());
    for (std::size_t ch = 0; ch < r.challenges[t].size(); ++ch) {
      pending[t][ch] = r.challenges[t][ch].responses.size();
      for (std::size_t k : r.challenges[t][ch].responses) watchers[k].emplace_back(t, ch);
    }
  }
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t ch = 0; ch < pending[t].size(); ++ch)
      if (pending[t][ch] == 0) {
        kill(t, ch);
        break;
      }

  while (!queue.empty()) {
    std::size_t k = queue.front();
    queue.pop_front();
    for (auto [t, ch] : watchers[k]) {
      if (!r.alive[t]) continue;
      if (--pending[t][ch] == 0) kill(t, ch);
    }
  }
  return r;
}

Verdict check_equivalence(const Structure& c, const Structure& d, BisimKind kind, const Options& opt) {
  Refinement r = refine(c, d, kind, opt);
  Verdict v;
  v.kind = kind;
  v.equivalent = r.equivalent();
  v.c = r.space.c();
  v.rounds = r.rounds();
  v.states = r.space.size();
  v.s = r.space.pairs_only() ? count_iso_triples(c, d, opt.state_cap)
                             : std::optional<std::size_t>(r.space.size());
  if (v.equivalent) {
    for (std::size_t t = 0; t < r.space.size(); ++t)
      if (r.alive[t]) v.witness.push_back(r.space.state(t));
  } else if (opt.want_formula) {
    v.counterexample = extract_distinguishing(c, d, r, opt.prune);
  }
  return v;
}

// ---------------------------------------------------------------- witness validation

namespace {

using Key = std::tuple<std::uint64_t, std::uint64_t, std::vector<std::pair<EventId, EventId>>>;

} // namespace

std::optional<std::string> validate_witness(const Structure& c, const Structure& d, BisimKind kind,
                                            const std::vector<IsoTriple>& relation) {
  const bool pairs = kind == BisimKind::IB || kind == BisimKind::WH;
  const bool extend = kind == BisimKind::H || kind == BisimKind::HH;
  const bool reverse = kind == BisimKind::HH || kind == BisimKind::HWH;

  std::set<Key> rel;
  std::set<std::pair<std::uint64_t, std::uint64_t>> rel_pairs;
  auto key = [](Configuration x, Configuration y, const Iso& f) {
    return Key{x.bits(), y.bits(), f.pairs()};
  };
  for (const IsoTriple& t : relation) {
    Configuration x = c.config(t.x), y = d.config(t.y);
    rel.insert(key(x, y, t.f));
    rel_pairs.emplace(x.bits(), y.bits());
  }
  if (!rel_pairs.count({0, 0}) || (!pairs && !rel.count(key({}, {}, Iso{}))))
    return "initial state missing";

  auto iso_exists = [&](Configuration x, Configuration y) {
    return isomorphic(causality_poset(c, x), causality_poset(d, y));
  };

  for (const IsoTriple& t : relation) {
    Configuration x = c.config(t.x), y = d.config(t.y);
    const std::string at = c.render_config(x) + "/" + d.render_config(y);
    if (kind == BisimKind::WH && !iso_exists(x, y)) return "not isomorphic at " + at;
    if (!pairs && !is_isomorphism(causality_poset(c, x), causality_poset(d, y), t.f))
      return "not an isomorphism at " + at;

    auto matched = [&](Configuration x2, EventId e, Configuration y2, EventId e2) {
      if (pairs) return rel_pairs.count({x2.bits(), y2.bits()}) != 0;
      if (extend) return rel.count(key(x2, y2, t.f.extended(e, e2))) != 0;
      for (const Iso& g : poset_isomorphisms(causality_poset(c, x2), causality_poset(d, y2)))
        if (rel.count(key(x2, y2, g))) return true;
      return false;
    };
    for (auto [e, x2] : forward_transitions(c, x)) {
      bool ok = false;
      for (auto [e2, y2] : forward_transitions(d, y))
        ok = ok || (c.label(e) == d.label(e2) && matched(x2, e, y2, e2));
      if (!ok) return "lhs move " + c.event_name(e) + " unmatched at " + at;
    }
    for (auto [e2, y2] : forward_transitions(d, y)) {
      bool ok = false;
      for (auto [e, x2] : forward_transitions(c, x))
        ok = ok || (c.label(e) == d.label(e2) && matched(x2, e, y2, e2));
      if (!ok) return "rhs move " + d.event_name(e2) + " unmatched at " + at;
    }
    if (!reverse) continue;
    for (auto [e, x2] : reverse_transitions(c, x)) {
      Configuration y2 = y.without(t.f(e));
      if (!d.is_config(y2) || !rel.count(key(x2, y2, t.f.restricted(x2))))
        return "lhs reverse " + c.event_name(e) + " unmatched at " + at;
    }
    Iso inv = t.f.inverse();
    for (auto [e2, y2] : reverse_transitions(d, y)) {
      Configuration x2 = x.without(inv(e2));
      if (!c.is_config(x2) || !rel.count(key(x2, y2, t.f.restricted(x2))))
        return "rhs reverse " + d.event_name(e2) + " unmatched at " + at;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- safety game

GameSolution solve_game(const Structure& c, const Structure& d, std::size_t cap) {
  GameSolution sol;
  sol.space = build_state_space(c, d, cap);
  const StateSpace& sp = sol.space;
  const std::size_t n = sp.size();

  // Positions 0..n-1 belong to the attacker; each attacker move opens a
  // defender position listing the legal answers.
  struct DefenderPos {
    std::size_t owner;
    Move move;
    std::vector<std::size_t> answers;
  };
  std::vector<DefenderPos> dpos;
  std::vector<std::vector<std::size_t>> moves(n);
  for (std::size_t t = 0; t < n; ++t) {
    const IsoTriple& st = sp.state(t);
    auto open = [&](Move mv) {
      moves[t].push_back(dpos.size());
      dpos.push_back({t, mv, {}});
      return &dpos.back().answers;
    };
    for (const auto& m : c.forward(st.x)) {
      auto* ans = open({Side::Lhs, false, m.event});
      for (const auto& r : d.forward(st.y))
        if (c.label(m.event) == d.label(r.event))
          if (auto k = sp.find(m.target, r.target, st.f.extended(m.event, r.event))) ans->push_back(*k);
    }
    for (const auto& m : d.forward(st.y)) {
      auto* ans = open({Side::Rhs, false, m.event});
      for (const auto& r : c.forward(st.x))
        if (c.label(r.event) == d.label(m.event))
          if (auto k = sp.find(r.target, m.target, st.f.extended(r.event, m.event))) ans->push_back(*k);
    }
    for (const auto& m : c.reverse(st.x)) {
      auto* ans = open({Side::Lhs, true, m.event});
      Configuration y2 = d.config(st.y).without(st.f(m.event));
      if (auto j = d.index_of(y2))
        if (auto k = sp.find(m.target, *j, st.f.restricted(c.config(m.target)))) ans->push_back(*k);
    }
    const Iso inv = st.f.inverse();
    for (const auto& m : d.reverse(st.y)) {
      auto* ans = open({Side::Rhs, true, m.event});
      Configuration x2 = c.config(st.x).without(inv(m.event));
      if (auto i = c.index_of(x2))
        if (auto k = sp.find(*i, m.target, st.f.restricted(x2))) ans->push_back(*k);
    }
  }

  std::vector<std::vector<std::size_t>> into(n);  // attacker position -> defender positions answering into it
  std::vector<std::size_t> remaining(dpos.size());
  for (std::size_t p = 0; p < dpos.size(); ++p) {
    remaining[p] = dpos[p].answers.size();
    for (std::size_t k : dpos[p].answers) into[k].push_back(p);
  }

  constexpr long kNone = -1;
  std::vector<long> rank(n, kNone);    // attractor rank of attacker positions
  std::vector<long> drank(dpos.size(), kNone);
  std::deque<std::size_t> queue;
  for (std::size_t p = 0; p < dpos.size(); ++p)
    if (remaining[p] == 0) {
      drank[p] = 0;
      std::size_t t = dpos[p].owner;
      if (rank[t] == kNone) {
        rank[t] = 1;
        queue.push_back(t);
      }
    }
  while (!queue.empty()) {
    std::size_t t = queue.front();
    queue.pop_front();
    for (std::size_t p : into[t]) {
      if (drank[p] != kNone || --remaining[p] != 0) continue;
      drank[p] = rank[t];
      std::size_t owner = dpos[p].owner;
      if (rank[owner] == kNone) {
        rank[owner] = rank[t] + 1;
        queue.push_back(owner);
      }
    }
  }

  sol.defender_wins = rank[sp.initial()] == kNone;
  for (std::size_t t = 0; t < n; ++t) {
    if (rank[t] != kNone) continue;
    auto& entry = sol.strategy[t];
    for (std::size_t p : moves[t])
      for (std::size_t k : dpos[p].answers)
        if (rank[k] == kNone) {
          entry.emplace_back(dpos[p].move, k);
          break;
        }
  }
  if (!sol.defender_wins) {
    std::size_t t = sp.initial();
    sol.losing_trace.push_back(t);
    for (;;) {
      std::size_t best = moves[t].front();
      for (std::size_t p : moves[t])
        if (drank[p] != kNone && (drank[best] == kNone || drank[p] < drank[best])) best = p;
      if (dpos[best].answers.empty()) break;
      std::size_t next = dpos[best].answers.front();
      for (std::size_t k : dpos[best].answers)
        if (rank[k] > rank[next]) next = k;
      t = next;
      sol.losing_trace.push_back(t);
    }
  }
  return sol;
}

} // namespace truecon
