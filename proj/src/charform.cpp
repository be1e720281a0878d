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

#include "truecon/charform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace truecon {

Ident event_ident(EventId e, char prefix) {
  return Ident(std::string(1, prefix) + std::to_string(e + 1));
}

std::vector<EventId> topological_order(const Structure& s, Configuration x) {
  const std::size_t idx = s.require(x);
  std::vector<EventId> out;
  EventSet done;
  while (out.size() < x.size()) {
    // Smallest remaining event whose causes are all placed.
    for (EventId e : (x - done).members())
      if (s.below(idx, e).subset_of(done)) {
        out.push_back(e);
        done.insert(e);
        break;
      }
  }
  return out;
}

namespace {

Formula reverse_chain(const std::vector<Ident>& xs, Formula tail) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) tail = reverse(*it, std::move(tail));
  return tail;
}

} // namespace

Formula theta_open(const Structure& s, Configuration x, char prefix) {
  const std::size_t idx = s.require(x);
  const std::vector<EventId> ev = topological_order(s, x);
  const std::size_t n = ev.size();
  std::vector<Ident> z;
  for (EventId e : ev) z.push_back(event_ident(e, prefix));

  std::vector<Formula> parts;
  parts.push_back(reverse_chain(std::vector<Ident>(z.rbegin(), z.rend()), tt()));

  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Ident> chain;
    for (std::size_t i = n; i > k; --i) chain.push_back(z[i - 1]);
    // Greedily undo e_{k-1} .. e_1 while they are maximal in what is left.
    EventSet left;
    for (std::size_t i = 0; i < k; ++i) left.insert(ev[i]);
    std::vector<Formula> stuck;
    for (std::size_t j = k - 1; j >= 1; --j) {
      EventId e = ev[j - 1];
      bool maximal = true;
      left.for_each([&](EventId d) { maximal = maximal && !s.less(idx, e, d); });
      if (maximal) {
        chain.push_back(z[j - 1]);
        left.erase(e);
      }
    }
    for (std::size_t j = 1; j < k; ++j)
      if (s.less(idx, ev[j - 1], ev[k - 1])) stuck.push_back(neg(reverse(z[j - 1], tt())));
    Formula f = reverse_chain(chain, conj(std::move(stuck)));
    if (f.op() != Op::Tt) parts.push_back(std::move(f));
  }
  return conj(std::move(parts));
}

Environment theta_convention(const Structure& s, Configuration x, char prefix) {
  (void)s.require(x);
  Environment rho;
  x.for_each([&](EventId e) { rho.bind(event_ident(e, prefix), e); });
  return rho;
}

Formula theta_closed(const Structure& s, Configuration x) {
  const std::vector<EventId> ev = topological_order(s, x);
  Formula f = theta_open(s, x);
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) f = declare(event_ident(*it), s.label(*it), f);
  return f;
}

std::vector<Label> union_alphabet(const Structure& c, const Structure& d) {
  std::vector<Label> out = c.alphabet();
  for (Label a : d.alphabet())
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  std::sort(out.begin(), out.end(), ByName{});
  return out;
}

namespace {

Ident box_ident(std::size_t config) { return Ident("x" + std::to_string(config)); }

class Builder {
 public:
  Builder(const Structure& s, const std::vector<Label>& act, std::size_t guard)
      : s_(s), act_(act), guard_(guard) {}

  // H and HH share the forward part; depth < 0 means the H variant.
  Formula chi(std::size_t x, int depth) {
    auto key = std::make_pair(x, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Formula> parts{theta(x)};
    if (depth != 0) {
      const int next = depth < 0 ? depth : depth - 1;
      for (const auto& m : s_.forward(x))
        parts.push_back(diamond(event_ident(m.event), s_.label(m.event), chi(m.target, next)));
      const Ident w = box_ident(x);
      for (Label a : act_) {
        std::vector<Formula> alts;
        for (const auto& m : s_.forward(x))
          if (s_.label(m.event) == a)
            alts.push_back(subst_.apply(chi(m.target, next), {{w, event_ident(m.event)}}));
        parts.push_back(box(w, a, disj(std::move(alts))));
      }
      if (depth > 0)
        for (const auto& m : s_.reverse(x))
          parts.push_back(reverse(event_ident(m.event), chi(m.target, next)));
    }
    Formula f = conj(std::move(parts));
    check_guard();
    memo_.emplace(key, f);
    return f;
  }

  Formula chi_wh(std::size_t x) {
    if (auto it = wh_.find(x); it != wh_.end()) return it->second;
    std::vector<Formula> parts{theta_closed(s_, s_.config(x))};
    for (const auto& m : s_.forward(x)) parts.push_back(label_diamond(s_.label(m.event), chi_wh(m.target)));
    for (Label a : act_) {
      std::vector<Formula> alts;
      for (const auto& m : s_.forward(x))
        if (s_.label(m.event) == a) alts.push_back(chi_wh(m.target));
      parts.push_back(label_box(a, disj(std::move(alts))));
    }
    Formula f = conj(std::move(parts));
    check_guard();
    wh_.emplace(x, f);
    return f;
  }

  FormulaDag finish(Formula root) {
    FormulaDag dag{root, dag_size(root), modal_depth(root)};
    if (dag.nodes > guard_)
      throw DagTooLarge("characteristic formula exceeds " + std::to_string(guard_) + " nodes");
    return dag;
  }

 private:
  Formula theta(std::size_t x) {
    if (auto it = theta_.find(x); it != theta_.end()) return it->second;
    return theta_.emplace(x, theta_open(s_, s_.config(x))).first->second;
  }

  void check_guard() {
    if (++built_ + subst_.size() > guard_)
      throw DagTooLarge("characteristic formula exceeds " + std::to_string(guard_) + " nodes");
  }

  const Structure& s_;
  const std::vector<Label>& act_;
  std::size_t guard_;
  std::size_t built_ = 0;
  SubstitutionCache subst_;
  std::map<std::pair<std::size_t, int>, Formula> memo_;
  std::map<std::size_t, Formula> wh_;
  std::map<std::size_t, Formula> theta_;
};

} // namespace

Formula char_formula_hh_at(const Structure& s, Configuration x, unsigned depth,
                           const std::vector<Label>& act, std::size_t guard) {
  Builder b(s, act, guard);
  return b.finish(b.chi(s.require(x), static_cast<int>(depth))).root;
}

FormulaDag char_formula_hh(const Structure& s, unsigned depth, const std::vector<Label>& act,
                           std::size_t guard) {
  Builder b(s, act, guard);
  return b.finish(b.chi(0, static_cast<int>(depth)));
}

FormulaDag char_formula_h(const Structure& s, const std::vector<Label>& act, std::size_t guard) {
  Builder b(s, act, guard);
  return b.finish(b.chi(0, -1));
}

FormulaDag char_formula_wh(const Structure& s, const std::vector<Label>& act, std::size_t guard) {
  Builder b(s, act, guard);
  return b.finish(b.chi_wh(0));
}

FormulaDag char_formula(const Structure& s, CharKind kind, unsigned depth,
                        const std::vector<Label>& act, std::size_t guard) {
  switch (kind) {
    case CharKind::HH: return char_formula_hh(s, depth, act, guard);
    case CharKind::H: return char_formula_h(s, act, guard);
    case CharKind::WH: return char_formula_wh(s, act, guard);
  }
  return {};
}

} // namespace truecon
