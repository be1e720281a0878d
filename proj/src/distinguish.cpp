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

#include "truecon/distinguish.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "truecon/charform.hpp"
#include "truecon/eval.hpp"
#include "truecon/frontend.hpp"

namespace truecon {

Sublogic sublogic_of(BisimKind kind) {
  switch (kind) {
    case BisimKind::HH: return Sublogic::EIL;
    case BisimKind::H: return Sublogic::EIL_h;
    case BisimKind::HWH: return Sublogic::EIL_hwh;
    case BisimKind::WH:
    case BisimKind::IB: return Sublogic::EIL_wh;
  }
  return Sublogic::EIL;
}

namespace {

// For a removed state t = (X, Y, f) the formula phi(t) satisfies
//   X, rho_X |= phi(t)   and   Y, f o rho_X |/= phi(t)
// where rho_X maps z<e+1> to e. In pair spaces both environments are empty
// and phi(t) is closed.
class Extractor {
 public:
  Extractor(const Structure& c, const Structure& d, const Refinement& r, bool prune)
      : c_(c), d_(d), r_(r), sp_(r.space), prune_(prune), ec_(c), ed_(d) {}

  Formula phi(std::size_t t) {
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    if (r_.alive[t] || r_.failed[t] < 0)
      throw InternalVerificationFailed("distinguishing formula requested for a surviving state");
    const Challenge& ch = r_.challenges[t][static_cast<std::size_t>(r_.failed[t])];
    Formula f;
    if (sp_.pairs_only())
      f = ch.move.side == Side::Lhs ? pair_lhs(t, ch) : pair_rhs(t, ch);
    else if (ch.move.reverse)
      f = ch.move.side == Side::Lhs ? reverse_lhs(t, ch) : reverse_rhs(t, ch);
    else if (r_.kind == BisimKind::HWH)
      f = ch.move.side == Side::Lhs ? hwh_lhs(t, ch) : hwh_rhs(t, ch);
    else
      f = ch.move.side == Side::Lhs ? forward_lhs(t, ch) : forward_rhs(t, ch);
    if (!separates(t, f))
      throw InternalVerificationFailed("constructed formula does not separate state " +
                                       std::to_string(t));
    memo_.emplace(t, f);
    return f;
  }

  bool separates(std::size_t t, const Formula& f) {
    const IsoTriple& st = sp_.state(t);
    Configuration x = c_.config(st.x), y = d_.config(st.y);
    if (sp_.pairs_only()) return ec_.satisfies(x, {}, f) && !ed_.satisfies(y, {}, f);
    Environment rx, ry;
    x.for_each([&](EventId e) {
      rx.bind(event_ident(e), e);
      ry.bind(event_ident(e), st.f(e));
    });
    return ec_.satisfies(x, rx, f) && !ed_.satisfies(y, ry, f);
  }

 private:
  // Drops items from the end backwards while `build(kept)` still separates t.
  Formula pruned(std::size_t t, std::vector<Formula> items,
                 const std::function<Formula(std::vector<Formula>)>& build) {
    dedupe(items);
    if (prune_ && items.size() > 1)
      for (std::size_t i = items.size(); i-- > 0;) {
        std::vector<Formula> trial = items;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (separates(t, build(trial))) items = std::move(trial);
      }
    return build(std::move(items));
  }

  static void dedupe(std::vector<Formula>& items) {
    std::vector<Formula> out;
    for (Formula& f : items)
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
    items = std::move(out);
  }

  Formula theta_lhs(std::size_t x) {
    if (auto it = theta_c_.find(x); it != theta_c_.end()) return it->second;
    return theta_c_.emplace(x, theta_open(c_, c_.config(x))).first->second;
  }

  // ---- H and HH forward moves

  Formula forward_lhs(std::size_t t, const Challenge& ch) {
    const IsoTriple& st = sp_.state(t);
    const EventId e = ch.move.event;
    const std::size_t x2 = target(c_, st.x, e);
    std::vector<Formula> items;
    for (const auto& m : d_.forward(st.y)) {
      if (d_.label(m.event) != c_.label(e)) continue;
      auto k = sp_.find(x2, m.target, st.f.extended(e, m.event));
      if (k) {
        items.push_back(phi(*k));
      } else {
        // Conjuncts of theta' are pruned one by one.
        Formula th = theta_lhs(x2);
        if (th.op() == Op::And)
          items.insert(items.end(), th->kids.begin(), th->kids.end());
        else
          items.push_back(th);
      }
    }
    const Ident z = event_ident(e);
    const Label a = c_.label(e);
    return pruned(t, std::move(items), [&](std::vector<Formula> v) { return diamond(z, a, conj(std::move(v))); });
  }

  Formula forward_rhs(std::size_t t, const Challenge& ch) {
    const IsoTriple& st = sp_.state(t);
    const EventId e2 = ch.move.event;
    const std::size_t y2 = target(d_, st.y, e2);
    const Ident w = Ident("w" + std::to_string(st.x));
    std::vector<Formula> items;
    for (const auto& m : c_.forward(st.x)) {
      if (c_.label(m.event) != d_.label(e2)) continue;
      auto k = sp_.find(m.target, y2, st.f.extended(m.event, e2));
      items.push_back(subst_.apply(k ? phi(*k) : theta_lhs(m.target), {{w, event_ident(m.event)}}));
    }
    const Label a = d_.label(e2);
    return pruned(t, std::move(items), [&](std::vector<Formula> v) { return box(w, a, disj(std::move(v))); });
  }

  // ---- reverse moves (HH, HWH)

  Formula reverse_lhs(std::size_t, const Challenge& ch) {
    const Ident z = event_ident(ch.move.event);
    if (ch.responses.empty()) return reverse(z, tt());
    return reverse(z, phi(ch.responses.front()));
  }

  Formula reverse_rhs(std::size_t t, const Challenge& ch) {
    const IsoTriple& st = sp_.state(t);
    const Ident z = event_ident(st.f.inverse()(ch.move.event));
    if (ch.responses.empty()) return neg(reverse(z, tt()));
    return neg(reverse(z, neg(phi(ch.responses.front()))));
  }

  // ---- HWH forward moves: any isomorphism may answer, so the continuation
  // redeclares every event of the target configuration.

  Formula hwh_lhs(std::size_t t, const Challenge& ch) {
    const IsoTriple& st = sp_.state(t);
    const EventId e = ch.move.event;
    const std::size_t x2 = target(c_, st.x, e);
    std::vector<Formula> items;
    for (const auto& m : d_.forward(st.y)) {
      if (d_.label(m.event) != c_.label(e)) continue;
      for (std::size_t k : sp_.between(x2, m.target)) items.push_back(phi(k));
    }
    const Formula th = theta_lhs(x2);
    const std::vector<EventId> order = topological_order(c_, c_.config(x2));
    const Label a = c_.label(e);
    return pruned(t, std::move(items), [&](std::vector<Formula> v) {
      v.insert(v.begin(), th);
      Formula body = conj(std::move(v));
      for (auto it = order.rbegin(); it != order.rend(); ++it)
        body = declare(event_ident(*it), c_.label(*it), body);
      return label_diamond(a, body);
    });
  }

  Formula hwh_rhs(std::size_t t, const Challenge& ch) {
    const IsoTriple& st = sp_.state(t);
    const EventId e2 = ch.move.event;
    const std::size_t y2 = target(d_, st.y, e2);
    std::vector<Formula> items;
    for (const auto& m : c_.forward(st.x)) {
      if (c_.label(m.event) != d_.label(e2)) continue;
      for (std::size_t k : sp_.between(m.target, y2)) {
        const Iso& g = sp_.state(k).f;
        std::vector<std::pair<Ident, Ident>> ren;
        c_.config(m.target).for_each(
            [&](EventId dd) { ren.emplace_back(event_ident(g(dd), 'u'), event_ident(dd)); });
        items.push_back(neg(subst_.apply(phi(k), ren)));
      }
    }
    const Formula th = theta_open(d_, d_.config(y2), 'u');
    const std::vector<EventId> order = topological_order(d_, d_.config(y2));
    const Label a = d_.label(e2);
    return pruned(t, std::move(items), [&](std::vector<Formula> v) {
      v.insert(v.begin(), th);
      Formula body = conj(std::move(v));
      for (auto it = order.rbegin(); it != order.rend(); ++it)
        body = declare(event_ident(*it, 'u'), d_.label(*it), body);
      return neg(label_diamond(a, body));
    });
  }

  // ---- IB and WH: closed formulas over configuration pairs

  Formula pair_lhs(std::size_t t, const Challenge& ch) {
    const IsoTriple& st = sp_.state(t);
    const EventId e = ch.move.event;
    const std::size_t x2 = target(c_, st.x, e);
    std::vector<Formula> items;
    for (const auto& m : d_.forward(st.y)) {
      if (d_.label(m.event) != c_.label(e)) continue;
      const auto& ks = sp_.between(x2, m.target);
      items.push_back(ks.empty() ? theta_closed(c_, c_.config(x2)) : phi(ks.front()));
    }
    const Label a = c_.label(e);
    return pruned(t, std::move(items), [&](std::vector<Formula> v) { return label_diamond(a, conj(std::move(v))); });
  }

  Formula pair_rhs(std::size_t t, const Challenge& ch) {
    const IsoTriple& st = sp_.state(t);
    const EventId e2 = ch.move.event;
    const std::size_t y2 = target(d_, st.y, e2);
    std::vector<Formula> items;
    for (const auto& m : c_.forward(st.x)) {
      if (c_.label(m.event) != d_.label(e2)) continue;
      const auto& ks = sp_.between(m.target, y2);
      items.push_back(ks.empty() ? theta_closed(d_, d_.config(y2)) : neg(phi(ks.front())));
    }
    const Label a = d_.label(e2);
    return pruned(t, std::move(items),
                  [&](std::vector<Formula> v) { return neg(label_diamond(a, conj(std::move(v)))); });
  }

  static std::size_t target(const Structure& s, std::size_t from, EventId e) {
    for (const auto& m : s.forward(from))
      if (m.event == e) return m.target;
    throw InternalVerificationFailed("missing transition on " + s.event_name(e));
  }

  const Structure& c_;
  const Structure& d_;
  const Refinement& r_;
  const StateSpace& sp_;
  bool prune_;
  Evaluator ec_, ed_;
  SubstitutionCache subst_;
  std::map<std::size_t, Formula> memo_;
  std::map<std::size_t, Formula> theta_c_;
};

} // namespace

Counterexample extract_distinguishing(const Structure& c, const Structure& d, const Refinement& r,
                                      bool prune) {
  if (r.equivalent()) throw InternalVerificationFailed("structures are equivalent");
  Extractor ex(c, d, r, prune);
  Formula phi = ex.phi(r.space.initial());

  Counterexample out{phi, Side::Lhs, 0};
  if (phi.op() == Op::Neg) out = {phi.kid(), Side::Rhs, 0};
  out.depth = modal_depth(out.formula);

  const bool on_c = satisfies(c, out.formula);
  const bool on_d = satisfies(d, out.formula);
  if (on_c == on_d || on_c != (out.side == Side::Lhs))
    throw InternalVerificationFailed("distinguishing formula " + render_formula(out.formula) +
                                     " does not separate the structures");
  if (!in_sublogic(out.formula, sublogic_of(r.kind)))
    throw InternalVerificationFailed("distinguishing formula " + render_formula(out.formula) +
                                     " lies outside " + to_string(sublogic_of(r.kind)));
  if (r.kind == BisimKind::HH) {
    const std::size_t s = r.space.size();
    if (out.depth > s + r.space.c())
      throw InternalVerificationFailed("distinguishing formula deeper than s + c");
  }
  return out;
}

std::optional<Counterexample> distinguishing_formula(const Structure& c, const Structure& d,
                                                     BisimKind kind, const Options& opt) {
  Options o = opt;
  o.want_formula = true;
  Verdict v = check_equivalence(c, d, kind, o);
  return v.counterexample;
}

} // namespace truecon
