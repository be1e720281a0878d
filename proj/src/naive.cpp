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

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "truecon/harness.hpp"

namespace truecon {

namespace {

struct Naive {
  const Structure& s;

  bool config(Configuration x) const {
    for (Configuration y : s.configs())
      if (y == x) return true;
    return false;
  }

  // X' with X -e-> X' for some e labelled a (any label when a is empty).
  std::vector<std::pair<EventId, Configuration>> forward(Configuration x, std::optional<Label> a) const {
    std::vector<std::pair<EventId, Configuration>> out;
    for (EventId e = 0; e < s.num_events(); ++e)
      if (!x.contains(e) && (!a || s.label(e) == *a) && config(x.with(e))) out.emplace_back(e, x.with(e));
    return out;
  }

  bool reversible(Configuration x, EventId e) const { return x.contains(e) && config(x.without(e)); }

  // Images of the free identifiers of f.
  static std::set<EventId> images(const NaiveEnv& rho, const Formula& f) {
    std::set<EventId> out;
    for (Ident x : f->free) out.insert(rho.at(x));
    return out;
  }

  // X -A-> Y: Y \ X labelled by the multiset A, no causal order among the
  // new events inside Y.
  bool step(Configuration x, Configuration y, const std::vector<Label>& a) const {
    if (!x.subset_of(y) || y.size() != x.size() + a.size()) return false;
    Configuration diff = y - x;
    std::vector<std::string> want, got;
    for (Label l : a) want.push_back(l.name());
    diff.for_each([&](EventId e) { got.push_back(s.label(e).name()); });
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) return false;
    bool ok = true;
    diff.for_each([&](EventId e) {
      diff.for_each([&](EventId d) {
        if (d == e) return;
        // d causes e in y when every sub-configuration holding e holds d.
        bool causes = true;
        for (Configuration z : s.configs())
          if (z.subset_of(y) && z.contains(e) && !z.contains(d)) causes = false;
        if (causes) ok = false;
      });
    });
    return ok;
  }

  bool sat(Configuration x, const NaiveEnv& rho, const Formula& f) const {
    switch (f.op()) {
      case Op::Tt: return true;
      case Op::Ff: return false;
      case Op::Neg: return !sat(x, rho, f.kid());
      case Op::And:
        for (const Formula& k : f->kids)
          if (!sat(x, rho, k)) return false;
        return true;
      case Op::Or:
        for (const Formula& k : f->kids)
          if (sat(x, rho, k)) return true;
        return false;
      case Op::Diamond:
      case Op::Box: {
        const bool any = f.op() == Op::Diamond;
        for (auto [e, y] : forward(x, f->label)) {
          NaiveEnv r = rho;
          r[f->ident] = e;
          if (sat(y, r, f.kid()) == any) return any;
        }
        return !any;
      }
      case Op::LDiamond:
      case Op::LBox: {
        const bool any = f.op() == Op::LDiamond;
        for (auto [e, y] : forward(x, f->label))
          if (sat(y, rho, f.kid()) == any) return any;
        return !any;
      }
      case Op::Declare:
        for (EventId e : x.members())
          if (s.label(e) == f->label) {
            NaiveEnv r = rho;
            r[f->ident] = e;
            if (sat(x, r, f.kid())) return true;
          }
        return false;
      case Op::Reverse:
      case Op::RevBox: {
        const bool any = f.op() == Op::Reverse;
        const EventId e = rho.at(f->ident);
        if (!reversible(x, e) || images(rho, f.kid()).count(e)) return !any;
        return sat(x.without(e), rho, f.kid()) == any ? any : !any;
      }
      case Op::LReverse:
      case Op::LRevBox: {
        const bool any = f.op() == Op::LReverse;
        const auto imgs = images(rho, f.kid());
        for (EventId e : x.members())
          if (s.label(e) == f->label && reversible(x, e) && !imgs.count(e))
            if (sat(x.without(e), rho, f.kid()) == any) return any;
        return !any;
      }
      case Op::Step:
        for (Configuration y : s.configs())
          if (step(x, y, f->labels) && sat(y, rho, f.kid())) return true;
        return false;
      case Op::RevStep: {
        const auto imgs = images(rho, f.kid());
        for (Configuration w : s.configs()) {
          if (!step(w, x, f->labels)) continue;
          bool kept = std::all_of(imgs.begin(), imgs.end(), [&](EventId e) { return w.contains(e); });
          if (kept && sat(w, rho, f.kid())) return true;
        }
        return false;
      }
    }
    return false;
  }
};

} // namespace

bool naive_satisfies(const Structure& s, Configuration x, const NaiveEnv& rho, const Formula& f) {
  Naive n{s};
  if (!n.config(x)) throw NotAConfiguration("not a configuration: " + s.render_config(x));
  for (Ident id : f->free) {
    auto it = rho.find(id);
    if (it == rho.end() || !x.contains(it->second))
      throw NotPermissible("environment not permissible for " + id.name());
  }
  return n.sat(x, rho, f);
}

// ---------------------------------------------------------------- literal game

namespace {

struct Triple {
  Configuration x, y;
  std::vector<std::pair<EventId, EventId>> f;  // sorted by domain
  friend bool operator<(const Triple& a, const Triple& b) {
    return std::forward_as_tuple(a.x.bits(), a.y.bits(), a.f) < std::forward_as_tuple(b.x.bits(), b.y.bits(), b.f);
  }
};

class LiteralGame {
 public:
  LiteralGame(const Structure& c, const Structure& d, std::size_t budget) : c_(c), d_(d), budget_(budget) {}

  // Builds every position reachable through isomorphic answers, then
  // removes positions with an unanswerable challenge until none is left.
  bool defender_wins() {
    const Triple init{{}, {}, {}};
    std::map<Triple, std::size_t> index{{init, 0}};
    std::vector<std::vector<std::vector<std::size_t>>> moves;
    pos_.assign(1, init);
    for (std::size_t i = 0; i < pos_.size(); ++i) {
      if (pos_.size() > budget_) throw BudgetExceeded("literal game search exceeded its budget");
      std::vector<std::vector<std::size_t>> ms;
      for (const auto& answers : challenges(pos_[i])) {
        std::vector<std::size_t> ok;
        for (const Triple& r : answers) {
          if (!iso(r)) continue;
          auto [it, fresh] = index.emplace(r, pos_.size());
          if (fresh) pos_.push_back(r);
          ok.push_back(it->second);
        }
        ms.push_back(std::move(ok));
      }
      moves.push_back(std::move(ms));
    }
    std::vector<char> alive(pos_.size(), 1);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < pos_.size(); ++i) {
        if (!alive[i]) continue;
        for (const auto& ok : moves[i])
          if (std::none_of(ok.begin(), ok.end(), [&](std::size_t j) { return alive[j] != 0; })) {
            alive[i] = 0;
            changed = true;
            break;
          }
      }
    }
    return alive[0] != 0;
  }

 private:
  // d <_x e by the sub-configuration definition.
  static bool less(const Structure& s, Configuration x, EventId d, EventId e) {
    if (d == e) return false;
    for (Configuration z : s.configs())
      if (z.subset_of(x) && z.contains(e) && !z.contains(d)) return false;
    return true;
  }

  bool iso(const Triple& t) const {
    for (auto [a, b] : t.f)
      if (c_.label(a) != d_.label(b)) return false;
    for (auto [a1, b1] : t.f)
      for (auto [a2, b2] : t.f)
        if (less(c_, t.x, a1, a2) != less(d_, t.y, b1, b2)) return false;
    return true;
  }

  static Triple extend(const Triple& t, EventId a, EventId b) {
    Triple r{t.x.with(a), t.y.with(b), t.f};
    r.f.emplace_back(a, b);
    std::sort(r.f.begin(), r.f.end());
    return r;
  }

  static bool is_config(const Structure& s, Configuration x) { return s.is_config(x); }

  // Defender answer to an attacker move: candidate triples (not yet checked
  // for being isomorphisms).
  std::vector<std::vector<Triple>> challenges(const Triple& t) const {
    std::vector<std::vector<Triple>> out;
    for (EventId a = 0; a < c_.num_events(); ++a) {
      if (t.x.contains(a) || !is_config(c_, t.x.with(a))) continue;
      std::vector<Triple> ans;
      for (EventId b = 0; b < d_.num_events(); ++b)
        if (!t.y.contains(b) && is_config(d_, t.y.with(b)) && c_.label(a) == d_.label(b))
          ans.push_back(extend(t, a, b));
      out.push_back(std::move(ans));
    }
    for (EventId b = 0; b < d_.num_events(); ++b) {
      if (t.y.contains(b) || !is_config(d_, t.y.with(b))) continue;
      std::vector<Triple> ans;
      for (EventId a = 0; a < c_.num_events(); ++a)
        if (!t.x.contains(a) && is_config(c_, t.x.with(a)) && c_.label(a) == d_.label(b))
          ans.push_back(extend(t, a, b));
      out.push_back(std::move(ans));
    }
    for (auto [a, b] : t.f) {
      Triple r{t.x.without(a), t.y.without(b), {}};
      for (auto p : t.f)
        if (p.first != a) r.f.push_back(p);
      const bool cx = is_config(c_, r.x), cy = is_config(d_, r.y);
      // Attacker may undo a on the left or b on the right; the answer is forced.
      if (cx) out.push_back(cy ? std::vector<Triple>{r} : std::vector<Triple>{});
      if (cy) out.push_back(cx ? std::vector<Triple>{r} : std::vector<Triple>{});
    }
    return out;
  }

  const Structure& c_;
  const Structure& d_;
  std::size_t budget_;
  std::vector<Triple> pos_;
};

} // namespace

bool naive_game_hh(const Structure& c, const Structure& d, std::size_t budget) {
  return LiteralGame(c, d, budget).defender_wins();
}

// ---------------------------------------------------------------- random formulas

Formula random_formula(std::mt19937& rng, const std::vector<Label>& labels,
                       const std::vector<Ident>& free, unsigned depth) {
  static const char* const names[] = {"x", "y", "z", "w"};
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto label = [&] { return labels.empty() ? Label("a") : labels[pick(labels.size())]; };
  if (depth == 0) return pick(4) == 0 ? ff() : tt();

  std::vector<Ident> scope = free;
  auto sub = [&](const std::vector<Ident>& sc) { return random_formula(rng, labels, sc, depth - 1); };
  auto bound = [&] {
    Ident x(names[pick(4)]);
    std::vector<Ident> sc = scope;
    if (std::find(sc.begin(), sc.end(), x) == sc.end()) sc.push_back(x);
    return std::make_pair(x, sc);
  };
  switch (pick(14)) {
    case 0: return neg(sub(scope));
    case 1: return conj({sub(scope), sub(scope)});
    case 2: return disj({sub(scope), sub(scope)});
    case 3: {
      auto [x, sc] = bound();
      return diamond(x, label(), sub(sc));
    }
    case 4: {
      auto [x, sc] = bound();
      return declare(x, label(), sub(sc));
    }
    case 5: {
      auto [x, sc] = bound();
      return box(x, label(), sub(sc));
    }
    case 6:
    case 7:
      if (!scope.empty()) return reverse(scope[pick(scope.size())], sub(scope));
      return label_reverse(label(), sub(scope));
    case 8:
      if (!scope.empty()) return rev_box(scope[pick(scope.size())], sub(scope));
      return label_rev_box(label(), sub(scope));
    case 9: return label_diamond(label(), sub(scope));
    case 10: return label_box(label(), sub(scope));
    case 11: return label_reverse(label(), sub(scope));
    case 12: return step({label(), label()}, sub(scope));
    default: return rev_step({label(), label()}, sub(scope));
  }
}

} // namespace truecon
