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

#include "truecon/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace truecon {

bool is_core(Op op) {
  switch (op) {
    case Op::Tt:
    case Op::Neg:
    case Op::And:
    case Op::Diamond:
    case Op::Declare:
    case Op::Reverse:
      return true;
    default:
      return false;
  }
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

bool binds(Op op) { return op == Op::Diamond || op == Op::Declare || op == Op::Box; }
bool names_event(Op op) { return op == Op::Reverse || op == Op::RevBox; }

void insert_sorted(std::vector<Ident>& v, Ident x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

} // namespace

Formula make_node(FormulaNode n) {
  n.core = is_core(n.op);
  unsigned d = 0;
  for (const Formula& k : n.kids) {
    n.core = n.core && k->core;
    d = std::max(d, k->depth);
  }
  n.free.clear();
  for (const Formula& k : n.kids)
    for (Ident x : k->free) insert_sorted(n.free, x);
  if (binds(n.op)) {
    auto it = std::lower_bound(n.free.begin(), n.free.end(), n.ident);
    if (it != n.free.end() && *it == n.ident) n.free.erase(it);
  }
  if (names_event(n.op)) insert_sorted(n.free, n.ident);

  const unsigned steps = static_cast<unsigned>(n.labels.size());
  switch (n.op) {
    case Op::Tt:
    case Op::Ff: n.depth = 0; break;
    case Op::Neg:
    case Op::And:
    case Op::Or:
    case Op::Declare: n.depth = d; break;
    case Op::Step: n.depth = steps + std::max(d, steps >= 2 ? 1U : 0U); break;
    case Op::RevStep: n.depth = std::max(steps + d, steps >= 2 ? 1U : 0U); break;
    default: n.depth = d + 1; break;
  }

  std::size_t h = static_cast<std::size_t>(n.op) + 1;
  h = mix(h, n.ident.id());
  h = mix(h, n.label.id());
  for (Label a : n.labels) h = mix(h, a.id());
  for (const Formula& k : n.kids) h = mix(h, k->hash);
  n.hash = h;
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula::Formula() : Formula(tt()) {}

bool Formula::is_free(Ident x) const {
  return std::binary_search(node_->free.begin(), node_->free.end(), x);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const FormulaNode& x = *a;
  const FormulaNode& y = *b;
  if (x.hash != y.hash || x.op != y.op || x.ident != y.ident || x.label != y.label ||
      x.labels != y.labels || x.kids.size() != y.kids.size())
    return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!(x.kids[i] == y.kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------- constructors

namespace {

Formula leaf(Op op) {
  FormulaNode n;
  n.op = op;
  return make_node(std::move(n));
}

Formula unary(Op op, Ident x, Label a, Formula f) {
  FormulaNode n;
  n.op = op;
  n.ident = x;
  n.label = a;
  n.kids.push_back(std::move(f));
  return make_node(std::move(n));
}

Formula nary(Op op, std::vector<Formula> fs) {
  FormulaNode n;
  n.op = op;
  n.kids = std::move(fs);
  return make_node(std::move(n));
}

std::vector<Label> sorted_labels(std::vector<Label> v) {
  std::sort(v.begin(), v.end(), ByName{});
  return v;
}

} // namespace

Formula tt() {
  static const Formula t = leaf(Op::Tt);
  return t;
}
Formula ff() {
  static const Formula f = leaf(Op::Ff);
  return f;
}
Formula neg(Formula f) { return unary(Op::Neg, {}, {}, std::move(f)); }
Formula conj(std::vector<Formula> fs) {
  if (fs.empty()) return tt();
  if (fs.size() == 1) return fs[0];
  return nary(Op::And, std::move(fs));
}
Formula disj(std::vector<Formula> fs) {
  if (fs.empty()) return ff();
  if (fs.size() == 1) return fs[0];
  return nary(Op::Or, std::move(fs));
}
Formula diamond(Ident x, Label a, Formula f) { return unary(Op::Diamond, x, a, std::move(f)); }
Formula declare(Ident x, Label a, Formula f) { return unary(Op::Declare, x, a, std::move(f)); }
Formula reverse(Ident x, Formula f) { return unary(Op::Reverse, x, {}, std::move(f)); }
Formula box(Ident x, Label a, Formula f) { return unary(Op::Box, x, a, std::move(f)); }
Formula rev_box(Ident x, Formula f) { return unary(Op::RevBox, x, {}, std::move(f)); }
Formula label_diamond(Label a, Formula f) { return unary(Op::LDiamond, {}, a, std::move(f)); }
Formula label_box(Label a, Formula f) { return unary(Op::LBox, {}, a, std::move(f)); }
Formula label_reverse(Label a, Formula f) { return unary(Op::LReverse, {}, a, std::move(f)); }
Formula label_rev_box(Label a, Formula f) { return unary(Op::LRevBox, {}, a, std::move(f)); }

Formula step(std::vector<Label> labels, Formula f) {
  FormulaNode n;
  n.op = Op::Step;
  n.labels = sorted_labels(std::move(labels));
  n.kids.push_back(std::move(f));
  return make_node(std::move(n));
}

Formula rev_step(std::vector<Label> labels, Formula f) {
  FormulaNode n;
  n.op = Op::RevStep;
  n.labels = sorted_labels(std::move(labels));
  n.kids.push_back(std::move(f));
  return make_node(std::move(n));
}

namespace {

Formula rebuild(const Formula& f, Ident x, std::vector<Formula> kids) {
  FormulaNode n;
  n.op = f.op();
  n.ident = x;
  n.label = f->label;
  n.labels = f->labels;
  n.kids = std::move(kids);
  return make_node(std::move(n));
}

} // namespace

// ---------------------------------------------------------------- queries

std::vector<Ident> free_identifiers(const Formula& f) {
  std::vector<Ident> out = f->free;
  std::sort(out.begin(), out.end(), ByName{});
  return out;
}

std::set<Ident> identifiers(const Formula& f) {
  std::set<Ident> out;
  std::unordered_set<const FormulaNode*> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!seen.insert(g.get()).second) return;
    if (binds(g.op()) || names_event(g.op())) out.insert(g->ident);
    for (const Formula& k : g->kids) walk(k);
  };
  walk(f);
  return out;
}

unsigned modal_depth(const Formula& f) { return f->depth; }

std::size_t dag_size(const Formula& f) {
  std::unordered_set<const FormulaNode*> seen;
  std::vector<const FormulaNode*> stack{f.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const Formula& k : n->kids) stack.push_back(k.get());
  }
  return seen.size();
}

// ---------------------------------------------------------------- substitution

namespace {

using Subst = std::map<Ident, Ident>;  // from -> to

struct Substituter {
  // Values keep the input node alive so that its address stays unique.
  std::map<std::pair<const FormulaNode*, std::vector<std::pair<Ident, Ident>>>,
           std::pair<Formula, Formula>>
      memo;

  Formula run(const Formula& f, const Subst& sub) {
    std::vector<std::pair<Ident, Ident>> key;
    for (Ident x : f->free) {
      auto it = sub.find(x);
      if (it != sub.end() && it->second != x) key.emplace_back(x, it->second);
    }
    if (key.empty()) return f;
    auto mk = std::make_pair(f.get(), key);
    if (auto it = memo.find(mk); it != memo.end()) return it->second.second;

    Subst local(key.begin(), key.end());
    Formula out;
    if (names_event(f.op())) {
      Ident x = f->ident;
      if (auto it = local.find(x); it != local.end()) x = it->second;
      out = rebuild(f, x, {run(f.kid(), local)});
    } else if (binds(f.op())) {
      Ident y = f->ident;
      const Formula& body = f.kid();
      local.erase(y);
      std::set<Ident> targets;
      for (Ident z : body->free)
        if (auto it = local.find(z); it != local.end()) targets.insert(it->second);
      if (targets.count(y)) {
        std::string name = y.name();
        Ident fresh;
        do {
          name += '\'';
          fresh = Ident(name);
        } while (targets.count(fresh) || body.is_free(fresh) || local.count(fresh));
        local[y] = fresh;
        y = fresh;
      }
      out = rebuild(f, y, {run(body, local)});
    } else {
      std::vector<Formula> kids;
      for (const Formula& k : f->kids) kids.push_back(run(k, local));
      out = rebuild(f, f->ident, std::move(kids));
    }
    memo.emplace(std::move(mk), std::make_pair(f, out));
    return out;
  }
};

} // namespace

struct SubstitutionCache::Impl {
  Substituter s;
};

SubstitutionCache::SubstitutionCache() : impl_(std::make_unique<Impl>()) {}
SubstitutionCache::~SubstitutionCache() = default;

Formula SubstitutionCache::apply(const Formula& f, const std::vector<std::pair<Ident, Ident>>& to_from) {
  Subst sub;
  for (auto [to, from] : to_from) sub[from] = to;
  return impl_->s.run(f, sub);
}

std::size_t SubstitutionCache::size() const { return impl_->s.memo.size(); }

Formula substitute(const Formula& f, Ident to, Ident from) {
  return substitute(f, {{to, from}});
}

Formula substitute(const Formula& f, const std::vector<std::pair<Ident, Ident>>& to_from) {
  Subst sub;
  for (auto [to, from] : to_from) sub[from] = to;
  Substituter s;
  return s.run(f, sub);
}

// ---------------------------------------------------------------- expansion

namespace {

struct Expander {
  std::unordered_map<const FormulaNode*, Formula> memo;
  unsigned counter = 0;

  Ident fresh(const Formula& body) {
    for (;;) {
      Ident x("$" + std::to_string(counter++));
      if (!body.is_free(x)) return x;
    }
  }

  Formula run(const Formula& f) {
    if (f->core) return f;
    if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
    std::vector<Formula> kids;
    for (const Formula& k : f->kids) kids.push_back(run(k));
    Formula out;
    switch (f.op()) {
      case Op::Ff: out = neg(tt()); break;
      case Op::Or: {
        std::vector<Formula> negs;
        for (Formula& k : kids) negs.push_back(neg(k));
        out = neg(conj(std::move(negs)));
        break;
      }
      case Op::Box: out = neg(diamond(f->ident, f->label, neg(kids[0]))); break;
      case Op::RevBox: out = neg(reverse(f->ident, neg(kids[0]))); break;
      case Op::LDiamond: out = diamond(fresh(kids[0]), f->label, kids[0]); break;
      case Op::LBox: out = neg(diamond(fresh(kids[0]), f->label, neg(kids[0]))); break;
      case Op::LReverse: {
        Ident x = fresh(kids[0]);
        out = declare(x, f->label, reverse(x, kids[0]));
        break;
      }
      case Op::LRevBox: {
        Ident x = fresh(kids[0]);
        out = neg(declare(x, f->label, reverse(x, neg(kids[0]))));
        break;
      }
      case Op::Step: {
        const std::size_t n = f->labels.size();
        std::vector<Ident> xs;
        for (std::size_t i = 0; i < n; ++i) xs.push_back(fresh(kids[0]));
        std::vector<Formula> parts{kids[0]};
        for (std::size_t i = 0; i + 1 < n; ++i) parts.push_back(reverse(xs[i], tt()));
        out = conj(std::move(parts));
        for (std::size_t i = n; i-- > 0;) out = diamond(xs[i], f->labels[i], out);
        break;
      }
      case Op::RevStep: {
        const std::size_t n = f->labels.size();
        std::vector<Ident> xs;
        for (std::size_t i = 0; i < n; ++i) xs.push_back(fresh(kids[0]));
        Formula chain = kids[0];
        for (std::size_t i = n; i-- > 0;) chain = reverse(xs[i], chain);
        std::vector<Formula> parts{chain};
        for (std::size_t i = 1; i < n; ++i) parts.push_back(reverse(xs[i], tt()));
        out = conj(std::move(parts));
        for (std::size_t i = n; i-- > 0;) out = declare(xs[i], f->labels[i], out);
        break;
      }
      default: out = rebuild(f, f->ident, std::move(kids)); break;
    }
    memo.emplace(f.get(), out);
    return out;
  }
};

} // namespace

Formula expand_derived(const Formula& f) {
  Expander e;
  return e.run(f);
}

// ---------------------------------------------------------------- sublogics

const char* to_string(Sublogic s) {
  switch (s) {
    case Sublogic::EIL: return "EIL";
    case Sublogic::EIL_h: return "EIL_h";
    case Sublogic::EIL_wh: return "EIL_wh";
    case Sublogic::EIL_hwh: return "EIL_hwh";
    case Sublogic::EIL_ro: return "EIL_ro";
    case Sublogic::EIL_dfro: return "EIL_dfro";
  }
  return "?";
}

namespace {

struct Flags {
  bool has_diamond, has_declare, h, wh, hwh;
};

struct Classifier {
  std::unordered_map<const FormulaNode*, Flags> memo;

  Flags run(const Formula& f) {
    if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
    Flags r{false, false, true, true, true};
    std::vector<Flags> ks;
    for (const Formula& k : f->kids) {
      ks.push_back(run(k));
      r.has_diamond = r.has_diamond || ks.back().has_diamond;
      r.has_declare = r.has_declare || ks.back().has_declare;
    }
    auto all = [&](bool Flags::*m) {
      return std::all_of(ks.begin(), ks.end(), [&](const Flags& k) { return k.*m; });
    };
    switch (f.op()) {
      case Op::Tt: break;
      case Op::Neg:
      case Op::And:
        r.h = all(&Flags::h);
        r.wh = all(&Flags::wh);
        r.hwh = all(&Flags::hwh);
        break;
      case Op::Diamond:
        r.has_diamond = true;
        r.h = ks[0].h;
        r.wh = !f.kid().is_free(f->ident) && ks[0].wh;
        r.hwh = f.kid().closed() && ks[0].hwh;
        break;
      case Op::Declare:
      case Op::Reverse:
        r.has_declare = r.has_declare || f.op() == Op::Declare;
        r.h = false;
        r.wh = false;
        r.hwh = ks[0].hwh;
        break;
      default: break;
    }
    if (!r.has_diamond) {
      r.h = true;
      r.wh = r.wh || f.closed();
    }
    memo.emplace(f.get(), r);
    return r;
  }
};

} // namespace

std::vector<Sublogic> classify_sublogic(const Formula& f) {
  Classifier c;
  Flags r = c.run(expand_derived(f));
  std::vector<Sublogic> out{Sublogic::EIL};
  if (r.h) out.push_back(Sublogic::EIL_h);
  if (r.wh) out.push_back(Sublogic::EIL_wh);
  if (r.hwh) out.push_back(Sublogic::EIL_hwh);
  if (!r.has_diamond) out.push_back(Sublogic::EIL_ro);
  if (!r.has_diamond && !r.has_declare) out.push_back(Sublogic::EIL_dfro);
  return out;
}

bool in_sublogic(const Formula& f, Sublogic s) {
  auto tags = classify_sublogic(f);
  return std::find(tags.begin(), tags.end(), s) != tags.end();
}

// ---------------------------------------------------------------- alpha equivalence

namespace {

struct AlphaEq {
  std::map<Ident, unsigned> left, right;
  unsigned level = 0;

  bool same_ident(Ident x, Ident y) const {
    auto a = left.find(x);
    auto b = right.find(y);
    if (a == left.end() || b == right.end()) return a == left.end() && b == right.end() && x == y;
    return a->second == b->second;
  }

  bool run(const Formula& a, const Formula& b) {
    if (a.op() != b.op() || a->label != b->label || a->labels != b->labels ||
        a->kids.size() != b->kids.size())
      return false;
    if (names_event(a.op()) && !same_ident(a->ident, b->ident)) return false;
    if (binds(a.op())) {
      auto saved_l = left, saved_r = right;
      ++level;
      left[a->ident] = level;
      right[b->ident] = level;
      bool ok = run(a.kid(), b.kid());
      left = std::move(saved_l);
      right = std::move(saved_r);
      return ok;
    }
    for (std::size_t i = 0; i < a->kids.size(); ++i)
      if (!run(a->kids[i], b->kids[i])) return false;
    return true;
  }
};

} // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  AlphaEq eq;
  return eq.run(a, b);
}

} // namespace truecon
