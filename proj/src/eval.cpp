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

#include "truecon/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

namespace truecon {

Environment::Environment(std::initializer_list<std::pair<Ident, EventId>> bindings) {
  for (auto [x, e] : bindings) bind(x, e);
}

std::optional<EventId> Environment::lookup(Ident x) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), x,
                             [](const auto& b, Ident y) { return b.first < y; });
  if (it == bindings_.end() || it->first != x) return std::nullopt;
  return it->second;
}

void Environment::bind(Ident x, EventId e) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), x,
                             [](const auto& b, Ident y) { return b.first < y; });
  if (it != bindings_.end() && it->first == x)
    it->second = e;
  else
    bindings_.insert(it, {x, e});
}

Environment Environment::with(Ident x, EventId e) const {
  Environment r = *this;
  r.bind(x, e);
  return r;
}

bool Environment::permissible(const Formula& f, Configuration x) const {
  for (Ident y : f->free) {
    auto e = lookup(y);
    if (!e || !x.contains(*e)) return false;
  }
  return true;
}

std::string Environment::render(const Structure& s) const {
  std::vector<std::pair<std::string, std::string>> items;
  for (auto [x, e] : bindings_)
    items.emplace_back(x.name(), e < s.num_events() ? s.event_name(e) : "#" + std::to_string(e));
  std::sort(items.begin(), items.end());
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i].first + "->" + items[i].second;
  }
  return out + "]";
}

Environment parse_environment(const Structure& s, std::string_view text) {
  Environment rho;
  std::size_t pos = 0;
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = trim(text.substr(pos, comma - pos));
    if (!item.empty()) {
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) throw SyntaxError(pos, "expected x=event in environment");
      std::string_view x = trim(item.substr(0, eq));
      std::string_view ev = trim(item.substr(eq + 1));
      auto e = s.find_event(ev);
      if (x.empty() || !e) throw SyntaxError(pos, "unknown event '" + std::string(ev) + "'");
      rho.bind(Ident(x), *e);
    }
    pos = comma + 1;
  }
  return rho;
}

// ---------------------------------------------------------------- Evaluator

Formula Evaluator::core(const Formula& f) {
  if (f->core) return f;
  auto it = expanded_.find(f.get());
  if (it != expanded_.end()) return it->second.second;
  Formula c = expand_derived(f);
  expanded_.emplace(f.get(), std::make_pair(f, c));
  return c;
}

bool Evaluator::satisfies(Configuration x, const Environment& rho, const Formula& f) {
  std::size_t i = s_.require(x);
  Formula c = core(f);
  if (!rho.permissible(c, x))
    throw NotPermissible("environment " + rho.render(s_) + " is not permissible at " +
                         s_.render_config(x));
  // Memo entries are keyed on node addresses, so keep every root alive.
  roots_.emplace(c.get(), c);
  return eval(i, rho, c);
}

bool Evaluator::eval(std::size_t config, const Environment& rho, const Formula& f) {
  switch (f.op()) {
    case Op::Tt: return true;
    case Op::Neg: return !eval(config, rho, f.kid());
    default: break;
  }

  std::string key(sizeof(std::size_t) + sizeof(const FormulaNode*) + f->free.size(), '\0');
  const FormulaNode* node = f.get();
  std::memcpy(key.data(), &config, sizeof config);
  std::memcpy(key.data() + sizeof config, &node, sizeof node);
  for (std::size_t k = 0; k < f->free.size(); ++k)
    key[sizeof config + sizeof node + k] = static_cast<char>(*rho.lookup(f->free[k]));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  bool result = false;
  const Configuration x = s_.config(config);
  switch (f.op()) {
    case Op::And:
      result = std::all_of(f->kids.begin(), f->kids.end(),
                           [&](const Formula& k) { return eval(config, rho, k); });
      break;
    case Op::Diamond:
      for (const Structure::Move& m : s_.forward(config))
        if (s_.label(m.event) == f->label && eval(m.target, rho.with(f->ident, m.event), f.kid())) {
          result = true;
          break;
        }
      break;
    case Op::Declare: {
      bool found = false;
      x.for_each([&](EventId e) {
        if (!found && s_.label(e) == f->label) found = eval(config, rho.with(f->ident, e), f.kid());
      });
      result = found;
      break;
    }
    case Op::Reverse: {
      EventId e = *rho.lookup(f->ident);
      for (const Structure::Move& m : s_.reverse(config)) {
        if (m.event != e) continue;
        // The continuation must not refer to the event being undone.
        bool keeps = std::none_of(f.kid()->free.begin(), f.kid()->free.end(),
                                  [&](Ident y) { return *rho.lookup(y) == e; });
        result = keeps && eval(m.target, rho, f.kid());
        break;
      }
      break;
    }
    default:
      throw Error("internal: evaluator reached a derived operator");
  }
  memo_.emplace(std::move(key), result);
  return result;
}

bool satisfies(const Structure& s, Configuration x, const Environment& rho, const Formula& f) {
  Evaluator ev(s);
  return ev.satisfies(x, rho, f);
}

} // namespace truecon
