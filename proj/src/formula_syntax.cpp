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
#include <cctype>
#include <functional>
#include <map>

#include "truecon/frontend.hpp"

namespace truecon {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const std::vector<Label>& alphabet)
      : text_(text), alphabet_(alphabet) {}

  Formula parse() {
    Formula f = disjunction();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string name() {
    skip();
    if (pos_ >= text_.size() || !is_name_start(text_[pos_])) fail("expected a name");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Lookahead for "name :" after an opening bracket.
  bool binder_ahead() {
    std::size_t saved = pos_;
    skip();
    bool ok = false;
    if (pos_ < text_.size() && is_name_start(text_[pos_])) {
      name();
      ok = peek(':');
    }
    pos_ = saved;
    return ok;
  }

  std::vector<Label> label_set() {
    std::vector<Label> labels;
    expect('{');
    if (!peek('}')) {
      do labels.emplace_back(name());
      while (accept(','));
    }
    expect('}');
    return labels;
  }

  bool bound(const std::string& n) const {
    Ident x(n);
    return std::find(scope_.begin(), scope_.end(), x) != scope_.end();
  }
  bool is_label(const std::string& n) const {
    Label a(n);
    return std::find(alphabet_.begin(), alphabet_.end(), a) != alphabet_.end();
  }

  Formula binder_body(Ident x) {
    scope_.push_back(x);
    Formula body = unary();
    scope_.pop_back();
    return body;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept('|')) parts.push_back(conjunction());
    return parts.size() == 1 ? parts[0] : disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept('&')) parts.push_back(unary());
    return parts.size() == 1 ? parts[0] : conj(std::move(parts));
  }

  Formula unary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (accept('~')) return neg(unary());
    if (peek('<') || peek('[')) return modality();
    if (accept('(')) {
      if (binder_ahead()) {
        Ident x(name());
        expect(':');
        Label a(name());
        expect(')');
        return declare(x, a, binder_body(x));
      }
      Formula f = disjunction();
      expect(')');
      return f;
    }
    if (text_[pos_] == '$') fail("reserved identifier");
    std::size_t at = pos_;
    std::string word = name();
    if (word == "tt") return tt();
    if (word == "ff") return ff();
    pos_ = at;
    fail("expected a formula");
  }

  Formula modality() {
    const bool is_box = text_[pos_] == '[';
    const char close = is_box ? ']' : '>';
    ++pos_;
    if (accept('-')) {
      if (peek('{')) {
        std::vector<Label> labels = label_set();
        expect(close);
        if (is_box) {
          if (labels.size() != 1) fail("reverse step boxes take a single label");
          return label_rev_box(labels[0], unary());
        }
        return labels.size() == 1 ? label_reverse(labels[0], unary()) : rev_step(labels, unary());
      }
      std::string n = name();
      expect(close);
      if (!bound(n) && is_label(n)) {
        Label a(n);
        return is_box ? label_rev_box(a, unary()) : label_reverse(a, unary());
      }
      Ident x(n);
      return is_box ? rev_box(x, unary()) : reverse(x, unary());
    }
    if (peek('{')) {
      if (is_box) fail("step boxes are not supported");
      std::vector<Label> labels = label_set();
      expect(close);
      return labels.size() == 1 ? label_diamond(labels[0], unary()) : step(labels, unary());
    }
    if (binder_ahead()) {
      Ident x(name());
      expect(':');
      Label a(name());
      expect(close);
      Formula body = binder_body(x);
      return is_box ? box(x, a, body) : diamond(x, a, body);
    }
    Label a(name());
    expect(close);
    return is_box ? label_box(a, unary()) : label_diamond(a, unary());
  }

  std::string_view text_;
  const std::vector<Label>& alphabet_;
  std::size_t pos_ = 0;
  std::vector<Ident> scope_;
};

// ---------------------------------------------------------------- rendering

enum class Ctx { Top, InOr, InAnd, Unary };

struct Renderer {
  std::map<Ident, Ident> rename;  // reserved binder -> printable name
  std::set<Ident> taken;
  unsigned counter = 0;

  Ident printable(Ident x) const {
    auto it = rename.find(x);
    return it == rename.end() ? x : it->second;
  }

  Ident fresh() {
    for (;;) {
      Ident v("v" + std::to_string(counter++));
      if (!taken.count(v)) {
        taken.insert(v);
        return v;
      }
    }
  }

  static std::string labels(const std::vector<Label>& ls) {
    std::string out = "{";
    for (std::size_t i = 0; i < ls.size(); ++i) out += (i ? "," : "") + ls[i].name();
    return out + "}";
  }

  std::string binder(const Formula& f, const std::string& open, const std::string& close) {
    Ident x = f->ident;
    auto saved = rename;
    if (!x.name().empty() && x.name()[0] == '$') rename[x] = fresh();
    std::string out = open + printable(x).name() + ":" + f->label.name() + close + run(f.kid(), Ctx::Unary);
    rename = std::move(saved);
    return out;
  }

  std::string joined(const Formula& f, const char* sep, Ctx ctx) {
    std::string out;
    for (std::size_t i = 0; i < f->kids.size(); ++i) {
      if (i) out += sep;
      const Formula& k = f->kids[i];
      bool paren = k.op() == Op::Or || (k.op() == Op::And && f.op() == Op::And);
      out += paren ? "(" + run(k, Ctx::Top) + ")" : run(k, ctx);
    }
    return out;
  }

  std::string run(const Formula& f, Ctx ctx) {
    switch (f.op()) {
      case Op::Tt: return "tt";
      case Op::Ff: return "ff";
      case Op::Neg: return "~" + run(f.kid(), Ctx::Unary);
      case Op::And: {
        std::string s = joined(f, " & ", Ctx::InAnd);
        return ctx == Ctx::Unary || ctx == Ctx::InAnd ? "(" + s + ")" : s;
      }
      case Op::Or: {
        std::string s = joined(f, " | ", Ctx::InOr);
        return ctx == Ctx::Top ? s : "(" + s + ")";
      }
      case Op::Diamond: return binder(f, "<", ">");
      case Op::Box: return binder(f, "[", "]");
      case Op::Declare: return binder(f, "(", ")");
      case Op::Reverse: return "<-" + printable(f->ident).name() + ">" + run(f.kid(), Ctx::Unary);
      case Op::RevBox: return "[-" + printable(f->ident).name() + "]" + run(f.kid(), Ctx::Unary);
      case Op::LDiamond: return "<" + f->label.name() + ">" + run(f.kid(), Ctx::Unary);
      case Op::LBox: return "[" + f->label.name() + "]" + run(f.kid(), Ctx::Unary);
      case Op::LReverse: return "<-{" + f->label.name() + "}>" + run(f.kid(), Ctx::Unary);
      case Op::LRevBox: return "[-{" + f->label.name() + "}]" + run(f.kid(), Ctx::Unary);
      case Op::Step: return "<" + labels(f->labels) + ">" + run(f.kid(), Ctx::Unary);
      case Op::RevStep: return "<-" + labels(f->labels) + ">" + run(f.kid(), Ctx::Unary);
    }
    return "?";
  }
};

} // namespace

Formula parse_formula(std::string_view text, const std::vector<Label>& alphabet) {
  return FormulaParser(text, alphabet).parse();
}

std::string render_formula(const Formula& f) {
  Renderer r;
  r.taken = identifiers(f);
  return r.run(f, Ctx::Top);
}

} // namespace truecon
