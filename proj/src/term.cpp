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

#include <cctype>
#include <unordered_set>

#include "truecon/frontend.hpp"

namespace truecon {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = sum();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static std::shared_ptr<const Term> share(Term t) { return std::make_shared<const Term>(std::move(t)); }

  Term sum() {
    Term t = par();
    while (accept('+')) {
      Term r = par();
      Term c;
      c.kind = Term::Kind::Choice;
      c.left = share(std::move(t));
      c.right = share(std::move(r));
      t = std::move(c);
    }
    return t;
  }

  Term par() {
    Term t = prefix();
    while (accept('|')) {
      Term r = prefix();
      Term c;
      c.kind = Term::Kind::Par;
      c.left = share(std::move(t));
      c.right = share(std::move(r));
      t = std::move(c);
    }
    return t;
  }

  Term prefix() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of term");
    char c = text_[pos_];
    if (c == '0') {
      ++pos_;
      return Term{};
    }
    if (c == '(') {
      ++pos_;
      Term t = sum();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return t;
    }
    if (!is_name_start(c)) throw SyntaxError(pos_, "expected a label, '0' or '('");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    Term t;
    t.kind = Term::Kind::Prefix;
    t.label = Label(text_.substr(start, pos_ - start));
    t.event = "e" + std::to_string(++events_);
    if (accept('.'))
      t.left = share(prefix());
    else
      t.left = share(Term{});
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  unsigned events_ = 0;
};

struct Elaborator {
  std::vector<Event> events;

  std::vector<Configuration> run(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Nil: return {Configuration{}};
      case Term::Kind::Prefix: {
        if (events.size() == kMaxEvents)
          throw ElaborationTooLarge("term has more than 64 events");
        EventId e = static_cast<EventId>(events.size());
        events.push_back({t.event, t.label});
        std::vector<Configuration> out{Configuration{}};
        for (Configuration y : run(*t.left)) out.push_back(y.with(e));
        return out;
      }
      case Term::Kind::Choice: {
        std::vector<Configuration> out = run(*t.left);
        for (Configuration y : run(*t.right))
          if (!y.empty()) out.push_back(y);
        return out;
      }
      case Term::Kind::Par: {
        std::vector<Configuration> l = run(*t.left);
        std::vector<Configuration> r = run(*t.right);
        if (l.size() * r.size() > kMaxElaboratedConfigs)
          throw ElaborationTooLarge("term has more than " + std::to_string(kMaxElaboratedConfigs) +
                                    " configurations");
        std::vector<Configuration> out;
        for (Configuration y : l)
          for (Configuration z : r) out.push_back(y | z);
        return out;
      }
    }
    return {};
  }
};

} // namespace

Term parse_term_ast(std::string_view text) { return TermParser(text).parse(); }

Structure elaborate(const Term& t) {
  Elaborator el;
  std::vector<Configuration> family = el.run(t);
  if (family.size() > kMaxElaboratedConfigs)
    throw ElaborationTooLarge("term has more than " + std::to_string(kMaxElaboratedConfigs) +
                              " configurations");
  return validate_stable(std::move(el.events), std::move(family));
}

Structure parse_term(std::string_view text) { return elaborate(parse_term_ast(text)); }

// ---------------------------------------------------------------- structure files

Structure parse_structure_file(std::string_view text) {
  std::string events_text, configs_text;
  std::size_t events_at = std::string_view::npos, configs_at = std::string_view::npos;
  std::string* section = nullptr;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::string_view body = line.substr(i);
    if (!body.empty() && body[0] != '#') {
      if (body.rfind("events:", 0) == 0) {
        if (events_at != std::string_view::npos)
          throw SyntaxError(line_start + i, "duplicate events section");
        events_at = line_start + i + 7;
        section = &events_text;
        body.remove_prefix(7);
      } else if (body.rfind("configs:", 0) == 0) {
        if (configs_at != std::string_view::npos)
          throw SyntaxError(line_start + i, "duplicate configs section");
        configs_at = line_start + i + 8;
        section = &configs_text;
        body.remove_prefix(8);
      } else if (!section) {
        throw SyntaxError(line_start + i, "expected 'events:' or 'configs:'");
      }
      *section += ' ';
      *section += body;
    }
    line_start = end + 1;
  }
  if (events_at == std::string_view::npos) throw SyntaxError(0, "missing 'events:' section");
  if (configs_at == std::string_view::npos) throw SyntaxError(0, "missing 'configs:' section");

  std::vector<Event> events;
  {
    std::size_t p = 0;
    const std::string& s = events_text;
    while (p < s.size()) {
      while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
      if (p == s.size()) break;
      std::size_t start = p;
      while (p < s.size() && !std::isspace(static_cast<unsigned char>(s[p]))) ++p;
      std::string item = s.substr(start, p - start);
      std::size_t colon = item.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
        throw SyntaxError(events_at, "expected <name>:<label>, got '" + item + "'");
      events.push_back({item.substr(0, colon), Label(item.substr(colon + 1))});
    }
  }
  if (events.size() > kMaxEvents)
    throw InvalidStructure(InvalidStructure::Kind::TooManyEvents,
                           "too many events: " + std::to_string(events.size()) + " > 64");
  auto lookup = [&](const std::string& name) -> std::optional<EventId> {
    for (EventId e = 0; e < events.size(); ++e)
      if (events[e].name == name) return e;
    return std::nullopt;
  };

  std::vector<Configuration> family;
  {
    const std::string& s = configs_text;
    std::size_t p = 0;
    auto skip = [&] {
      while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    };
    bool need_separator = false;
    for (;;) {
      skip();
      if (p == s.size()) break;
      if (need_separator) {
        if (s[p] != ';') throw SyntaxError(configs_at, "expected ';' between configurations");
        ++p;
        need_separator = false;
        continue;
      }
      if (s[p] != '{') throw SyntaxError(configs_at, "expected '{'");
      ++p;
      Configuration x;
      for (;;) {
        skip();
        if (p == s.size()) throw SyntaxError(configs_at, "unterminated configuration");
        if (s[p] == '}') {
          ++p;
          break;
        }
        std::size_t start = p;
        while (p < s.size() && s[p] != '}' && s[p] != ',' &&
               !std::isspace(static_cast<unsigned char>(s[p])))
          ++p;
        std::string name = s.substr(start, p - start);
        if (p < s.size() && s[p] == ',') ++p;
        auto e = lookup(name);
        if (!e) throw SyntaxError(configs_at, "undeclared event '" + name + "'");
        x.insert(*e);
      }
      family.push_back(x);
      need_separator = true;
    }
  }
  return validate_stable(std::move(events), std::move(family));
}

std::string render_structure_file(const Structure& s) {
  std::string out = "events:";
  for (const Event& e : s.events()) out += " " + e.name + ":" + e.label.name();
  out += "\nconfigs:";
  for (std::size_t i = 0; i < s.num_configs(); ++i) {
    out += i ? "; " : " ";
    out += s.render_config(s.config(i));
  }
  return out + "\n";
}

} // namespace truecon
