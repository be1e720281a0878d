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

#include <initializer_list>
#include <string>
#include <vector>

#include "truecon/eval.hpp"
#include "truecon/frontend.hpp"
#include "truecon/structure.hpp"

namespace testing {

using namespace truecon;

inline Configuration cfg(const Structure& s, std::initializer_list<const char*> names) {
  Configuration x;
  for (const char* n : names) {
    auto e = s.find_event(n);
    if (!e) throw std::runtime_error(std::string("no event ") + n);
    x.insert(*e);
  }
  return x;
}

inline EventId ev(const Structure& s, const char* name) { return *s.find_event(name); }

inline Formula fml(const Structure& s, const std::string& text) {
  return parse_formula(text, s.alphabet());
}

inline bool holds(const Structure& s, const std::string& text) {
  return satisfies(s, fml(s, text));
}

inline Structure example1() {
  return validate_stable({{"e1", Label("a")}, {"e2", Label("a")}, {"e3", Label("a")}},
                         {{}, {0}, {2}, {0, 1}, {0, 2}, {0, 1, 2}});
}

// d <=_X e by quantifying over every sub-configuration of X.
inline bool literal_leq(const Structure& s, Configuration x, EventId d, EventId e) {
  for (Configuration y : s.configs())
    if (y.subset_of(x) && y.contains(e) && !y.contains(d)) return false;
  return true;
}

} // namespace testing
