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

#include "truecon/examples.hpp"

#include <algorithm>

namespace truecon::examples {

Structure from_names(const std::vector<std::pair<std::string, std::string>>& events,
                     const std::vector<std::vector<std::string>>& family) {
  std::vector<Event> evs;
  for (const auto& [name, label] : events) evs.push_back({name, Label(label)});
  std::vector<Configuration> configs;
  for (const auto& names : family) {
    Configuration x;
    for (const std::string& n : names) {
      auto it = std::find_if(events.begin(), events.end(), [&](const auto& p) { return p.first == n; });
      if (it == events.end())
        throw InvalidStructure(InvalidStructure::Kind::UnknownEvent, "unknown event " + n);
      x.insert(static_cast<EventId>(it - events.begin()));
    }
    configs.push_back(x);
  }
  return validate_stable(std::move(evs), std::move(configs));
}

namespace {

std::vector<std::vector<std::string>> fig2_family(bool with_a2a3b3) {
  auto a = [](int i) { return "a" + std::to_string(i); };
  auto b = [](int i) { return "b" + std::to_string(i); };
  std::vector<std::vector<std::string>> fam{{}};
  for (int i = 1; i <= 4; ++i) fam.push_back({a(i)});
  for (int i = 1; i <= 3; ++i) fam.push_back({a(i), a(i + 1)});
  for (int i = 1; i <= 4; ++i) fam.push_back({a(i), b(i)});
  for (int i = 1; i <= 3; ++i) fam.push_back({a(i), a(i + 1), b(i)});
  for (int i = 1; i <= 3; ++i)
    if (with_a2a3b3 || i != 2) fam.push_back({a(i), a(i + 1), b(i + 1)});
  return fam;
}

std::vector<std::pair<std::string, std::string>> fig2_events() {
  std::vector<std::pair<std::string, std::string>> ev;
  for (int i = 1; i <= 4; ++i) ev.emplace_back("a" + std::to_string(i), "a");
  for (int i = 1; i <= 4; ++i) ev.emplace_back("b" + std::to_string(i), "b");
  return ev;
}

} // namespace

Structure fig2_e() { return from_names(fig2_events(), fig2_family(true)); }
Structure fig2_f() { return from_names(fig2_events(), fig2_family(false)); }

Structure fig3_e() {
  return from_names({{"e1", "a"}, {"e2", "a"}, {"e3", "a"}, {"e4", "a"}, {"e5", "a"}, {"e6", "a"}},
                    {{},
                     {"e1"}, {"e2"}, {"e3"},
                     {"e1", "e2"}, {"e1", "e3"}, {"e2", "e3"},
                     {"e1", "e4"}, {"e2", "e5"}, {"e3", "e6"},
                     {"e1", "e2", "e4"}, {"e1", "e3", "e4"}, {"e2", "e3", "e5"}, {"e1", "e3", "e6"}});
}

Structure fig3_f() {
  return from_names({{"e1", "a"}, {"e2", "a"}, {"e3", "a"}, {"e4", "a"}, {"e4_", "a"}, {"e5", "a"}, {"e6", "a"}},
                    {{},
                     {"e1"}, {"e2"}, {"e3"},
                     {"e1", "e2"}, {"e1", "e3"}, {"e2", "e3"},
                     {"e1", "e4"}, {"e1", "e4_"}, {"e2", "e5"}, {"e3", "e6"},
                     {"e1", "e2", "e4"}, {"e1", "e3", "e4_"}, {"e2", "e3", "e5"}, {"e1", "e3", "e6"}});
}

} // namespace truecon::examples
