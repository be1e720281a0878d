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

#include "truecon/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace truecon::detail {

namespace {

struct Table {
  std::deque<std::string> names;
  std::unordered_map<std::string_view, std::uint32_t> ids;
};

std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}

Table& table(int which) {
  static Table tables[2];
  return tables[which];
}

} // namespace

std::uint32_t intern(int which, std::string_view name) {
  std::lock_guard<std::mutex> lock(table_mutex());
  Table& t = table(which);
  if (t.names.empty()) {
    t.names.emplace_back();
    t.ids.emplace(t.names.back(), 0);
  }
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return it->second;
  t.names.emplace_back(name);
  auto id = static_cast<std::uint32_t>(t.names.size() - 1);
  t.ids.emplace(t.names.back(), id);
  return id;
}

const std::string& symbol_name(int which, std::uint32_t id) {
  std::lock_guard<std::mutex> lock(table_mutex());
  Table& t = table(which);
  static const std::string empty;
  return id < t.names.size() ? t.names[id] : empty;
}

} // namespace truecon::detail
