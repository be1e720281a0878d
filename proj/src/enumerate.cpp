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
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_set>

#include "truecon/harness.hpp"

namespace truecon {

namespace {

constexpr unsigned kMaxEnumEvents = 5;

// A family over n <= 5 events is a bit mask over the 2^n subsets.
using Family = std::uint64_t;

bool has(Family f, unsigned x) { return (f >> x) & 1U; }

class FamilySearch {
 public:
  explicit FamilySearch(unsigned n) : n_(n) {
    for (unsigned x = 1; x < (1U << n); ++x) order_.push_back(x);
    std::stable_sort(order_.begin(), order_.end(),
                     [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  }

  template <class F>
  void run(F&& yield) {
    fam_ = 1;  // the empty configuration
    rec(0, yield);
  }

 private:
  // Subsets of z in the family must be closed under union and intersection;
  // every bounded pair is bounded by some configuration z.
  bool closed_below(unsigned z) const {
    unsigned buf[32];
    int k = 0;
    for (unsigned x = z;; x = (x - 1) & z) {
      if (has(fam_, x)) buf[k++] = x;
      if (x == 0) break;
    }
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (!has(fam_, buf[i] | buf[j]) || !has(fam_, buf[i] & buf[j])) return false;
    return true;
  }

  template <class F>
  void rec(std::size_t i, F& yield) {
    if (i == order_.size()) {
      unsigned used = 0;
      for (unsigned x = 0; x < (1U << n_); ++x)
        if (has(fam_, x)) used |= x;
      if (used == (1U << n_) - 1) yield(fam_);
      return;
    }
    const unsigned s = order_[i];
    rec(i + 1, yield);
    bool connected = false;
    for (unsigned e = 0; e < n_ && !connected; ++e)
      connected = ((s >> e) & 1U) && has(fam_, s & ~(1U << e));
    if (!connected) return;
    fam_ |= Family{1} << s;
    if (closed_below(s)) rec(i + 1, yield);
    fam_ &= ~(Family{1} << s);
  }

  unsigned n_;
  std::vector<unsigned> order_;
  Family fam_ = 0;
};

struct Perms {
  std::vector<std::vector<unsigned>> perm;     // event i -> perm[i]
  std::vector<std::vector<unsigned>> subsets;  // subset x -> image of x

  explicit Perms(unsigned n) {
    std::vector<unsigned> p(n);
    std::iota(p.begin(), p.end(), 0U);
    do {
      perm.push_back(p);
      std::vector<unsigned> img(1U << n);
      for (unsigned x = 0; x < (1U << n); ++x) {
        unsigned y = 0;
        for (unsigned e = 0; e < n; ++e)
          if ((x >> e) & 1U) y |= 1U << p[e];
        img[x] = y;
      }
      subsets.push_back(std::move(img));
    } while (std::next_permutation(p.begin(), p.end()));
  }

  Family apply(std::size_t k, Family f) const {
    Family out = 0;
    for (Family b = f; b != 0; b &= b - 1) out |= Family{1} << subsets[k][std::countr_zero(b)];
    return out;
  }
};

// Relabel so that labels appear in order of first occurrence.
std::vector<unsigned> normalise(const std::vector<unsigned>& lab) {
  std::vector<int> seen(lab.size() + 1, -1);
  std::vector<unsigned> out;
  unsigned next = 0;
  for (unsigned l : lab) {
    if (seen[l] < 0) seen[l] = static_cast<int>(next++);
    out.push_back(static_cast<unsigned>(seen[l]));
  }
  return out;
}

void labellings(unsigned n, unsigned k, std::vector<unsigned>& cur, unsigned used,
                std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (unsigned l = 0; l <= used && l < k; ++l) {
    cur.push_back(l);
    labellings(n, k, cur, std::max(used, l + 1), out);
    cur.pop_back();
  }
}

} // namespace

std::size_t count_stable_families(unsigned n) {
  if (n > kMaxEnumEvents) throw BudgetExceeded("enumeration is limited to 5 events");
  std::size_t count = 0;
  FamilySearch(n).run([&](Family) { ++count; });
  return count;
}

std::vector<Structure> enumerate_structures(const EnumBudget& budget) {
  if (budget.max_events > kMaxEnumEvents) throw BudgetExceeded("enumeration is limited to 5 events");
  std::vector<Structure> out;
  for (unsigned n = 0; n <= budget.max_events; ++n) {
    const Perms perms(n);
    std::unordered_set<Family> canon;
    FamilySearch(n).run([&](Family f) {
      Family best = f;
      for (std::size_t k = 1; k < perms.perm.size(); ++k) best = std::min(best, perms.apply(k, f));
      canon.insert(best);
    });
    std::vector<Family> fams(canon.begin(), canon.end());
    std::sort(fams.begin(), fams.end());

    std::vector<std::vector<unsigned>> labs;
    std::vector<unsigned> cur;
    if (budget.max_labels > 0) labellings(n, budget.max_labels, cur, 0, labs);

    for (Family f : fams) {
      std::vector<std::size_t> aut;
      for (std::size_t k = 0; k < perms.perm.size(); ++k)
        if (perms.apply(k, f) == f) aut.push_back(k);
      for (const auto& lab : labs) {
        bool minimal = true;
        for (std::size_t k : aut) {
          std::vector<unsigned> img(n);
          for (unsigned i = 0; i < n; ++i) img[perms.perm[k][i]] = lab[i];
          if (normalise(img) < lab) {
            minimal = false;
            break;
          }
        }
        if (!minimal) continue;
        if (out.size() >= budget.cap)
          throw BudgetExceeded("more than " + std::to_string(budget.cap) + " structures");
        std::vector<Event> events;
        for (unsigned i = 0; i < n; ++i)
          events.push_back({"e" + std::to_string(i + 1), Label(std::string(1, static_cast<char>('a' + lab[i])))});
        std::vector<Configuration> configs;
        for (unsigned x = 0; x < (1U << n); ++x)
          if (has(f, x)) configs.emplace_back(std::uint64_t{x});
        out.push_back(validate_stable(std::move(events), std::move(configs)));
      }
    }
  }
  return out;
}

} // namespace truecon
