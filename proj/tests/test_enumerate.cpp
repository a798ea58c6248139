// Copyright 2026 The nfsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "nfsearch/enumerate.hpp"
#include "nfsearch/explicit_bounds.hpp"
#include "nfsearch/hp_bounds.hpp"

using namespace nfsearch;

namespace {

using Vec = std::vector<Integer>;

std::vector<Vec> run_all(const EnumCell& cell, const FilterSettings& fs, bool force_bigint = false,
                         EnumCounters* counters = nullptr, bool* used_bigint = nullptr) {
  std::vector<Vec> out;
  CellRunHooks h;
  h.on_candidate = [&](const Vec& a) { out.push_back(a); };
  const auto r = run_cell(cell, fs, std::nullopt, h, force_bigint);
  REQUIRE(r.finished);
  if (counters) *counters = r.counters;
  if (used_bigint) *used_bigint = r.used_bigint;
  return out;
}

FilterSettings no_filters() {
  FilterSettings fs;
  fs.enabled = false;
  return fs;
}

// Power sums S_1..S_{n-1} from coefficients, straight from the Newton recurrence.
Vec power_sums(const Vec& a) {
  const std::size_t n = a.size();
  Vec S(n, 0);
  for (std::size_t m = 1; m < n; ++m) {
    Integer v = -Integer(static_cast<long>(m)) * a[m - 1];
    for (std::size_t i = 1; i < m; ++i) v -= a[i - 1] * S[m - i - 1];
    S[m - 1] = v;
  }
  return S;
}

// Every coefficient vector of the cell, found by scanning a_2..a_{n-1} over a box that provably
// contains it: |S_m| <= U_m and Newton give |a_m| <= (U_m + sum_{i<m} A_i U_{m-i}) / m.
std::set<Vec> box_oracle(const EnumCell& cell) {
  const int n = cell.n;
  const BoundsSet& b = cell.bounds;
  std::vector<long> FU(static_cast<std::size_t>(n + 1));
  for (int m = 2; m < n; ++m) FU[static_cast<std::size_t>(m)] = static_cast<long>(std::floor(b.Um(m)));
  const long s2_lower = -static_cast<long>(std::floor(b.T - 2.0 * cell.s1 * cell.s1 / n));
  std::set<Vec> out;
  Vec a(static_cast<std::size_t>(n), 0);
  a[0] = -cell.s1;
  a.back() = cell.a_n();
  std::vector<double> Ubound(static_cast<std::size_t>(n), 0), A(static_cast<std::size_t>(n), 0);
  Ubound[1] = A[1] = cell.s1;
  for (int m = 2; m < n; ++m) {
    Ubound[static_cast<std::size_t>(m)] = b.Um(m);
    double acc = b.Um(m);
    for (int i = 1; i < m; ++i) acc += A[static_cast<std::size_t>(i)] * Ubound[static_cast<std::size_t>(m - i)];
    A[static_cast<std::size_t>(m)] = acc / m;
  }
  std::vector<long> R(static_cast<std::size_t>(n - 2));
  for (int m = 2; m < n; ++m) R[static_cast<std::size_t>(m - 2)] = static_cast<long>(std::ceil(A[static_cast<std::size_t>(m)])) + 1;
  std::vector<long> cur(static_cast<std::size_t>(n - 2));
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = -R[i];
  for (;;) {
    for (int m = 2; m < n; ++m) a[static_cast<std::size_t>(m - 1)] = cur[static_cast<std::size_t>(m - 2)];
    const Vec S = power_sums(a);
    bool ok = S[1] >= s2_lower;
    for (int m = 2; m < n && ok; ++m) ok = abs(S[static_cast<std::size_t>(m - 1)]) <= FU[static_cast<std::size_t>(m)];
    Integer p1 = 1;
    for (const auto& v : a) p1 += v;
    if (ok && ((p1 % 2) + 2) % 2 == cell.parity_c) out.insert(a);
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == R[i]) {
      cur[i] = -R[i];
      ++i;
    }
    if (i == cur.size()) break;
    ++cur[i];
  }
  return out;
}

}  // namespace

TEST_CASE("init_level examples") {
  EnumState st = EnumState::start(3, 0, Integer(1));
  init_level(st, 2, 10.3);  // k_2 = 0
  CHECK(st.k[2] == 0);
  CHECK(st.S[2] == 10);
  CHECK(st.a[2] == -5);
  st = EnumState::start(3, 1, Integer(1));  // a_1 = -1, S_1 = 1: combo = a_1 S_1 = -1, k_2 = 1
  init_level(st, 2, 10.3);
  CHECK(st.k[2] == 1);
  CHECK(st.S[2] == 9);
  CHECK(2 * st.a[2] + st.S[2] + st.a[1] * st.S[1] == 0);
  // U_3 = 7.9 with k_3 = 2
  st = EnumState::start(4, 1, Integer(1));
  init_level(st, 2, 10.3);
  st.a[2] = 0;
  st.S[2] = 1;  // a_1 = -1, S_1 = 1: S_2 = a_1^2 - 2 a_2 = 1
  init_level(st, 3, 7.9);
  // combo = a_1 S_2 + a_2 S_1 = -1, so k_3 = 1; force the documented case through lower_cutoff below
  CHECK(st.k[3] == 1);
  CHECK(st.S[3] == 7);
  CHECK(3 * st.a[3] + st.S[3] + st.a[1] * st.S[2] + st.a[2] * st.S[1] == 0);
  // 3 floor((7.9 - 2)/3) + 2 = 5 is the k_3 = 2 value
  CHECK(3 * static_cast<long>(std::floor((7.9 - 2) / 3)) + 2 == 5);
}

TEST_CASE("lower_cutoff") {
  CHECK(lower_cutoff(7, Integer(3), 20.0) == -18);
  for (int m = 2; m <= 8; ++m)
    for (long k = 0; k < m; ++k)
      for (double U : {3.5, 20.0, 97.2}) {
        const Integer L = lower_cutoff(m, Integer(k), U);
        CHECK(((L - k) % m) == 0);
        CHECK(L >= -std::floor(U));
        CHECK(L - m < -std::floor(U));
      }
}

TEST_CASE("parity_adjust") {
  EnumState st = EnumState::start(4, 0, Integer(1));
  st.a = {0, 0, 1, 2, 1};  // p(1) = 5
  st.S = {0, 0, -2, -6, 0};
  CHECK_FALSE(parity_adjust(st, 1));
  CHECK(st.a[3] == 2);
  CHECK(parity_adjust(st, 0));
  CHECK(st.a[3] == 3);
  CHECK(st.S[3] == -9);
  CHECK_FALSE(parity_adjust(st, 0));
}

TEST_CASE("cells with N above the Hunter-Pohst cap are rejected") {
  CHECK_THROWS(make_cell(3, 0, Integer(23), 1000, 1, 0));
  CHECK_THROWS(make_cell(2, 0, Integer(23), 1, 1, 0));
  CHECK_THROWS(make_cell(3, 2, Integer(23), 1, 1, 0));
  CHECK(make_cell(8, 0, Integer(5726300), 1, -1, 1).id() == "s0:a-1:c1");
}

TEST_CASE("enumeration equals the brute-force box scan with filters off") {
  for (int n : {3, 4, 5}) {
    const Integer bound = n == 3 ? Integer(200) : n == 4 ? Integer(2000) : Integer(20000);
    for (int s1 = 0; 2 * s1 <= n; ++s1) {
      for (long N : {1L, 2L}) {
        for (int sign : {1, -1}) {
          for (int c : {0, 1}) {
            EnumCell cell;
            try {
              cell = make_cell(n, s1, bound, N, sign, c);
            } catch (const std::invalid_argument&) {
              continue;
            }
            const auto got = run_all(cell, no_filters());
            const std::set<Vec> gs(got.begin(), got.end());
            CAPTURE(cell.id());
            CAPTURE(n);
            CHECK(gs.size() == got.size());
            CHECK(gs == box_oracle(cell));
            // Newton consistency at every yielded vector
            for (const auto& a : got) {
              const Vec S = power_sums(a);
              for (int m = 2; m < n; ++m) {
                Integer v = Integer(m) * a[static_cast<std::size_t>(m - 1)] + S[static_cast<std::size_t>(m - 1)];
                for (int i = 1; i < m; ++i) v += a[static_cast<std::size_t>(i - 1)] * S[static_cast<std::size_t>(m - i - 1)];
                CHECK(v == 0);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("partition, parity disjointness and determinism") {
  std::set<Vec> seen;
  std::size_t total = 0;
  for (int s1 = 0; s1 <= 2; ++s1)
    for (int sign : {1, -1})
      for (int c : {0, 1}) {
        const EnumCell cell = make_cell(4, s1, Integer(3000), 1, sign, c);
        const auto a = run_all(cell, no_filters());
        const auto b = run_all(cell, no_filters());
        CHECK(a == b);
        for (const auto& v : a) {
          Integer p1 = 1;
          for (const auto& x : v) p1 += x;
          CHECK(((p1 % 2) + 2) % 2 == c);
          seen.insert(v);
        }
        total += a.size();
      }
  CHECK(seen.size() == total);
}

TEST_CASE("filter counters add up") {
  FilterSettings fs;
  fs.eval_range = default_eval_range(6);
  const EnumCell cell = make_cell(6, 0, Integer(100000), 1, -1, 1);
  EnumCounters cnt;
  const auto got = run_all(cell, fs, false, &cnt);
  CHECK(cnt.generated == cnt.passed + cnt.discarded());
  CHECK(cnt.passed == got.size());
  CHECK(cnt.generated == run_all(cell, no_filters()).size());
  EnumCounters twice = cnt;
  twice += cnt;
  CHECK(twice.generated == 2 * cnt.generated);
  CHECK(default_eval_range(8) == std::vector<int>{2, 3, 4, 5});
  CHECK(default_eval_range(3).empty());
  CHECK(std::string(to_string(FilterCondition::s_minus2)) == "S_-2");
}

TEST_CASE("step3_filter agrees with a direct evaluation of every condition") {
  const int n = 8;
  const BoundsSet b = compute_bounds(n, 1, Integer(5726300), 1);
  FilterSettings fs;
  fs.excluded_norms = {2, 3, 4, 5};
  fs.eval_range = default_eval_range(n);
  auto oracle = [&](const Vec& a) {
    auto p = [&](long x) {
      Integer acc = 1;
      for (const auto& c : a) acc = acc * x + c;
      return acc;
    };
    auto ok_norm = [&](const Integer& v) { return v != 0 && norm_admissible(v, fs.excluded_norms); };
    const double T = b.T;
    const double cap1 = std::pow((T - 2.0 * b.s1) / n + 1, n / 2.0);
    const double capm1 = std::pow((T + 2.0 * b.s1) / n + 1, n / 2.0);
    if (!ok_norm(p(1)) || std::abs(p(1).get_d()) > cap1) return false;
    const Rational a8(a[7]), a7(a[6]), a6(a[5]);
    const Rational sm1 = -a7 / a8;
    const Rational sm2 = sm1 * sm1 - 2 * a6 / a8;
    if (std::abs(sm1.get_d()) > b.U.at(-1) || std::abs(sm2.get_d()) > b.U.at(-2)) return false;
    if (!ok_norm(p(-1)) || std::abs(p(-1).get_d()) > capm1) return false;
    for (long k = 2; k <= 5; ++k)
      if (!ok_norm(p(k)) || !ok_norm(p(-k))) return false;
    // S_8 from the full Newton identity
    std::vector<Integer> S(9, 0);
    for (int m = 1; m <= 8; ++m) {
      Integer v = -Integer(m) * a[static_cast<std::size_t>(m - 1)];
      for (int i = 1; i < m; ++i) v -= a[static_cast<std::size_t>(i - 1)] * S[static_cast<std::size_t>(m - i)];
      S[static_cast<std::size_t>(m)] = v;
    }
    return std::abs(S[8].get_d()) <= b.U.at(8);
  };
  std::mt19937_64 rng(71);
  int kept = 0;
  for (int trial = 0; trial < 200000; ++trial) {
    Vec a(8);
    a[0] = -1;
    for (int i = 1; i < 7; ++i) a[static_cast<std::size_t>(i)] = static_cast<long>(rng() % 9) - 4;
    a[7] = (rng() & 1) ? 1 : -1;
    const bool got = step3_filter(a, b, fs);
    CHECK(got == oracle(a));
    kept += got;
  }
  CHECK(kept > 0);

  // p(1) = 0 always discards
  Vec z{-1, 0, 0, 0, 0, 0, 1, -1};  // 1 - 1 + 1 - 1 + 1 = 1? compute below instead
  Integer p1 = 1;
  for (const auto& v : z) p1 += v;
  z[6] -= p1;
  FilterCondition why = FilterCondition::count;
  CHECK_FALSE(step3_filter(z, b, fs, &why));
  CHECK(why == FilterCondition::p_plus1);

  // a_8 = +-1 reduces the S_-1 / S_-2 checks to coefficient bounds
  FilterSettings plain;
  Vec w{-1, 0, 0, 0, 0, 0, 0, 1};
  w[6] = static_cast<long>(std::floor(b.U.at(-1))) + 1;
  FilterCondition why2 = FilterCondition::count;
  CHECK_FALSE(step3_filter(w, b, plain, &why2));
  CHECK((why2 == FilterCondition::s_minus1 || why2 == FilterCondition::p_plus1 ||
         why2 == FilterCondition::p_minus1 || why2 == FilterCondition::s_n));
}

TEST_CASE("step3_filter keeps a fixture built from a product with known evaluations") {
  // (x^2 + x + 1)(x^6 - x - 1): p(1) = 3*(-1) = -3, p(-1) = 1*1 = 1
  const Vec a{1, 1, 0, 0, -1, -2, -2, -1};
  const BoundsSet b = compute_bounds(8, 0, Integer(5726300), 1);
  // this fixture has trace -1, so use the cell with s1 = 1 after x -> -x
  Vec neg = a;
  for (std::size_t i = 0; i < neg.size(); i += 2) neg[i] = -neg[i];
  const BoundsSet b1 = compute_bounds(8, 1, Integer(5726300), 1);
  FilterSettings fs;  // no excluded norms, evaluation range 2..5
  fs.eval_range = default_eval_range(8);
  CHECK(step3_filter(neg, b1, fs));
  (void)b;
}

TEST_CASE("overflow switches to exact arithmetic at the same position") {
  FilterSettings fs;
  fs.eval_range = {2, 3, 100000};  // 100000^5 does not fit in 64 bits
  const EnumCell cell = make_cell(5, 1, Integer(30000), 1, 1, 0);
  EnumCounters c1, c2;
  bool big1 = false, big2 = false;
  const auto fast = run_all(cell, fs, false, &c1, &big1);
  const auto exact = run_all(cell, fs, true, &c2, &big2);
  CHECK(big1);
  CHECK(big2);
  CHECK(fast == exact);
  CHECK(c1.generated == c2.generated);
  CHECK(c1.passed == c2.passed);
  CHECK(c1.failed == c2.failed);
  // the small-range run never needs the fallback
  FilterSettings small;
  small.eval_range = {2, 3};
  bool big3 = true;
  run_all(cell, small, false, nullptr, &big3);
  CHECK_FALSE(big3);
}

TEST_CASE("stop and resume reproduce the uninterrupted stream") {
  FilterSettings fs;
  fs.eval_range = {2, 3};
  const EnumCell cell = make_cell(5, 0, Integer(30000), 1, -1, 1);
  const auto full = run_all(cell, no_filters());
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> got;
    std::optional<ResumePoint> from;
    int pieces = 0;
    for (;;) {
      const std::uint64_t budget = 1 + rng() % 200;
      std::uint64_t polls = 0;
      CellRunHooks h;
      h.poll_interval = 1;
      h.on_candidate = [&](const Vec& a) { got.push_back(a); };
      h.should_stop = [&] { return ++polls > budget; };
      const auto r = run_cell(cell, no_filters(), from, h, trial % 2 == 1);
      ++pieces;
      if (r.finished) break;
      REQUIRE(r.resume);
      from = r.resume;
    }
    CHECK(pieces > 1);
    CHECK(got == full);
  }
  ResumePoint bad;
  bad.a = {Integer(5), Integer(0), Integer(0), Integer(0), Integer(-1)};
  CellRunHooks h;
  CHECK_THROWS(run_cell(cell, no_filters(), bad, h));
}

TEST_CASE("format_candidate") {
  CHECK(format_candidate({Integer(0), Integer(-1), Integer(-1)}, "s0:a-1:c1") == "3,0,-1,-1,s0:a-1:c1");
}
