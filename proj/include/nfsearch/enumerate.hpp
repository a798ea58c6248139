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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nfsearch/hp_bounds.hpp"
#include "nfsearch/integer.hpp"

namespace nfsearch {

/// One independent enumeration job: fixed trace s1, constant term a_n = sign * N, and the parity
/// c of p(1).
struct EnumCell {
  int n = 0;
  int s1 = 0;
  long N = 1;
  int sign = 1;
  int parity_c = 0;
  BoundsSet bounds;

  Integer a_n() const { return Integer(sign * N); }
  /// Stable identifier, e.g. "s0:a-1:c1".
  std::string id() const;
};

/// Throws std::invalid_argument when N exceeds (T/n)^(n/2) or the parameters are out of range.
EnumCell make_cell(int n, int s1, const Integer& disc_bound, long N, int sign, int parity_c);

struct FilterSettings {
  bool enabled = true;
  std::vector<long> excluded_norms;
  std::vector<int> eval_range;  // k for the p(+-k) checks
};

/// 2..floor(5n/8).
std::vector<int> default_eval_range(int n);

enum class FilterCondition { p_plus1, p_minus1, s_n, s_minus1, s_minus2, p_k, count };
inline constexpr std::size_t kFilterConditions = static_cast<std::size_t>(FilterCondition::count);
const char* to_string(FilterCondition c);

/// `generated` counts full coefficient vectors reached; each is either passed or charged to the
/// first condition it failed.
struct EnumCounters {
  std::uint64_t generated = 0;
  std::uint64_t passed = 0;
  std::array<std::uint64_t, kFilterConditions> failed{};

  std::uint64_t discarded() const;
  EnumCounters& operator+=(const EnumCounters& o);
};

/// Coefficient and power-sum cursor, indexed by level m (entry 0 unused).
struct EnumState {
  int n = 0;
  std::vector<Integer> a;  // a[1..n]
  std::vector<Integer> S;  // S[1..n-1]
  std::vector<Integer> k;  // residues k_m
  std::vector<Integer> L;  // lower cutoffs L_m
  int level = 1;

  static EnumState start(int n, int s1, const Integer& a_n);
};

/// Sets k_m, S_m (largest value <= U_m in the forced class), a_m and L_m for level m.
void init_level(EnumState& st, int m, double U_m);

/// Smallest integer >= -U_m congruent to k mod m: -m floor((U_m - (m-k))/m) - (m-k).
Integer lower_cutoff(int m, const Integer& k, double U_m);

/// Forces p(1) = c mod 2 by moving the innermost level n-1 one step. Returns true if it moved.
bool parity_adjust(EnumState& st, int c);

/// Step-3 battery on a full vector a_1..a_n. On rejection *failed names the first failing condition.
bool step3_filter(const std::vector<Integer>& a, const BoundsSet& b, const FilterSettings& fs,
                  FilterCondition* failed = nullptr);

/// `n,a1,...,an,cellid`
std::string format_candidate(const std::vector<Integer>& a, const std::string& cell_id);

/// Position of the next candidate to examine (a_1..a_n). skip_current: that candidate was
/// already examined.
struct ResumePoint {
  std::vector<Integer> a;
  bool skip_current = false;
};

struct CellRunHooks {
  std::function<void(const std::vector<Integer>&)> on_candidate;  // survivors, a_1..a_n
  std::function<bool()> should_stop;                               // polled between candidates
  std::uint64_t poll_interval = 4096;
};

struct CellRunResult {
  bool finished = false;
  std::optional<ResumePoint> resume;  // set when stopped early
  EnumCounters counters;
  bool used_bigint = false;
};

/// Runs a cell to completion or until should_stop. Uses overflow-checked 64-bit arithmetic and
/// switches to arbitrary precision at the current position on overflow.
CellRunResult run_cell(const EnumCell& cell, const FilterSettings& fs, const std::optional<ResumePoint>& from,
                       const CellRunHooks& hooks, bool force_bigint = false);

}  // namespace nfsearch
