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

#include <map>
#include <span>
#include <vector>

#include "nfsearch/integer.hpp"

namespace nfsearch {

/// Hermite constants gamma_p for p = 1..8 (exact values known in these dimensions).
class HermiteTable {
 public:
  HermiteTable();
  bool contains(int p) const { return gamma_.count(p) != 0; }
  /// Throws std::out_of_range for dimensions without an entry.
  double gamma(int p) const;
  const std::map<int, double>& entries() const { return gamma_; }

 private:
  std::map<int, double> gamma_;
};

/// Relative inflation applied to every analytic bound before integer rounding.
inline constexpr double kBoundSafety = 1e-12;

/// Everything the enumerator needs for one (trace, |norm|) pair.
struct BoundsSet {
  int n = 0;
  int s1 = 0;
  Integer disc_bound;
  double T = 0;  // U_2
  long N = 0;
  std::map<int, double> u_roots;  // t -> least positive root
  std::map<int, double> U;        // m in {-2, -1, 3..n} -> U_m (inflated)

  double Um(int m) const { return m == 2 ? T : U.at(m); }
};

/// U_2 = s1^2/n + gamma_{n-1} (disc_bound/n)^(1/(n-1)).
double u2_bound(int n, int s1, const Integer& disc_bound, const HermiteTable& hermite = HermiteTable());

/// (T/n)^(n/2): the AM-GM cap on |N(alpha)| when T_2(alpha) <= T.
double norm_cap(int n, double T);

/// Least y > 0 with t (y^(t-n) N)^(2/t) + (n-t) y^2 = T; requires N <= (T/n)^(n/2).
double least_positive_root(int n, int t, double N, double T);

/// Residual of the root equation, used by tests and invariant checks.
double root_equation(int n, int t, double N, double T, double y);

/// U_m = max_t { t (u_t^(t-n) N)^(m/t) + (n-t) u_t^m } for m in {-2, -1, 3..n}, not inflated.
std::map<int, double> um_bounds(int n, double N, const std::map<int, double>& u_roots);

/// Full bounds for one cell. Throws std::invalid_argument when N > (T/n)^(n/2).
BoundsSet compute_bounds(int n, int s1, const Integer& disc_bound, long N,
                         const HermiteTable& hermite = HermiteTable());

/// Newton's identities: S_1..S_count from a_1..a_n.
std::vector<Integer> coeffs_to_power_sums(std::span<const Integer> a, int count);

/// Inverse of the above for m = 1..n: a_m = -(S_m + sum_{i<m} a_i S_{m-i}) / m.
std::vector<Integer> power_sums_to_coeffs(std::span<const Integer> s);

struct NegativePowerSums {
  Rational s_minus1;
  Rational s_minus2;
};

/// S_{-1} = -a_{n-1}/a_n and S_{-2} = S_{-1}^2 - 2 a_{n-2}/a_n. Throws when a_n = 0.
NegativePowerSums negative_power_sums(std::span<const Integer> a);

}  // namespace nfsearch
