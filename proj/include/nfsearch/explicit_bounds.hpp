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

#include <span>
#include <vector>

#include "nfsearch/integer.hpp"

namespace nfsearch {

/// Degree and signature of a number field: n = r1 + 2 r2.
struct Signature {
  int n = 0;
  int r1 = 0;
  int r2 = 0;

  /// Throws std::invalid_argument unless n = r1 + 2 r2 and n >= 2.
  static Signature make(int r1, int r2);
  static Signature make(int n, int r1, int r2);
};

/// Hypothesized prime ideals, each given by its norm, plus the truncation of the inner sum over m.
struct LocalTerms {
  std::vector<long> norms;
  int series_cutoff = 200;
};

struct BoundEvaluation {
  double y = 0;
  double rhs = 0;            // lower bound for (1/n) log|d_K|
  double implied_bound = 0;  // exp(n * rhs)
};

struct YRange {
  double lo = 1e-3;
  double hi = 10.0;
};

inline constexpr int kDefaultKCutoff = 10000;

/// Tartar's function (3 (sin x - x cos x) / x^3)^2, equal to 1 at 0.
double tartar_f(double x);

/// Archimedean kernel L(y) = 2 (1 - b Lap[f](b)), b = 1/sqrt(y), in closed form:
///   -3/(20y^2) + 33/(10y) + 2 + (3/(80y^3) + 3/(4y^2)) log(1+4y) - (12/5 + 3/y) atan(2 sqrt y)/sqrt y.
/// Below y = 0.05 the closed form cancels badly and the Taylor series is summed instead.
double l_func(double y);

/// L1(y) = sum_k L(y/(2k-1)^2)/(2k-1) + (r1/n) (sum_k (-1)^(k+1) L(y/k^2) - 1),
/// truncated at k_cutoff with analytic tail corrections.
double l1_func(double y, const Signature& sig, int k_cutoff = kDefaultKCutoff);

/// Right-hand side of the explicit-formula inequality at a fixed y.
BoundEvaluation rhs_bound(double y, const Signature& sig, const LocalTerms& local,
                          int k_cutoff = kDefaultKCutoff);

/// Maximizes rhs_bound over y: geometric grid scan then golden-section refinement.
BoundEvaluation optimize_bound(const Signature& sig, const LocalTerms& local, YRange range = {},
                               int k_cutoff = kDefaultKCutoff);

/// False iff some excluded norm p^j has v_p(v) == j exactly. v must be nonzero.
bool norm_admissible(const Integer& v, std::span<const long> excluded_norms);
bool norm_admissible(long long v, std::span<const long> excluded_norms);

/// Prime-power decomposition q = p^j; throws if q is not a prime power >= 2.
struct PrimePower {
  long p = 0;
  unsigned j = 0;
};
PrimePower as_prime_power(long q);

}  // namespace nfsearch
