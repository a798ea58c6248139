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

#include "nfsearch/hp_bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nfsearch {

using real = long double;

HermiteTable::HermiteTable() {
  // Classical values (Conway & Sloane, "Sphere Packings, Lattices and Groups", Table 1.2).
  gamma_[1] = 1.0;
  gamma_[2] = std::sqrt(4.0 / 3.0);
  gamma_[3] = std::cbrt(2.0);
  gamma_[4] = std::sqrt(2.0);
  gamma_[5] = std::pow(8.0, 1.0 / 5.0);
  gamma_[6] = std::pow(64.0 / 3.0, 1.0 / 6.0);
  gamma_[7] = std::pow(64.0, 1.0 / 7.0);
  gamma_[8] = 2.0;
}

double HermiteTable::gamma(int p) const {
  auto it = gamma_.find(p);
  if (it == gamma_.end()) throw std::out_of_range("no Hermite constant for dimension " + std::to_string(p));
  return it->second;
}

double u2_bound(int n, int s1, const Integer& disc_bound, const HermiteTable& hermite) {
  if (n < 2) throw std::invalid_argument("u2_bound: degree must be >= 2");
  if (s1 < 0 || 2 * s1 > n) throw std::invalid_argument("u2_bound: trace outside [0, n/2]");
  if (disc_bound < 1) throw std::invalid_argument("u2_bound: disc_bound must be >= 1");
  const real g = hermite.gamma(n - 1);
  const real d = disc_bound.get_d();
  return static_cast<double>(static_cast<real>(s1) * s1 / n + g * powl(d / n, 1.0L / (n - 1)));
}

double norm_cap(int n, double T) { return static_cast<double>(powl(static_cast<real>(T) / n, n / 2.0L)); }

namespace {

// t (y^(t-n) N)^(2/t) evaluated through logs.
real big_term(int n, int t, real N, real y, real m) {
  return t * expl(m / t * ((t - n) * logl(y) + logl(N)));
}

real equation(int n, int t, real N, real T, real y) {
  return big_term(n, t, N, y, 2) + (n - t) * y * y - T;
}

}  // namespace

double root_equation(int n, int t, double N, double T, double y) {
  return static_cast<double>(equation(n, t, N, T, y));
}

double least_positive_root(int n, int t, double N, double T) {
  if (t < 1 || t >= n) throw std::invalid_argument("least_positive_root: t outside [1, n-1]");
  if (!(N > 0) || !(T > 0)) throw std::invalid_argument("least_positive_root: N and T must be positive");
  const real cap = powl(static_cast<real>(T) / n, n / 2.0L);
  if (static_cast<real>(N) > cap * (1 + 1e-15L))
    throw std::invalid_argument("least_positive_root: N exceeds (T/n)^(n/2)");
  // The equation decreases on (0, N^(1/n)] and is <= 0 at N^(1/n), so the least root lies there.
  real hi = powl(static_cast<real>(N), 1.0L / n);
  // At N = (T/n)^(n/2) the root is double, so rounding in N moves it by sqrt(eps). U_m is
  // stationary there, so snap to the tangent point.
  if (equation(n, t, N, T, hi) >= -1e-14L * T) return static_cast<double>(hi);
  real lo = hi;
  while (equation(n, t, N, T, lo) <= 0) lo /= 2;
  for (int it = 0; it < 400 && (hi - lo) > 1e-13L * hi; ++it) {
    const real mid = (lo + hi) / 2;
    if (equation(n, t, N, T, mid) > 0) lo = mid; else hi = mid;
  }
  // Newton polish, kept inside the bracket.
  real y = (lo + hi) / 2;
  for (int it = 0; it < 2; ++it) {
    const real b = big_term(n, t, N, y, 2);
    const real d = 2.0L * (t - n) / t * b / y + 2.0L * (n - t) * y;
    if (d == 0) break;
    const real next = y - equation(n, t, N, T, y) / d;
    if (next >= lo && next <= hi) y = next;
  }
  return static_cast<double>(y);
}

std::map<int, double> um_bounds(int n, double N, const std::map<int, double>& u_roots) {
  std::map<int, double> U;
  std::vector<int> ms{-2, -1};
  for (int m = 3; m <= n; ++m) ms.push_back(m);
  for (const int m : ms) {
    real best = 0;
    for (int t = 1; t < n; ++t) {
      const real u = u_roots.at(t);
      const real v = big_term(n, t, N, u, m) + (n - t) * powl(u, static_cast<real>(m));
      if (v > best) best = v;
    }
    U[m] = static_cast<double>(best);
  }
  return U;
}

BoundsSet compute_bounds(int n, int s1, const Integer& disc_bound, long N, const HermiteTable& hermite) {
  BoundsSet b;
  b.n = n;
  b.s1 = s1;
  b.disc_bound = disc_bound;
  b.N = N;
  b.T = u2_bound(n, s1, disc_bound, hermite) * (1 + kBoundSafety);
  if (N < 1 || static_cast<double>(N) > norm_cap(n, b.T))
    throw std::invalid_argument("compute_bounds: N=" + std::to_string(N) + " violates N <= (T/n)^(n/2)");
  for (int t = 1; t < n; ++t) b.u_roots[t] = least_positive_root(n, t, static_cast<double>(N), b.T);
  b.U = um_bounds(n, static_cast<double>(N), b.u_roots);
  for (auto& [m, v] : b.U) v *= (1 + kBoundSafety);
  return b;
}

std::vector<Integer> coeffs_to_power_sums(std::span<const Integer> a, int count) {
  const int n = static_cast<int>(a.size());
  std::vector<Integer> S(static_cast<std::size_t>(count) + 1);  // S[0] unused
  for (int m = 1; m <= count; ++m) {
    Integer acc = 0;
    const int top = std::min(m - 1, n);
    for (int i = 1; i <= top; ++i) acc += a[static_cast<std::size_t>(i - 1)] * S[static_cast<std::size_t>(m - i)];
    if (m <= n) acc += m * a[static_cast<std::size_t>(m - 1)];
    S[static_cast<std::size_t>(m)] = -acc;
  }
  S.erase(S.begin());
  return S;
}

std::vector<Integer> power_sums_to_coeffs(std::span<const Integer> s) {
  const int n = static_cast<int>(s.size());
  std::vector<Integer> a(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    Integer acc = s[static_cast<std::size_t>(m - 1)];
    for (int i = 1; i < m; ++i) acc += a[static_cast<std::size_t>(i - 1)] * s[static_cast<std::size_t>(m - i - 1)];
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(m)))
      throw std::invalid_argument("power sums violate the Newton congruences at m=" + std::to_string(m));
    a[static_cast<std::size_t>(m - 1)] = -acc / m;
  }
  return a;
}

NegativePowerSums negative_power_sums(std::span<const Integer> a) {
  const std::size_t n = a.size();
  if (n == 0 || a[n - 1] == 0) throw std::invalid_argument("negative_power_sums: a_n = 0");
  const Integer& an = a[n - 1];
  const Integer an1 = n >= 2 ? a[n - 2] : Integer(1);  // the coefficient a_0 = 1 of x^n
  const Integer an2 = n >= 3 ? a[n - 3] : (n == 2 ? Integer(1) : Integer(0));
  // mpq arithmetic requires canonical operands
  const auto quotient = [](const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  const Rational s1 = quotient(-an1, an);
  const Rational s2 = s1 * s1 - quotient(2 * an2, an);
  return {s1, s2};
}

}  // namespace nfsearch
