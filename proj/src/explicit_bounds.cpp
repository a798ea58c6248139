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

#include "nfsearch/explicit_bounds.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nfsearch {

namespace {

using real = long double;

// Euler-Mascheroni constant, OEIS A001620.
constexpr real kEulerGamma = 0.57721566490153286060651209008240243L;
constexpr real kPi = 3.14159265358979323846264338327950288L;

constexpr int kSeriesTerms = 28;
constexpr real kSeriesSwitch = 0.05L;

// L(y) = sum_{j>=1} c_j y^j with c_j = (9/4) (-1)^(j+1) mu_{2j}, where mu_k is the k-th moment on [0,2]
// of w(s) = 16/15 - 4s^2/3 + 2s^3/3 - s^5/30, the autocorrelation of 1 - x^2 on [-1,1].
std::array<real, kSeriesTerms + 1> series_coefficients() {
  std::array<real, kSeriesTerms + 1> c{};
  for (int j = 1; j <= kSeriesTerms; ++j) {
    const real e = 2.0L * j;
    const real mu = -ldexpl(1.0L, 2 * j + 6) / (30.0L * (e + 6)) + (2.0L / 3.0L) * ldexpl(1.0L, 2 * j + 4) / (e + 4) -
                    (4.0L / 3.0L) * ldexpl(1.0L, 2 * j + 3) / (e + 3) + (16.0L / 15.0L) * ldexpl(1.0L, 2 * j + 1) / (e + 1);
    c[static_cast<std::size_t>(j)] = (j % 2 == 1 ? 2.25L : -2.25L) * mu;
  }
  return c;
}

const std::array<real, kSeriesTerms + 1>& coefficients() {
  static const auto c = series_coefficients();
  return c;
}

real l_series(real y) {
  const auto& c = coefficients();
  real acc = 0;
  for (int j = kSeriesTerms; j >= 1; --j) acc = (acc + c[static_cast<std::size_t>(j)]) * y;
  return acc;
}

real l_closed(real y) {
  const real sy = sqrtl(y);
  return -3.0L / (20.0L * y * y) + 33.0L / (10.0L * y) + 2.0L +
         (3.0L / (80.0L * y * y * y) + 3.0L / (4.0L * y * y)) * log1pl(4.0L * y) -
         (2.4L + 3.0L / y) * atanl(2.0L * sy) / sy;
}

real l_eval(real y) { return y < kSeriesSwitch ? l_series(y) : l_closed(y); }

real tartar(real x) {
  x = fabsl(x);
  real g;
  if (x < 1.0L) {
    // 3 (sin x - x cos x)/x^3 = 3 sum_{k>=1} (-1)^(k+1) 2k x^(2k-2) / (2k+1)!
    g = 0;
    real fact = 6.0L;  // (2k+1)! for k = 1
    real xp = 1.0L;
    const real x2 = x * x;
    for (int k = 1; k <= 14; ++k) {
      const real term = 2.0L * k * xp / fact;
      g += (k % 2 == 1) ? term : -term;
      xp *= x2;
      fact *= (2.0L * k + 2) * (2.0L * k + 3);
    }
    g *= 3.0L;
  } else {
    g = 3.0L * (sinl(x) - x * cosl(x)) / (x * x * x);
  }
  return g * g;
}

// sum_{k>K} L(y/(2k-1)^2)/(2k-1), Euler-Maclaurin through the B4 term, termwise on the series.
real odd_tail(real y, int K) {
  const auto& c = coefficients();
  const real base = 2.0L * K - 1.0L;
  const real arg = y / (base * base);
  if (arg >= kSeriesSwitch) return 0;  // cutoff too small for the series; caller's responsibility
  real acc = 0;
  real yj = 1;
  for (int j = 1; j <= kSeriesTerms; ++j) {
    yj *= y;
    const real s = 2.0L * j + 1;
    const real bs = powl(base, -s);
    const real term = bs * base / (4.0L * j) - bs / 2.0L + s * bs / base / 6.0L -
                      8.0L * s * (s + 1) * (s + 2) * bs / (base * base * base) / 720.0L;
    acc += c[static_cast<std::size_t>(j)] * yj * term;
    if (fabsl(c[static_cast<std::size_t>(j)] * yj * bs * base) < 1e-30L) break;
  }
  return acc;
}

// sum_{k>K} (-1)^(k+1) L(y/k^2), Boole summation through the third derivative.
real alternating_tail(real y, int K) {
  const auto& c = coefficients();
  const real m = K + 1.0L;
  if (y / (m * m) >= kSeriesSwitch) return 0;
  real acc = 0;
  real yj = 1;
  for (int j = 1; j <= kSeriesTerms; ++j) {
    yj *= y;
    const real s = 2.0L * j;
    const real ms = powl(m, -s);
    const real term = ms / 2.0L + s * ms / m / 4.0L - s * (s + 1) * (s + 2) * ms / (m * m * m) / 48.0L;
    acc += c[static_cast<std::size_t>(j)] * yj * term;
    if (fabsl(c[static_cast<std::size_t>(j)] * yj * ms) < 1e-30L) break;
  }
  return (K % 2 == 0) ? acc : -acc;
}

real l1_eval(real y, const Signature& sig, int K) {
  real odd = 0;
  real alt = 0;
  for (int k = K; k >= 1; --k) {
    const real o = 2.0L * k - 1.0L;
    odd += l_eval(y / (o * o)) / o;
    const real v = l_eval(y / (static_cast<real>(k) * k));
    alt += (k % 2 == 1) ? v : -v;
  }
  odd += odd_tail(y, K);
  alt += alternating_tail(y, K);
  return odd + static_cast<real>(sig.r1) / sig.n * (alt - 1.0L);
}

real local_sum(real y, const LocalTerms& local) {
  real acc = 0;
  const real sy = sqrtl(y);
  for (const long q : local.norms) {
    const real lq = logl(static_cast<real>(q));
    real qm = 1;
    for (int m = 1; m <= local.series_cutoff; ++m) {
      qm *= static_cast<real>(q);
      if (!std::isfinite(static_cast<double>(qm))) break;  // remaining terms are below 1e-300
      acc += lq / (1.0L + qm) * tartar(m * lq * sy);
    }
  }
  return acc;
}

}  // namespace

Signature Signature::make(int r1, int r2) { return make(r1 + 2 * r2, r1, r2); }

Signature Signature::make(int n, int r1, int r2) {
  if (r1 < 0 || r2 < 0 || n != r1 + 2 * r2 || n < 2)
    throw std::invalid_argument("invalid signature: n=" + std::to_string(n) + " r1=" + std::to_string(r1) +
                                " r2=" + std::to_string(r2));
  return Signature{n, r1, r2};
}

double tartar_f(double x) { return static_cast<double>(tartar(x)); }

double l_func(double y) {
  if (!(y > 0)) throw std::invalid_argument("l_func: y must be positive");
  return static_cast<double>(l_eval(y));
}

double l1_func(double y, const Signature& sig, int k_cutoff) {
  if (!(y > 0)) throw std::invalid_argument("l1_func: y must be positive");
  if (k_cutoff < 1) throw std::invalid_argument("l1_func: k_cutoff must be >= 1");
  return static_cast<double>(l1_eval(y, sig, k_cutoff));
}

BoundEvaluation rhs_bound(double y, const Signature& sig, const LocalTerms& local, int k_cutoff) {
  if (!(y > 0)) throw std::invalid_argument("rhs_bound: y must be positive");
  if (k_cutoff < 1) throw std::invalid_argument("rhs_bound: k_cutoff must be >= 1");
  for (const long q : local.norms) as_prime_power(q);
  const real n = sig.n;
  const real rhs = kEulerGamma + logl(4.0L * kPi) - l1_eval(y, sig, k_cutoff) - 12.0L * kPi / (5.0L * n * sqrtl(y)) +
                   4.0L / n * local_sum(y, local);
  return BoundEvaluation{y, static_cast<double>(rhs), static_cast<double>(expl(n * rhs))};
}

BoundEvaluation optimize_bound(const Signature& sig, const LocalTerms& local, YRange range, int k_cutoff) {
  if (!(range.lo > 0) || !(range.lo < range.hi)) throw std::invalid_argument("optimize_bound: invalid y range");
  constexpr int kGrid = 240;
  const double llo = std::log(range.lo);
  const double lhi = std::log(range.hi);
  const double step = (lhi - llo) / (kGrid - 1);
  BoundEvaluation best{};
  best.rhs = -HUGE_VAL;
  int best_i = 0;
  for (int i = 0; i < kGrid; ++i) {
    const auto e = rhs_bound(std::exp(llo + i * step), sig, local, k_cutoff);
    if (e.rhs > best.rhs) {
      best = e;
      best_i = i;
    }
  }
  // Golden section on log y over the neighbouring grid cells.
  double a = llo + std::max(best_i - 1, 0) * step;
  double b = llo + std::min(best_i + 1, kGrid - 1) * step;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  auto f1 = rhs_bound(std::exp(x1), sig, local, k_cutoff);
  auto f2 = rhs_bound(std::exp(x2), sig, local, k_cutoff);
  while (b - a > 1e-9) {
    if (f1.rhs >= f2.rhs) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = rhs_bound(std::exp(x1), sig, local, k_cutoff);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = rhs_bound(std::exp(x2), sig, local, k_cutoff);
    }
  }
  if (f1.rhs > best.rhs) best = f1;
  if (f2.rhs > best.rhs) best = f2;
  return best;
}

PrimePower as_prime_power(long q) {
  if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  long p = 0;
  for (long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned j = 0;
  long r = q;
  while (r % p == 0) {
    r /= p;
    ++j;
  }
  if (r != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  return {p, j};
}

bool norm_admissible(const Integer& v, std::span<const long> excluded_norms) {
  if (v == 0) throw std::invalid_argument("norm_admissible: zero is never a norm");
  for (const long q : excluded_norms) {
    const auto pp = as_prime_power(q);
    if (valuation(v, static_cast<unsigned long>(pp.p)) == pp.j) return false;
  }
  return true;
}

bool norm_admissible(long long v, std::span<const long> excluded_norms) {
  if (v == 0) throw std::invalid_argument("norm_admissible: zero is never a norm");
  for (const long q : excluded_norms) {
    const auto pp = as_prime_power(q);
    unsigned e = 0;
    long long r = v;
    while (r % pp.p == 0) {
      r /= pp.p;
      ++e;
    }
    if (e == pp.j) return false;
  }
  return true;
}

}  // namespace nfsearch
