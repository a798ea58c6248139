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

// Independent reference computations used by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nfsearch/integer.hpp"
#include "nfsearch/polynomial.hpp"
#include "nfsearch/verify.hpp"

namespace oracle {

using HP = boost::multiprecision::cpp_bin_float_50;
using nfsearch::Integer;
using nfsearch::ZPoly;

inline HP tartar(const HP& x) {
  if (x == 0) return 1;
  const HP t = 3 * (sin(x) - x * cos(x)) / (x * x * x);
  return t * t;
}

// Closed form of the archimedean kernel evaluated in 50 digits.
inline HP l_closed(const HP& y) {
  const HP sy = sqrt(y);
  return -HP(3) / (20 * y * y) + HP(33) / (10 * y) + 2 +
         (HP(3) / (80 * y * y * y) + HP(3) / (4 * y * y)) * log(1 + 4 * y) -
         (HP(12) / 5 + 3 / y) * atan(2 * sy) / sy;
}

// The same kernel from its integral definition: 2 (1 - b int_0^inf f(x) e^(-bx) dx), b = 1/sqrt(y).
inline double l_laplace(double y) {
  using boost::multiprecision::cpp_bin_float_quad;
  const cpp_bin_float_quad b = 1 / sqrt(cpp_bin_float_quad(y));
  auto integrand = [&](cpp_bin_float_quad x) {
    cpp_bin_float_quad f;
    if (x < cpp_bin_float_quad("1e-3")) {
      const cpp_bin_float_quad x2 = x * x;
      f = 1 - x2 / 5 + 3 * x2 * x2 / 175 - 4 * x2 * x2 * x2 / 4725;
    } else {
      const cpp_bin_float_quad t = 3 * (sin(x) - x * cos(x)) / (x * x * x);
      f = t * t;
    }
    return f * exp(-b * x);
  };
  boost::math::quadrature::exp_sinh<cpp_bin_float_quad> integrator;
  const cpp_bin_float_quad I = integrator.integrate(integrand, cpp_bin_float_quad("1e-25"));
  return static_cast<double>(2 * (1 - b * I));
}

// Determinant by fraction-free Gaussian elimination.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[r], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// (-1)^(n(n-1)/2) det Sylvester(f, f') for monic f.
inline Integer sylvester_discriminant(const ZPoly& f) {
  const ZPoly g = nfsearch::derivative(f);
  const int n = f.degree(), m = g.degree();
  const int size = n + m;
  std::vector<std::vector<Integer>> S(static_cast<std::size_t>(size), std::vector<Integer>(static_cast<std::size_t>(size), 0));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = f[static_cast<std::size_t>(n - i)];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) S[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(r + i)] = g[static_cast<std::size_t>(m - i)];
  Integer res = bareiss_det(S);
  if ((n * (n - 1) / 2) % 2) res = -res;
  return res;
}

inline std::vector<Integer> divisors(Integer v) {
  v = abs(v);
  std::vector<Integer> d;
  for (Integer i = 1; i * i <= v; ++i) {
    if (v % i == 0) {
      d.push_back(i);
      if (i * i != v) d.push_back(v / i);
    }
  }
  return d;
}

// Reducibility of a monic integer polynomial of degree <= 4 by exhaustive factor search.
inline bool naive_reducible(const std::vector<Integer>& a) {
  const int n = static_cast<int>(a.size());
  const ZPoly f = nfsearch::from_monic_coeffs(a);
  if (a.back() == 0) return true;
  for (const auto& d : divisors(a.back()))
    for (int s : {1, -1})
      if (nfsearch::evaluate(f, Integer(s * d)) == 0) return true;
  if (n < 4) return false;
  // (x^2 + b x + c)(x^2 + d x + e): c e = a4, b + d = a1, bd + c + e = a2, be + cd = a3.
  for (const auto& dc : divisors(a[3])) {
    for (int s : {1, -1}) {
      const Integer c = s * dc;
      const Integer e = a[3] / c;
      // b is a root of b^2 - a1 b + (a2 - c - e) = 0.
      const Integer disc = a[0] * a[0] - 4 * (a[1] - c - e);
      if (disc < 0 || !nfsearch::is_perfect_square(disc)) continue;
      const Integer r = nfsearch::isqrt(disc);
      for (const Integer& twob : {Integer(a[0] + r), Integer(a[0] - r)}) {
        if (twob % 2 != 0) continue;
        const Integer b = twob / 2, d = a[0] - b;
        if (b * e + c * d == a[2]) return true;
      }
    }
  }
  return false;
}

inline long squarefree_part(long d) {
  long s = d < 0 ? -1 : 1;
  long v = std::labs(d);
  for (long p = 2; p * p <= v; ++p) {
    while (v % (p * p) == 0) v /= p * p;
    if (v % p == 0) {
      s *= p;
      v /= p;
    }
  }
  return s * v;
}

// Real roots by sign changes of p on a dyadic grid over the Cauchy bound, in exact arithmetic.
// Counts sign changes of p on a dyadic grid of step 2^-bits over the Cauchy interval. A cell where p keeps
// its sign while p' flips may hide a close pair of roots, so such cells are bisected further.
inline int sign_change_roots(const ZPoly& p, int bits) {
  using nfsearch::Rational;
  const ZPoly dp = nfsearch::derivative(p);
  auto sign_at = [](const ZPoly& f, const Rational& x) { return sgn(nfsearch::evaluate(f, x)); };
  Integer bound = 0;
  for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, Integer(abs(p[static_cast<std::size_t>(i)])));
  bound += 1;
  std::function<int(const Rational&, const Rational&, int, int)> cell = [&](const Rational& l, const Rational& r,
                                                                          int sl, int depth) -> int {
    const int sr = sign_at(p, r);
    if (sr == 0) return 1;  // root at the right end; the next cell starts just past it
    if (sl != sr) return 1;
    if (depth == 0 || sign_at(dp, l) == sign_at(dp, r)) return 0;
    const Rational m = (l + r) / 2;
    const int sm = sign_at(p, m);
    if (sm == 0) return 2;
    return cell(l, m, sl, depth - 1) + cell(m, r, sm, depth - 1);
  };
  const Rational step(Integer(1), nfsearch::pow_of(Integer(2), static_cast<unsigned long>(bits)));
  // shift the grid off dyadic points by a tiny odd offset so exact roots land strictly inside cells
  Rational x = Rational(-bound) - Rational(1, 3) * step;
  int sx = sign_at(p, x);
  int roots = 0;
  while (x < Rational(bound)) {
    const Rational y = x + step;
    roots += cell(x, y, sx, 40);
    x = y;
    sx = sign_at(p, x);
    if (sx == 0) {  // counted already; nudge past
      x += step / 7;
      sx = sign_at(p, x);
    }
  }
  return roots;
}

inline std::map<Integer, std::vector<Integer>> coefficient_box_fields(const nfsearch::Signature& sig,
                                                                      const Integer& bound, int box) {
  std::map<Integer, std::vector<Integer>> found;
  std::vector<Integer> a(static_cast<std::size_t>(sig.n), -box);
  for (;;) {
    if (a.back() != 0) {
      const auto out = nfsearch::verify_candidate(nfsearch::CandidatePolynomial{a, "box"}, sig, bound);
      if (out.status == nfsearch::VerifyStatus::accepted) found.emplace(out.record.field_disc, a);
    }
    std::size_t i = 0;
    while (i < a.size() && a[i] == box) a[i++] = -box;
    if (i == a.size()) break;
    a[i] += 1;
  }
  return found;
}

}  // namespace oracle
