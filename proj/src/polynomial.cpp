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

#include "nfsearch/polynomial.hpp"

namespace nfsearch {

ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo_remainder: zero divisor");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> r = a.coeffs();
  const int db = b.degree();
  const Integer& lb = b.lead();
  for (int d = a.degree(); d >= db; --d) {
    const Integer t = r[static_cast<std::size_t>(d)];
    for (auto& v : r) v *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(d - db + j)] -= t * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return ZPoly(std::move(r));
}

std::pair<ZPoly, ZPoly> divide_monic(const ZPoly& a, const ZPoly& m) {
  if (m.is_zero() || m.lead() != 1) throw std::domain_error("divide_monic: divisor not monic");
  if (a.degree() < m.degree()) return {a, ZPoly{}};
  std::vector<Integer> r = a.coeffs();
  const int dm = m.degree();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - dm + 1));
  for (int d = a.degree(); d >= dm; --d) {
    const Integer t = r[static_cast<std::size_t>(d)];
    q[static_cast<std::size_t>(d - dm)] = t;
    if (t == 0) continue;
    for (int j = 0; j <= dm; ++j) r[static_cast<std::size_t>(d - dm + j)] -= t * m[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(dm));
  return {ZPoly(std::move(r)), ZPoly(std::move(q))};
}

bool divides(const ZPoly& d, const ZPoly& a, ZPoly* quotient) {
  if (d.is_zero()) return a.is_zero();
  if (a.degree() < d.degree()) {
    if (quotient) *quotient = ZPoly{};
    return a.is_zero();
  }
  std::vector<Integer> r = a.coeffs();
  const int dd = d.degree();
  const Integer& ld = d.lead();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - dd + 1));
  for (int k = a.degree(); k >= dd; --k) {
    const Integer& top = r[static_cast<std::size_t>(k)];
    if (!mpz_divisible_p(top.get_mpz_t(), ld.get_mpz_t())) return false;
    const Integer t = top / ld;
    q[static_cast<std::size_t>(k - dd)] = t;
    if (t == 0) continue;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= t * d[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < dd; ++j)
    if (r[static_cast<std::size_t>(j)] != 0) return false;
  if (quotient) *quotient = ZPoly(std::move(q));
  return true;
}

Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& v : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

ZPoly primitive_part(const ZPoly& p, bool keep_sign) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (!keep_sign && p.lead() < 0) g = -g;
  return exact_divide(p, g);
}

ZPoly exact_divide(const ZPoly& p, const Integer& d) {
  std::vector<Integer> c = p.coeffs();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  return ZPoly(std::move(c));
}

ZPoly from_monic_coeffs(std::span<const Integer> a) {
  const std::size_t n = a.size();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  for (std::size_t i = 1; i <= n; ++i) c[n - i] = a[i - 1];
  return ZPoly(std::move(c));
}

std::vector<Integer> to_monic_coeffs(const ZPoly& p) {
  const int n = p.degree();
  std::vector<Integer> a(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 1; i <= n; ++i) a[static_cast<std::size_t>(i - 1)] = p[static_cast<std::size_t>(n - i)];
  return a;
}

ZPoly reflect(const ZPoly& p) {
  std::vector<Integer> c = p.coeffs();
  const int n = p.degree();
  for (int i = 0; i <= n; ++i)
    if ((n - i) % 2 != 0) c[static_cast<std::size_t>(i)] = -c[static_cast<std::size_t>(i)];
  return ZPoly(std::move(c));
}

std::ostream& operator<<(std::ostream& os, const ZPoly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Integer& v = p[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    Integer mag = abs(v);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag;
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os;
}

}  // namespace nfsearch
