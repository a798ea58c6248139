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

#include "nfsearch/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace nfsearch::fp {

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e != 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("fp: inverse of zero");
  return pow(a, p_ - 2);
}

std::uint64_t Field::reduce(const Integer& v) const {
  return static_cast<std::uint64_t>(mpz_fdiv_ui(v.get_mpz_t(), p_));
}

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs reduce(const ZPoly& f, const Field& F) {
  Coeffs r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.reduce(f.coeffs()[i]);
  trim(r);
  return r;
}

ZPoly lift(const Coeffs& a) {
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_set_ui(c[i].get_mpz_t(), a[i]);
  return ZPoly(std::move(c));
}

Coeffs add(const Field& F, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

Coeffs sub(const Field& F, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

Coeffs mul(const Field& F, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Coeffs scale(const Field& F, const Coeffs& a, std::uint64_t s) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

Coeffs derivative(const Field& F, const Coeffs& a) {
  if (a.size() <= 1) return {};
  Coeffs r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.modulus());
  trim(r);
  return r;
}

std::pair<Coeffs, Coeffs> divrem(const Field& F, const Coeffs& a, const Coeffs& b) {
  if (b.empty()) throw std::domain_error("fp::divrem: division by zero");
  if (a.size() < b.size()) return {Coeffs{}, a};
  Coeffs r = a;
  const std::size_t db = b.size() - 1;
  Coeffs q(a.size() - db, 0);
  const std::uint64_t il = F.inv(b.back());
  for (std::size_t d = a.size() - 1 + 1; d-- > db;) {
    const std::uint64_t t = F.mul(r[d], il);
    q[d - db] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[d - db + j] = F.sub(r[d - db + j], F.mul(t, b[j]));
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

Coeffs rem(const Field& F, const Coeffs& a, const Coeffs& b) { return divrem(F, a, b).second; }

Coeffs make_monic(const Field& F, const Coeffs& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

Coeffs gcd(const Field& F, Coeffs a, Coeffs b) {
  while (!b.empty()) {
    Coeffs r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

ExtendedGcd ext_gcd(const Field& F, const Coeffs& a, const Coeffs& b) {
  Coeffs r0 = a, r1 = b;
  Coeffs s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divrem(F, r0, r1);
    Coeffs s2 = sub(F, s0, mul(F, q, s1));
    Coeffs t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  const std::uint64_t il = F.inv(r0.back());
  return {scale(F, r0, il), scale(F, s0, il), scale(F, t0, il)};
}

Coeffs powmod(const Field& F, const Coeffs& base, const Integer& e, const Coeffs& m) {
  Coeffs result = rem(F, Coeffs{1}, m);
  Coeffs b = rem(F, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(F, mul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(F, mul(F, result, b), m);
  }
  return result;
}

namespace {

Coeffs exact_quotient(const Field& F, const Coeffs& a, const Coeffs& b) { return divrem(F, a, b).first; }

// Coefficients of the p-th root of a polynomial in x^p (Frobenius is the identity on F_p).
Coeffs pth_root(const Field& F, const Coeffs& a) {
  const std::uint64_t p = F.modulus();
  Coeffs r((a.size() - 1) / p + 1, 0);
  for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = a[i];
  trim(r);
  return r;
}

bool poly_less(const Coeffs& a, const Coeffs& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

std::vector<std::pair<Coeffs, int>> squarefree_factorization(const Field& F, const Coeffs& f) {
  std::vector<std::pair<Coeffs, int>> out;
  if (degree(f) < 1) return out;
  Coeffs c = gcd(F, f, derivative(F, f));
  Coeffs w = exact_quotient(F, f, c);
  int i = 1;
  while (!is_one(w)) {
    Coeffs y = gcd(F, w, c);
    Coeffs fac = exact_quotient(F, w, y);
    if (degree(fac) > 0) out.emplace_back(make_monic(F, fac), i);
    w = std::move(y);
    c = exact_quotient(F, c, w);
    ++i;
  }
  if (!is_one(c)) {
    const int p = static_cast<int>(std::min<std::uint64_t>(F.modulus(), 1U << 30));
    for (auto& [g, e] : squarefree_factorization(F, pth_root(F, c))) out.emplace_back(g, e * p);
  }
  return out;
}

std::vector<std::pair<Coeffs, int>> distinct_degree_factorization(const Field& F, const Coeffs& f) {
  std::vector<std::pair<Coeffs, int>> out;
  Coeffs rest = f;
  const Coeffs x{0, 1};
  Coeffs h = rem(F, x, rest);
  const Integer p(static_cast<unsigned long>(F.modulus()));
  for (int i = 1; 2 * i <= degree(rest); ++i) {
    h = powmod(F, h, p, rest);
    Coeffs g = gcd(F, rest, sub(F, h, x));
    if (!is_one(g)) {
      out.emplace_back(g, i);
      rest = exact_quotient(F, rest, g);
      h = rem(F, h, rest);
    }
  }
  if (degree(rest) > 0) out.emplace_back(rest, degree(rest));
  return out;
}

std::vector<Coeffs> equal_degree_factorization(const Field& F, const Coeffs& f, int d, std::mt19937_64& rng) {
  if (degree(f) <= d) return {f};
  const std::uint64_t p = F.modulus();
  Integer exponent;
  if (p != 2) {
    mpz_ui_pow_ui(exponent.get_mpz_t(), p, static_cast<unsigned long>(d));
    exponent = (exponent - 1) / 2;
  }
  std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
  for (;;) {
    Coeffs a(static_cast<std::size_t>(degree(f)));
    for (auto& v : a) v = coeff(rng);
    trim(a);
    if (degree(a) < 1) continue;
    Coeffs g = gcd(F, a, f);
    if (is_one(g)) {
      Coeffs b;
      if (p == 2) {
        // Trace to F_2: a + a^2 + ... + a^(2^(d-1)).
        Coeffs term = a;
        b = a;
        for (int i = 1; i < d; ++i) {
          term = rem(F, mul(F, term, term), f);
          b = add(F, b, term);
        }
      } else {
        b = sub(F, powmod(F, a, exponent, f), Coeffs{1});
      }
      g = gcd(F, b, f);
    }
    if (degree(g) > 0 && degree(g) < degree(f)) {
      auto left = equal_degree_factorization(F, g, d, rng);
      auto right = equal_degree_factorization(F, exact_quotient(F, f, g), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<std::pair<Coeffs, int>> factor(const Field& F, const Coeffs& f) {
  if (f.empty() || f.back() != 1) throw std::invalid_argument("fp::factor: input must be monic");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ F.modulus());
  std::vector<std::pair<Coeffs, int>> out;
  for (const auto& [sq, mult] : squarefree_factorization(F, f)) {
    for (const auto& [prod, d] : distinct_degree_factorization(F, sq)) {
      for (auto& g : equal_degree_factorization(F, prod, d, rng)) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

std::vector<int> factor_degrees(const Field& F, const Coeffs& f) {
  std::vector<int> degs;
  for (const auto& [prod, d] : distinct_degree_factorization(F, f))
    for (int k = 0; k < degree(prod) / d; ++k) degs.push_back(d);
  return degs;
}

}  // namespace nfsearch::fp
