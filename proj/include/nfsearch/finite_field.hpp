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

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nfsearch/integer.hpp"
#include "nfsearch/polynomial.hpp"

/// Polynomials over a prime field F_p, p < 2^63. Coefficients ascending, always trimmed.
namespace nfsearch::fp {

using Coeffs = std::vector<std::uint64_t>;

class Field {
 public:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (p_ - b); }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // a != 0
  std::uint64_t reduce(const Integer& v) const;

 private:
  std::uint64_t p_;
};

void trim(Coeffs& a);
inline int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }
inline bool is_one(const Coeffs& a) { return a.size() == 1 && a[0] == 1; }

Coeffs reduce(const ZPoly& f, const Field& F);
/// Representatives in [0, p).
ZPoly lift(const Coeffs& a);

Coeffs add(const Field& F, const Coeffs& a, const Coeffs& b);
Coeffs sub(const Field& F, const Coeffs& a, const Coeffs& b);
Coeffs mul(const Field& F, const Coeffs& a, const Coeffs& b);
Coeffs scale(const Field& F, const Coeffs& a, std::uint64_t s);
Coeffs derivative(const Field& F, const Coeffs& a);
std::pair<Coeffs, Coeffs> divrem(const Field& F, const Coeffs& a, const Coeffs& b);
Coeffs rem(const Field& F, const Coeffs& a, const Coeffs& b);
Coeffs make_monic(const Field& F, const Coeffs& a);
/// Monic gcd (zero when both inputs are zero).
Coeffs gcd(const Field& F, Coeffs a, Coeffs b);

struct ExtendedGcd {
  Coeffs g, s, t;  // s a + t b = g, g monic
};
ExtendedGcd ext_gcd(const Field& F, const Coeffs& a, const Coeffs& b);

/// base^e mod m.
Coeffs powmod(const Field& F, const Coeffs& base, const Integer& e, const Coeffs& m);

/// Squarefree decomposition of a monic f: pairs (squarefree monic factor, multiplicity).
std::vector<std::pair<Coeffs, int>> squarefree_factorization(const Field& F, const Coeffs& f);

/// Distinct-degree factorization of a monic squarefree f: pairs (product of the degree-d factors, d).
std::vector<std::pair<Coeffs, int>> distinct_degree_factorization(const Field& F, const Coeffs& f);

/// Splits a monic squarefree product of degree-d irreducibles into its factors.
std::vector<Coeffs> equal_degree_factorization(const Field& F, const Coeffs& f, int d, std::mt19937_64& rng);

/// Complete factorization of a monic polynomial into monic irreducibles with multiplicity,
/// sorted by (degree, coefficients).
std::vector<std::pair<Coeffs, int>> factor(const Field& F, const Coeffs& f);

/// Degrees of the irreducible factors of a monic squarefree f (distinct-degree only).
std::vector<int> factor_degrees(const Field& F, const Coeffs& f);

}  // namespace nfsearch::fp
