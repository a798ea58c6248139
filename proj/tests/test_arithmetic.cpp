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

#include <random>
#include <set>

#include "doctest.h"
#include "nfsearch/factor.hpp"
#include "nfsearch/finite_field.hpp"
#include "nfsearch/polynomial.hpp"
#include "oracles.hpp"

using namespace nfsearch;

namespace {

ZPoly monic(std::initializer_list<long> a) {
  std::vector<Integer> v;
  for (long x : a) v.emplace_back(x);
  return from_monic_coeffs(v);
}

ZPoly random_poly(std::mt19937_64& rng, int deg, long c) {
  std::uniform_int_distribution<long> d(-c, c);
  std::vector<Integer> v;
  for (int i = 0; i <= deg; ++i) v.emplace_back(d(rng));
  v.back() = 1;
  return ZPoly(v);
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(valuation(Integer(96), 2) == 5);
  CHECK(valuation(Integer(-81), 3) == 4);
  CHECK(valuation(Integer(7), 2) == 0);
  CHECK(is_perfect_square(Integer(144)));
  CHECK_FALSE(is_perfect_square(Integer(-4)));
  CHECK(isqrt(Integer(99)) == 9);
  CHECK(floor_to_integer(-2.5L) == -3);
  CHECK(floor_to_integer(7.999L) == 7);
  CHECK(to_string(parse_integer("-123456789012345678901234567890")) == "-123456789012345678901234567890");
}

TEST_CASE("polynomial basics") {
  const ZPoly f = monic({0, -1, -1});  // x^3 - x - 1
  CHECK(f.degree() == 3);
  CHECK(f[0] == -1);
  CHECK(to_monic_coeffs(f) == std::vector<Integer>{0, -1, -1});
  const ZPoly g = monic({1, 1});
  ZPoly q;
  CHECK(divides(g, f * g, &q));
  CHECK(q == f);
  CHECK_FALSE(divides(g, f));
  const auto [r, qq] = divide_monic(f * g + ZPoly{Integer(3)}, g);  // (remainder, quotient)
  CHECK(qq == f);
  CHECK(r == ZPoly{Integer(3)});
  CHECK(content(ZPoly{Integer(6), Integer(-9), Integer(12)}) == 3);
  CHECK(primitive_part(ZPoly{Integer(-6), Integer(9), Integer(-12)}) == (ZPoly{Integer(2), Integer(-3), Integer(4)}));
  CHECK(reflect(monic({2, 3})) == monic({-2, 3}));  // p(-x) for even degree
  CHECK(reflect(f) == monic({0, -1, 1}));
  CHECK(derivative(f) == (ZPoly{Integer(-1), Integer(0), Integer(3)}));
  CHECK(evaluate(f, Integer(2)) == 5);
}

TEST_CASE("poly_discriminant examples and Sylvester oracle") {
  CHECK(poly_discriminant(monic({0, 1})) == -4);
  CHECK(poly_discriminant(monic({0, -1, -1})) == -23);
  CHECK(poly_discriminant(monic({0, -3, 1})) == 81);
  CHECK(poly_discriminant(monic({0, -5})) == 20);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const ZPoly f = random_poly(rng, n, 9);
    CHECK(poly_discriminant(f) == oracle::sylvester_discriminant(f));
  }
  // resultant multiplicativity: Res(f, gh) = Res(f, g) Res(f, h)
  for (int trial = 0; trial < 100; ++trial) {
    const ZPoly f = random_poly(rng, 3, 5), g = random_poly(rng, 2, 5), h = random_poly(rng, 2, 5);
    CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
  }
}

TEST_CASE("factor_integer") {
  const auto f = factor_integer(Integer(-5726300));
  REQUIRE(f.complete());
  Integer prod = 1;
  for (const auto& [p, e] : f.primes) {
    CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) != 0);
    prod *= pow_of(p, e);
  }
  CHECK(prod == 5726300);
  // semiprime beyond trial division
  const Integer big = Integer("1000000007") * Integer("998244353");
  const auto g = factor_integer(big * big * 12, 1000);
  REQUIRE(g.complete());
  REQUIRE(g.primes.size() == 4);
  CHECK(g.primes[2].first == Integer("998244353"));
  CHECK(g.primes[2].second == 2);
  CHECK(g.primes[3].first == Integer("1000000007"));
  CHECK(factor_integer(Integer(1)).primes.empty());
  CHECK(small_primes(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("finite field arithmetic") {
  const fp::Field F(101);
  CHECK(F.mul(F.inv(37), 37) == 1);
  CHECK(F.pow(3, 100) == 1);
  CHECK(F.reduce(Integer(-1)) == 100);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    fp::Coeffs a(5), b(3);
    for (auto& v : a) v = rng() % 101;
    for (auto& v : b) v = rng() % 101;
    b.back() = 1 + rng() % 100;
    fp::trim(a);
    const auto [q, r] = fp::divrem(F, a, b);
    CHECK(fp::add(F, fp::mul(F, q, b), r) == a);
    CHECK(fp::degree(r) < fp::degree(b));
    const auto eg = fp::ext_gcd(F, a, b);
    CHECK(fp::add(F, fp::mul(F, eg.s, a), fp::mul(F, eg.t, b)) == eg.g);
  }
}

TEST_CASE("factorization mod p reproduces the polynomial") {
  std::mt19937_64 rng(29);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 101ULL, 1000003ULL}) {
    const fp::Field F(p);
    for (int trial = 0; trial < 40; ++trial) {
      const ZPoly f = random_poly(rng, 2 + static_cast<int>(rng() % 7), 20);
      const fp::Coeffs fr = fp::reduce(f, F);
      const auto parts = fp::factor(F, fr);
      fp::Coeffs prod{1};
      int deg = 0;
      for (const auto& [g, e] : parts) {
        CHECK(fp::make_monic(F, g) == g);
        for (int i = 0; i < e; ++i) prod = fp::mul(F, prod, g);
        deg += fp::degree(g) * e;
      }
      CHECK(prod == fp::make_monic(F, fr));
      CHECK(deg == f.degree());
      bool squarefree = true;
      for (const auto& part : parts) squarefree = squarefree && part.second == 1;
      if (squarefree) {
        // distinct-degree output must match the full factorization
        std::multiset<int> full, ddf;
        for (const auto& part : parts) full.insert(fp::degree(part.first));
        for (int d : fp::factor_degrees(F, fr)) ddf.insert(d);
        CHECK(ddf == full);
      }
    }
  }
  // x^4 + 1 splits into degree <= 2 factors modulo every prime
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    for (int d : fp::factor_degrees(fp::Field(p), fp::reduce(monic({0, 0, 0, 1}), fp::Field(p)))) CHECK(d <= 2);
  }
}

TEST_CASE("is_irreducible examples") {
  CHECK_FALSE(is_irreducible(monic({0, -1})));
  CHECK_FALSE(is_irreducible(monic({0, 0, 0, 4})));  // Sophie Germain
  CHECK(is_irreducible(monic({0, -1, -1})));
  CHECK(is_irreducible(monic({0, 0, 0, 1})));          // x^4 + 1: reducible mod every prime
  CHECK_FALSE(degree_sieve_proves_irreducible(monic({0, 0, 0, 1}), 20));
  CHECK(is_irreducible(monic({0, -10, 0, 1})));  // minimal polynomial of sqrt2 + sqrt3
  CHECK_FALSE(is_irreducible(monic({0, -6, 0, 1})));  // (x^2-2x-1)(x^2+2x-1)
  // a product of two irreducible quartics that are reducible modulo every small prime
  const ZPoly prod = monic({0, 0, 0, 1}) * monic({0, -10, 0, 1});
  CHECK_FALSE(is_irreducible(prod));
  const auto parts = factor_squarefree(monic({0, 0, 0, 1}) * monic({0, -1, -1}));
  CHECK(parts.size() == 2);
}

TEST_CASE("is_irreducible agrees with a naive rational factor search for n <= 4, |a_i| <= 10") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<Integer> a(static_cast<std::size_t>(n), -10);
    std::size_t checked = 0, mismatches = 0;
    for (;;) {
      if (a.back() != 0) {
        const bool irr = is_irreducible(from_monic_coeffs(a));
        if (irr == oracle::naive_reducible(a)) ++mismatches;
        ++checked;
      }
      std::size_t i = 0;
      while (i < a.size() && a[i] == 10) a[i++] = -10;
      if (i == a.size()) break;
      a[i] += 1;
    }
    INFO("n=" << n);
    CHECK(checked > 0);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("factor_coefficient_bound dominates the true factors") {
  const ZPoly g = monic({-2, 2}), h = monic({2, 2});
  const ZPoly f = monic({0, 0, 0, 4});
  CHECK(g * h == f);
  const Integer b = factor_coefficient_bound(f);
  for (const ZPoly& part : {g, h})
    for (const auto& c : part.coeffs()) CHECK(abs(c) <= b);
}
