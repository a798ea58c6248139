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

#include "nfsearch/factor.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <mutex>
#include <stdexcept>

#include "nfsearch/finite_field.hpp"

namespace nfsearch {

// ---------------------------------------------------------------------------
// Integers

const std::vector<std::uint32_t>& small_primes(std::uint32_t limit) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(limit);
  if (it != cache.end()) return it->second;
  std::vector<bool> composite(limit + 1U, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return cache.emplace(limit, std::move(primes)).first->second;
}

namespace {

bool probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0; }

// Pollard-Brent; returns a nontrivial factor or 0 on budget exhaustion.
Integer pollard_brent(const Integer& n, std::uint64_t budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c < 20; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    std::uint64_t r = 1;
    std::uint64_t spent = 0;
    constexpr std::uint64_t m = 128;
    while (g == 1 && spent < budget) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) {
        y = (y * y + c) % n;
      }
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      spent += r;
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        Integer d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (spent >= budget) return 0;
  }
  return 0;
}

void split_cofactor(const Integer& n, unsigned mult, std::uint64_t budget, std::map<Integer, unsigned>& found,
                    Integer& unresolved) {
  if (n == 1) return;
  if (probable_prime(n)) {
    found[n] += mult;
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2; k < 200; ++k) {
      Integer root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        // Smallest k that works; recursion handles further powers of the root.
        split_cofactor(root, mult * static_cast<unsigned>(k), budget, found, unresolved);
        return;
      }
    }
  }
  const Integer d = pollard_brent(n, budget);
  if (d == 0) {
    for (unsigned i = 0; i < mult; ++i) unresolved *= n;
    return;
  }
  split_cofactor(d, mult, budget, found, unresolved);
  split_cofactor(n / d, mult, budget, found, unresolved);
}

}  // namespace

IntegerFactorization factor_integer(const Integer& value, std::uint64_t trial_limit, std::uint64_t rho_budget) {
  if (value == 0) throw std::invalid_argument("factor_integer: zero");
  Integer v = abs(value);
  std::map<Integer, unsigned> found;
  const auto& primes = small_primes(static_cast<std::uint32_t>(std::min<std::uint64_t>(trial_limit, 1U << 31)));
  bool exhausted_trial = true;
  for (const std::uint32_t p : primes) {
    if (Integer(p) * p > v) {
      exhausted_trial = false;
      break;
    }
    if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
        ++e;
      }
      found[Integer(p)] += e;
    }
  }
  IntegerFactorization out;
  if (v != 1) {
    if (!exhausted_trial) {
      found[v] += 1;  // no factor up to sqrt(v)
    } else {
      split_cofactor(v, 1, rho_budget, found, out.unresolved);
    }
  }
  for (auto& [p, e] : found) out.primes.emplace_back(p, e);
  return out;
}

// ---------------------------------------------------------------------------
// Resultants

Integer resultant(ZPoly a, ZPoly b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -1;
  }
  const Integer ca = content(a);
  const Integer cb = content(b);
  const Integer t = pow_of(ca, static_cast<unsigned long>(b.degree())) * pow_of(cb, static_cast<unsigned long>(a.degree()));
  a = exact_divide(a, ca);
  b = exact_divide(b, cb);
  Integer g = 1, h = 1;
  while (b.degree() > 0) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    ZPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = exact_divide(r, g * pow_of(h, static_cast<unsigned long>(delta)));
    g = a.lead();
    // h <- h^(1-delta) g^delta
    if (delta == 0) {
      // unchanged
    } else {
      h = pow_of(g, static_cast<unsigned long>(delta)) / pow_of(h, static_cast<unsigned long>(delta - 1));
    }
  }
  // deg b == 0
  const int da = a.degree();
  Integer res = pow_of(b.lead(), static_cast<unsigned long>(da));
  if (da >= 1) res = res / pow_of(h, static_cast<unsigned long>(da - 1));
  else res = res * h;  // da == 0 cannot follow a loop iteration; kept for completeness
  return s * t * res;
}

Integer poly_discriminant(const ZPoly& p) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("poly_discriminant: degree must be >= 1");
  if (n == 1) return 1;
  Integer r = resultant(p, derivative(p));
  r /= p.lead();
  return ((n * (n - 1) / 2) % 2 == 0) ? r : Integer(-r);
}

// ---------------------------------------------------------------------------
// Factoring over Z

namespace {

Integer symmetric_mod(const Integer& v, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

ZPoly reduce_mod(const ZPoly& f, const Integer& m) {
  std::vector<Integer> c = f.coeffs();
  for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return ZPoly(std::move(c));
}

ZPoly symmetric(const ZPoly& f, const Integer& m) {
  std::vector<Integer> c = f.coeffs();
  for (auto& v : c) v = symmetric_mod(v, m);
  return ZPoly(std::move(c));
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) { return reduce_mod(a * b, m); }

// f == G H (mod p^k) with G, H monic lifts of g, h (coprime mod p).
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, const fp::Coeffs& g, const fp::Coeffs& h, const fp::Field& F,
                                    int k) {
  const auto eg = fp::ext_gcd(F, g, h);
  if (!fp::is_one(eg.g)) throw std::logic_error("hensel_pair: factors not coprime");
  ZPoly G = fp::lift(g);
  ZPoly H = fp::lift(h);
  const Integer p(static_cast<unsigned long>(F.modulus()));
  Integer pj = p;
  for (int j = 1; j < k; ++j) {
    const ZPoly E = exact_divide(reduce_mod(f - G * H, pj * p), pj);
    const fp::Coeffs e = fp::reduce(E, F);
    auto [q, dg] = fp::divrem(F, fp::mul(F, eg.t, e), g);
    const fp::Coeffs dh = fp::add(F, fp::mul(F, eg.s, e), fp::mul(F, q, h));
    G += fp::lift(dg) * pj;
    H += fp::lift(dh) * pj;
    pj *= p;
  }
  return {reduce_mod(G, pj), reduce_mod(H, pj)};
}

void hensel_lift(const ZPoly& f, const std::vector<fp::Coeffs>& factors, const fp::Field& F, int k,
                 const Integer& pk, std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    out.push_back(reduce_mod(f, pk));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<fp::Coeffs> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<fp::Coeffs> right(factors.begin() + static_cast<long>(half), factors.end());
  fp::Coeffs g{1}, h{1};
  for (const auto& v : left) g = fp::mul(F, g, v);
  for (const auto& v : right) h = fp::mul(F, h, v);
  auto [G, H] = hensel_pair(f, g, h, F, k);
  hensel_lift(G, left, F, k, pk, out);
  hensel_lift(H, right, F, k, pk, out);
}

// Primes p not dividing disc(f), in increasing order.
std::vector<std::uint64_t> good_primes(const Integer& disc, int count) {
  std::vector<std::uint64_t> out;
  for (const std::uint32_t p : small_primes(100000)) {
    if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    out.push_back(p);
    if (static_cast<int>(out.size()) == count) break;
  }
  return out;
}

bool zpoly_less(const ZPoly& a, const ZPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
      return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)];
  return false;
}

}  // namespace

Integer factor_coefficient_bound(const ZPoly& f) {
  Integer norm2 = 0;
  for (const auto& v : f.coeffs()) norm2 += v * v;
  Integer root = isqrt(norm2) + 1;
  Integer binom;
  const unsigned long n = static_cast<unsigned long>(std::max(f.degree(), 0));
  mpz_bin_uiui(binom.get_mpz_t(), n, n / 2);
  return binom * root;
}

std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
  if (f.is_zero() || f.lead() != 1) throw std::invalid_argument("factor_squarefree: input must be monic");
  const int n = f.degree();
  if (n <= 1) return {f};
  const Integer disc = poly_discriminant(f);
  if (disc == 0) throw std::invalid_argument("factor_squarefree: input is not squarefree");

  // Pick the prime with the fewest modular factors among the first few good primes.
  std::uint64_t best_p = 0;
  std::vector<fp::Coeffs> best;
  for (const std::uint64_t p : good_primes(disc, 6)) {
    const fp::Field F(p);
    std::vector<fp::Coeffs> fs;
    for (auto& [g, e] : fp::factor(F, fp::reduce(f, F))) fs.push_back(g);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best = std::move(fs);
    }
    if (best.size() == 1) return {f};
  }
  const fp::Field F(best_p);
  const Integer p(static_cast<unsigned long>(best_p));
  const Integer bound = 2 * factor_coefficient_bound(f) + 1;
  int k = 1;
  Integer pk = p;
  while (pk <= bound) {
    pk *= p;
    ++k;
  }
  std::vector<ZPoly> lifted;
  hensel_lift(f, best, F, k, pk, lifted);

  // Zassenhaus recombination over subsets of increasing size.
  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<ZPoly> pool = lifted;
  for (std::size_t size = 1; 2 * size <= pool.size(); ++size) {
    bool restart = true;
    while (restart) {
      restart = false;
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        Integer c0 = 1;
        for (const std::size_t i : idx) c0 = symmetric_mod(c0 * pool[i][0], pk);
        const Integer rest0 = rest[0];
        if (c0 == 0 ? rest0 == 0 : mpz_divisible_p(rest0.get_mpz_t(), c0.get_mpz_t()) != 0) {
          ZPoly cand = ZPoly::constant(1);
          for (const std::size_t i : idx) cand = mul_mod(cand, pool[i], pk);
          cand = symmetric(cand, pk);
          ZPoly quotient;
          if (divides(cand, rest, &quotient)) {
            result.push_back(cand);
            rest = quotient;
            std::vector<ZPoly> next;
            for (std::size_t i = 0; i < pool.size(); ++i)
              if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
            pool = std::move(next);
            restart = 2 * size <= pool.size();
            break;
          }
        }
        // next combination
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == pool.size() - size + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  if (rest.degree() > 0) result.push_back(rest);
  std::sort(result.begin(), result.end(), zpoly_less);
  return result;
}

bool degree_sieve_proves_irreducible(const ZPoly& f, int sieve_primes) {
  const int n = f.degree();
  if (n < 1 || n > 255) return false;
  const Integer disc = poly_discriminant(f);
  if (disc == 0) return false;
  std::bitset<256> feasible;
  feasible.set();
  for (const std::uint64_t p : good_primes(disc, sieve_primes)) {
    const fp::Field F(p);
    std::bitset<256> sums;
    sums.set(0);
    for (const int d : fp::factor_degrees(F, fp::reduce(f, F))) sums |= sums << static_cast<std::size_t>(d);
    feasible &= sums;
    bool only_trivial = true;
    for (int d = 1; d < n; ++d)
      if (feasible.test(static_cast<std::size_t>(d))) only_trivial = false;
    if (only_trivial) return true;
  }
  return false;
}

bool is_irreducible(const ZPoly& f, IrreducibilityOptions opts) {
  if (f.is_zero() || f.lead() != 1) throw std::invalid_argument("is_irreducible: input must be monic");
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  if (poly_discriminant(f) == 0) return false;
  if (degree_sieve_proves_irreducible(f, opts.sieve_primes)) return true;
  return factor_squarefree(f).size() == 1;
}

}  // namespace nfsearch
