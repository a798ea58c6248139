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
#include <optional>
#include <utility>
#include <vector>

#include "nfsearch/integer.hpp"
#include "nfsearch/polynomial.hpp"

namespace nfsearch {

struct IntegerFactorization {
  std::vector<std::pair<Integer, unsigned>> primes;  // ascending
  Integer unresolved = 1;                            // composite cofactor we failed to split
  bool complete() const { return unresolved == 1; }
};

/// Factors |v| (v != 0): trial division up to trial_limit, then primality testing, perfect-power
/// detection and Pollard-Brent rho with a bounded iteration budget.
IntegerFactorization factor_integer(const Integer& v, std::uint64_t trial_limit = 1000000,
                                    std::uint64_t rho_budget = 2000000);

/// Primes below limit (cached sieve).
const std::vector<std::uint32_t>& small_primes(std::uint32_t limit);

/// Discriminant of a monic polynomial via the subresultant algorithm.
Integer poly_discriminant(const ZPoly& p);

/// Res(a, b) by the subresultant polynomial remainder sequence.
Integer resultant(ZPoly a, ZPoly b);

/// Mignotte-style bound on the coefficients of any monic factor of a monic f.
Integer factor_coefficient_bound(const ZPoly& f);

/// Irreducible monic factors of a monic squarefree f over Z, sorted by (degree, coefficients).
std::vector<ZPoly> factor_squarefree(const ZPoly& f);

struct IrreducibilityOptions {
  int sieve_primes = 5;
};

/// Exact irreducibility over Q of a monic integer polynomial.
bool is_irreducible(const ZPoly& f, IrreducibilityOptions opts = {});

/// Result of the modular degree-pattern sieve alone: true means proven irreducible,
/// false means inconclusive.
bool degree_sieve_proves_irreducible(const ZPoly& f, int sieve_primes);

}  // namespace nfsearch
