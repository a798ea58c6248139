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
#include <vector>

#include "nfsearch/integer.hpp"
#include "nfsearch/polynomial.hpp"

namespace nfsearch {

using IntMatrix = std::vector<std::vector<Integer>>;

/// Z-basis of an order in Q[x]/(f): element i is (sum_j rows[i][j] x^j) / denominator.
/// rows is lower triangular with positive diagonal (row i has degree i).
struct OrderBasis {
  IntMatrix rows;
  Integer denominator = 1;

  static OrderBasis equation_order(int n);
  int degree() const { return static_cast<int>(rows.size()); }
  /// [this : Z[x]/(f)] as a rational number's numerator when the order contains Z[x].
  Integer index_over_equation_order() const;
};

/// Lower-triangular Hermite normal form of a full-rank lattice in Z^n given by generator rows.
IntMatrix hnf_lower(IntMatrix gens, int n);

/// Dedekind's criterion: is Z[x]/(f) maximal at the prime p?
bool dedekind_is_maximal(const ZPoly& f, std::uint64_t p);

/// One full Round-2 maximalization at p starting from `order`. Returns the p-maximal overorder and
/// adds the exponent of p in the index gained to *index_exponent.
OrderBasis round2_p_maximal(const ZPoly& f, OrderBasis order, std::uint64_t p, unsigned* index_exponent);

struct PrimeIndexInfo {
  Integer prime;
  unsigned disc_exponent = 0;   // in the polynomial discriminant
  bool dedekind_maximal = false;
  unsigned index_exponent = 0;  // exponent of prime in [O_K : Z[alpha]]
};

struct MaximalOrderResult {
  Integer poly_disc;
  Integer field_disc;   // exact when resolved; otherwise the value assuming the cofactor is squarefree
  Integer index = 1;    // [O_K : Z[alpha]] (resolved part)
  bool resolved = true;
  Integer unresolved_cofactor = 1;
  Integer field_disc_abs_lower;  // range of |field_disc| when unresolved
  Integer field_disc_abs_upper;
  OrderBasis basis;
  std::vector<PrimeIndexInfo> primes;
};

/// Maximal order and field discriminant of Q[x]/(f), f monic irreducible.
MaximalOrderResult maximal_order(const ZPoly& f, const Integer& poly_disc, std::uint64_t trial_limit = 1000000);

}  // namespace nfsearch
