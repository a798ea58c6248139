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
#include <string>
#include <vector>

#include "nfsearch/explicit_bounds.hpp"
#include "nfsearch/integer.hpp"
#include "nfsearch/polynomial.hpp"

namespace nfsearch {

/// x^n + a_1 x^(n-1) + ... + a_n, tagged with the cell that produced it.
struct CandidatePolynomial {
  std::vector<Integer> coeffs;  // a_1..a_n
  std::string cell_id;

  int degree() const { return static_cast<int>(coeffs.size()); }
  ZPoly poly() const;
  static CandidatePolynomial from_poly(const ZPoly& p, std::string cell_id = {});
};

/// Number of distinct real roots of a squarefree integer polynomial (Sturm sequence).
int count_real_roots(const ZPoly& p);

struct RootSignature {
  int r1 = 0;
  int r2 = 0;
};

/// Signature of a squarefree polynomial. Throws std::invalid_argument when disc(p) = 0 and
/// std::logic_error when the Sturm count contradicts the sign of the discriminant.
RootSignature signature(const ZPoly& p);
RootSignature signature(const ZPoly& p, const Integer& poly_disc);

struct FieldDiscriminant {
  Integer field_disc;
  Integer index2 = 1;  // poly_disc / field_disc, a perfect square
  bool resolved = true;
  Integer abs_lower;   // possible range of |field_disc|; equal bounds when resolved
  Integer abs_upper;
};

/// Field discriminant of Q[x]/(p) for monic irreducible p.
FieldDiscriminant field_discriminant(const ZPoly& p, const Integer& poly_disc,
                                     std::uint64_t trial_limit = 1000000);

enum class VerifyStatus {
  accepted,
  reducible,
  squarefree_violation,
  wrong_degree,
  t2_exceeds,
  wrong_signature,
  over_bound,
  unresolved,
};

const char* to_string(VerifyStatus s);

struct FieldRecord {
  CandidatePolynomial poly;
  Integer poly_disc;
  Integer field_disc;
  Integer index2 = 1;
  int r1 = 0;
  int r2 = 0;
  bool resolved = true;
  Integer field_disc_abs_lower;
  Integer field_disc_abs_upper;
  bool primitivity_unknown = true;  // subfields are never searched for
  std::string canonical;            // filled in by dedup
};

struct VerifyOptions {
  std::uint64_t trial_limit = 1000000;
  int sieve_primes = 5;
  bool hunter_t2 = false;  // search-only pre-check, see exceeds_hunter_t2
};

/// Sum of |alpha|^2 over the complex roots.
double t2_norm(const ZPoly& p);

/// True when T2 of the roots exceeds s1^2/n + gamma_{n-1} (disc_bound/n)^(1/(n-1)) with s1 = -a_1, by more
/// than the root error. Only meaningful for 0 <= -a_1 <= n/2; returns false otherwise.
bool exceeds_hunter_t2(const std::vector<Integer>& a, const Integer& disc_bound);

struct VerifyOutcome {
  VerifyStatus status = VerifyStatus::reducible;
  FieldRecord record;  // populated as far as the checks got
};

/// Step-5 checks in order: degree, nonzero discriminant, irreducibility, signature,
/// field discriminant against disc_bound.
VerifyOutcome verify_candidate(const CandidatePolynomial& cand, const Signature& sig, const Integer& disc_bound,
                               const VerifyOptions& opts = {});

/// Acceptance test on a populated record.
bool accept(const FieldRecord& rec, const Signature& sig, const Integer& disc_bound);

/// `a1,...,an; poly_disc; field_disc; r1,r2; flags`
/// Flags are joined with '|'; extra_flags are appended after the built-in ones.
std::string format_record(const FieldRecord& rec, const std::vector<std::string>& extra_flags = {});

}  // namespace nfsearch
