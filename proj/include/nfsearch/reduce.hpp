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

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nfsearch/integer.hpp"
#include "nfsearch/polynomial.hpp"
#include "nfsearch/verify.hpp"

namespace nfsearch {

/// Complex roots of a monic integer polynomial: companion-matrix eigenvalues, Newton-polished.
std::vector<std::complex<long double>> complex_roots(const ZPoly& f);

/// LLL reduction (delta = 0.99) of the columns of `basis` in place. Returns the unimodular
/// integer transform U with reduced = original * U.
Eigen::MatrixXd lll_reduce(Eigen::MatrixXd& basis, double delta = 0.99);

/// All nonzero integer x with x^T G x <= bound (Fincke-Pohst). Stops after max_count vectors
/// and sets *truncated.
std::vector<Eigen::VectorXd> short_vectors(const Eigen::MatrixXd& gram, double bound, std::size_t max_count,
                                           bool* truncated);

struct CanonicalForm {
  std::vector<Integer> coeffs;  // a_1..a_n of the chosen generator's characteristic polynomial
  double t2 = 0;
  bool reduced = false;  // false when the search failed and coeffs is the input polynomial
};

/// Smallest-T2 generator of the maximal order of Q[x]/(f), ties broken by a fixed ordering of
/// coefficient vectors (smaller |a_i| first, then smaller a_i), x -> -x normalized.
CanonicalForm canonical_polynomial(const ZPoly& f);

/// Strict weak ordering used for tie-breaking canonical forms.
bool canonical_less(const std::vector<Integer>& a, const std::vector<Integer>& b);

struct DedupClass {
  std::string canonical;
  std::vector<std::size_t> members;  // indices into the record list
};

struct DedupGroup {
  Integer field_disc;
  std::vector<DedupClass> classes;  // one class: probably isomorphic; several: possibly distinct
};

/// Groups records by field discriminant, then by canonical polynomial. Fills rec.canonical.
/// Groups are sorted by (|field_disc|, field_disc); classes by canonical string.
std::vector<DedupGroup> dedup(std::vector<FieldRecord>& records);

}  // namespace nfsearch
