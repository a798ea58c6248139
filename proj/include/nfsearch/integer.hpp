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

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nfsearch {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign_of(const Integer& v) { return sgn(v); }

inline Integer abs_of(const Integer& v) { return abs(v); }

/// Exponent of the prime p in v. v must be nonzero.
inline unsigned valuation(Integer v, unsigned long p) {
  unsigned e = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    ++e;
  }
  return e;
}

inline bool is_perfect_square(const Integer& v) {
  return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& v) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

inline Integer pow_of(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline Integer parse_integer(const std::string& s) { return Integer(s, 10); }

/// Largest integer not exceeding x (x finite). Exact for every double.
Integer floor_to_integer(long double x);

}  // namespace nfsearch
