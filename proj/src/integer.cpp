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

#include "nfsearch/integer.hpp"

#include <cmath>

namespace nfsearch {

Integer floor_to_integer(long double x) {
  const long double f = floorl(x);
  if (fabsl(f) < 9.0e18L) {
    Integer r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(f));
    return r;
  }
  int e = 0;
  const long double m = frexpl(fabsl(f), &e);
  Integer r;
  mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(ldexpl(m, 64)));
  e -= 64;
  if (e >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(e));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(-e));
  }
  if (f < 0) r = -r;
  return r;
}

}  // namespace nfsearch
