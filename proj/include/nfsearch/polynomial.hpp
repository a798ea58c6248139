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

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nfsearch/integer.hpp"

namespace nfsearch {

/// Dense univariate polynomial, coefficients in ascending order of degree.
/// The zero polynomial has no coefficients and degree -1.
template <class Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Scalar& v) { return Polynomial(std::vector<Scalar>{v}); }
  static Polynomial monomial(const Scalar& v, std::size_t d) {
    std::vector<Scalar> c(d + 1, Scalar(0));
    c[d] = v;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Scalar& lead() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  /// Coefficient of x^i, zero past the degree.
  Scalar operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }

  void set(std::size_t i, const Scalar& v) {
    if (i >= c_.size()) c_.resize(i + 1, Scalar(0));
    c_[i] = v;
    trim();
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

using ZPoly = Polynomial<Integer>;

template <class Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar>& p) {
  if (p.degree() < 1) return {};
  std::vector<Scalar> r(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i <= static_cast<std::size_t>(p.degree()); ++i) r[i - 1] = p[i] * Scalar(static_cast<long>(i));
  return Polynomial<Scalar>(std::move(r));
}

template <class Scalar, class Arg>
Arg evaluate(const Polynomial<Scalar>& p, const Arg& x) {
  Arg acc(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + Arg(p[static_cast<std::size_t>(i)]);
  return acc;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b);

/// Remainder and quotient of a by a monic divisor (exact over the integers).
std::pair<ZPoly, ZPoly> divide_monic(const ZPoly& a, const ZPoly& monic_divisor);

/// True iff d divides a in Z[x]; on success the cofactor is written to quotient.
bool divides(const ZPoly& d, const ZPoly& a, ZPoly* quotient = nullptr);

Integer content(const ZPoly& p);

/// p / content(p), with positive leading coefficient unless keep_sign.
ZPoly primitive_part(const ZPoly& p, bool keep_sign = false);

ZPoly exact_divide(const ZPoly& p, const Integer& d);

/// Monic polynomial x^n + a_1 x^(n-1) + ... + a_n from a_1..a_n.
ZPoly from_monic_coeffs(std::span<const Integer> a);

/// The a_1..a_n of a monic polynomial.
std::vector<Integer> to_monic_coeffs(const ZPoly& p);

/// p(-x) * (-1)^deg, monic when p is.
ZPoly reflect(const ZPoly& p);

std::ostream& operator<<(std::ostream& os, const ZPoly& p);

}  // namespace nfsearch
