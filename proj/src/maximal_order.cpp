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

#include "nfsearch/maximal_order.hpp"

#include <stdexcept>

#include "nfsearch/factor.hpp"
#include "nfsearch/finite_field.hpp"

namespace nfsearch {

namespace {

using Vec = std::vector<Integer>;
using VecP = std::vector<std::uint64_t>;

// Basis of the left kernel {v : sum_i v_i rows_i = 0} over F_p.
std::vector<VecP> left_kernel(const fp::Field& F, const std::vector<VecP>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return {};
  const std::size_t cols = rows[0].size();
  // Work on the transpose: M v = 0 with M[c][i] = rows[i][c].
  std::vector<VecP> M(cols, VecP(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < cols; ++c) M[c][i] = rows[i][c];
  std::vector<int> pivot_col_of_row;
  std::vector<int> is_pivot(n, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < cols; ++c) {
    std::size_t sel = r;
    while (sel < cols && M[sel][c] == 0) ++sel;
    if (sel == cols) continue;
    std::swap(M[sel], M[r]);
    const std::uint64_t inv = F.inv(M[r][c]);
    for (auto& v : M[r]) v = F.mul(v, inv);
    for (std::size_t k = 0; k < cols; ++k) {
      if (k == r || M[k][c] == 0) continue;
      const std::uint64_t t = M[k][c];
      for (std::size_t j = 0; j < n; ++j) M[k][j] = F.sub(M[k][j], F.mul(t, M[r][j]));
    }
    is_pivot[c] = static_cast<int>(r);
    ++r;
  }
  std::vector<VecP> out;
  for (std::size_t freec = 0; freec < n; ++freec) {
    if (is_pivot[freec] >= 0) continue;
    VecP v(n, 0);
    v[freec] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_pivot[c] < 0) continue;
      v[c] = F.neg(M[static_cast<std::size_t>(is_pivot[c])][freec]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Solves c^T H = z for lower-triangular H (exact over Z).
Vec solve_lower(const IntMatrix& H, const Vec& z) {
  const std::size_t n = H.size();
  Vec c(n);
  for (std::size_t col = n; col-- > 0;) {
    Integer acc = z[col];
    for (std::size_t i = col + 1; i < n; ++i) acc -= c[i] * H[i][col];
    if (!mpz_divisible_p(acc.get_mpz_t(), H[col][col].get_mpz_t()))
      throw std::logic_error("solve_lower: element not in lattice");
    mpz_divexact(c[col].get_mpz_t(), acc.get_mpz_t(), H[col][col].get_mpz_t());
  }
  return c;
}

// Multiplication table of an order: table[i][j] = omega_i * omega_j in order coordinates.
class OrderArithmetic {
 public:
  OrderArithmetic(const ZPoly& f, const OrderBasis& order) : f_(f), n_(f.degree()) {
    scaled_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      scaled_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n_));
      for (int j = 0; j < n_; ++j)
        scaled_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            order.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * order.denominator;
    }
    table_.assign(static_cast<std::size_t>(n_), std::vector<Vec>(static_cast<std::size_t>(n_)));
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        const ZPoly a(order.rows[static_cast<std::size_t>(i)]);
        const ZPoly b(order.rows[static_cast<std::size_t>(j)]);
        const ZPoly prod = divide_monic(a * b, f_).first;
        Vec P(static_cast<std::size_t>(n_));
        for (int k = 0; k < n_; ++k) P[static_cast<std::size_t>(k)] = prod[static_cast<std::size_t>(k)];
        table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = solve_lower(scaled_, P);
        table_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
  }

  int n() const { return n_; }

  // omega_i * y, y in order coordinates.
  Vec mul_basis(int i, const Vec& y) const {
    Vec z(static_cast<std::size_t>(n_), 0);
    for (int l = 0; l < n_; ++l) {
      if (y[static_cast<std::size_t>(l)] == 0) continue;
      const Vec& t = table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
      for (int k = 0; k < n_; ++k) z[static_cast<std::size_t>(k)] += y[static_cast<std::size_t>(l)] * t[static_cast<std::size_t>(k)];
    }
    return z;
  }

  std::vector<std::vector<VecP>> table_mod(const fp::Field& F) const {
    std::vector<std::vector<VecP>> t(static_cast<std::size_t>(n_),
                                     std::vector<VecP>(static_cast<std::size_t>(n_), VecP(static_cast<std::size_t>(n_))));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
              F.reduce(table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
    return t;
  }

 private:
  const ZPoly& f_;
  int n_;
  IntMatrix scaled_;
  std::vector<std::vector<Vec>> table_;
};

VecP mul_mod(const fp::Field& F, const std::vector<std::vector<VecP>>& t, const VecP& x, const VecP& y) {
  const std::size_t n = x.size();
  VecP z(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      const std::uint64_t c = F.mul(x[i], y[j]);
      const VecP& tij = t[i][j];
      for (std::size_t k = 0; k < n; ++k) z[k] = F.add(z[k], F.mul(c, tij[k]));
    }
  }
  return z;
}

VecP pow_mod(const fp::Field& F, const std::vector<std::vector<VecP>>& t, const VecP& x, const Integer& e,
             const VecP& one) {
  VecP r = one;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul_mod(F, t, r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul_mod(F, t, r, x);
  }
  return r;
}

IntMatrix generators_with_p(const std::vector<VecP>& kernel, std::uint64_t p, int n) {
  IntMatrix gens;
  for (int i = 0; i < n; ++i) {
    Vec v(static_cast<std::size_t>(n), 0);
    mpz_set_ui(v[static_cast<std::size_t>(i)].get_mpz_t(), p);
    gens.push_back(std::move(v));
  }
  for (const auto& k : kernel) {
    Vec v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) mpz_set_ui(v[static_cast<std::size_t>(i)].get_mpz_t(), k[static_cast<std::size_t>(i)]);
    gens.push_back(std::move(v));
  }
  return gens;
}

}  // namespace

OrderBasis OrderBasis::equation_order(int n) {
  OrderBasis o;
  o.rows.assign(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) o.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  o.denominator = 1;
  return o;
}

Integer OrderBasis::index_over_equation_order() const {
  Integer num = pow_of(denominator, static_cast<unsigned long>(rows.size()));
  Integer det = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) det *= rows[i][i];
  return num / det;
}

IntMatrix hnf_lower(IntMatrix work, int n) {
  IntMatrix basis(static_cast<std::size_t>(n));
  for (int col = n - 1; col >= 0; --col) {
    const std::size_t c = static_cast<std::size_t>(col);
    for (;;) {
      std::size_t best = work.size();
      std::size_t nonzero = 0;
      for (std::size_t r = 0; r < work.size(); ++r) {
        if (work[r][c] == 0) continue;
        ++nonzero;
        if (best == work.size() || abs(work[r][c]) < abs(work[best][c])) best = r;
      }
      if (best == work.size()) throw std::invalid_argument("hnf_lower: lattice is not of full rank");
      if (nonzero == 1) {
        Vec row = std::move(work[best]);
        work.erase(work.begin() + static_cast<long>(best));
        if (row[c] < 0)
          for (auto& v : row) v = -v;
        basis[c] = std::move(row);
        break;
      }
      for (std::size_t r = 0; r < work.size(); ++r) {
        if (r == best || work[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), work[r][c].get_mpz_t(), work[best][c].get_mpz_t());
        for (std::size_t j = 0; j <= c; ++j) work[r][j] -= q * work[best][j];
      }
    }
  }
  // Reduce entries left of each pivot into [0, pivot).
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j-- > 0;) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), basis[i][j].get_mpz_t(), basis[j][j].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k <= j; ++k) basis[i][k] -= q * basis[j][k];
    }
  }
  return basis;
}

bool dedekind_is_maximal(const ZPoly& f, std::uint64_t p) {
  const fp::Field F(p);
  const fp::Coeffs fbar = fp::reduce(f, F);
  fp::Coeffs g{1};
  for (const auto& [factor, mult] : fp::factor(F, fbar)) g = fp::mul(F, g, factor);
  const fp::Coeffs h = fp::divrem(F, fbar, g).first;
  const ZPoly diff = f - fp::lift(g) * fp::lift(h);
  const ZPoly quotient = exact_divide(diff, Integer(static_cast<unsigned long>(p)));
  const fp::Coeffs Fbar = fp::reduce(quotient, F);
  const fp::Coeffs d = fp::gcd(F, fp::gcd(F, Fbar, g), h);
  return fp::is_one(d);
}

OrderBasis round2_p_maximal(const ZPoly& f, OrderBasis order, std::uint64_t p, unsigned* index_exponent) {
  const int n = f.degree();
  const fp::Field F(p);
  Integer q(static_cast<unsigned long>(p));
  while (q < n) q *= static_cast<unsigned long>(p);
  for (;;) {
    const OrderArithmetic arith(f, order);
    const auto tp = arith.table_mod(F);
    // 1 in order coordinates: the first basis element is 1/denominator * rows[0][0], i.e. 1 itself
    // up to the HNF normalization (rows[0] = (den)).
    VecP one(static_cast<std::size_t>(n), 0);
    one[0] = 1;
    std::vector<VecP> frob;
    for (int i = 0; i < n; ++i) {
      VecP e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      frob.push_back(pow_mod(F, tp, e, q, one));
    }
    const IntMatrix radical = hnf_lower(generators_with_p(left_kernel(F, frob), p, n), n);

    std::vector<VecP> action;
    for (int i = 0; i < n; ++i) {
      VecP row;
      row.reserve(static_cast<std::size_t>(n * n));
      for (int j = 0; j < n; ++j) {
        const Vec prod = arith.mul_basis(i, radical[static_cast<std::size_t>(j)]);
        const Vec coords = solve_lower(radical, prod);
        for (const auto& c : coords) row.push_back(F.reduce(c));
      }
      action.push_back(std::move(row));
    }
    const auto kernel = left_kernel(F, action);
    if (kernel.empty()) return order;
    *index_exponent += static_cast<unsigned>(kernel.size());
    const IntMatrix U = hnf_lower(generators_with_p(kernel, p, n), n);
    IntMatrix rows(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k <= i; ++k)
        for (int j = 0; j < n; ++j)
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              U[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * order.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    Integer den = order.denominator * static_cast<unsigned long>(p);
    Integer g = den;
    for (const auto& r : rows)
      for (const auto& v : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    for (auto& r : rows)
      for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    order.rows = hnf_lower(std::move(rows), n);
    order.denominator = den;
  }
}

MaximalOrderResult maximal_order(const ZPoly& f, const Integer& poly_disc, std::uint64_t trial_limit) {
  const int n = f.degree();
  if (n < 1 || f.lead() != 1) throw std::invalid_argument("maximal_order: f must be monic of degree >= 1");
  if (poly_disc == 0) throw std::invalid_argument("maximal_order: zero discriminant");
  MaximalOrderResult res;
  res.poly_disc = poly_disc;
  res.basis = OrderBasis::equation_order(n);
  const IntegerFactorization fac = factor_integer(poly_disc, trial_limit);
  Integer unresolved = fac.unresolved;
  for (const auto& [q, e] : fac.primes) {
    PrimeIndexInfo info;
    info.prime = q;
    info.disc_exponent = e;
    if (e >= 2) {
      if (!q.fits_ulong_p() || q.get_ui() > (1ULL << 62)) {
        unresolved *= pow_of(q, e);
        continue;
      }
      const std::uint64_t p = q.get_ui();
      info.dedekind_maximal = dedekind_is_maximal(f, p);
      if (!info.dedekind_maximal) {
        res.basis = round2_p_maximal(f, res.basis, p, &info.index_exponent);
        res.index *= pow_of(q, info.index_exponent);
      }
    } else {
      info.dedekind_maximal = true;
    }
    res.primes.push_back(info);
  }
  res.field_disc = poly_disc / (res.index * res.index);
  res.resolved = unresolved == 1;
  res.unresolved_cofactor = unresolved;
  res.field_disc_abs_upper = abs(res.field_disc);
  res.field_disc_abs_lower = res.resolved ? res.field_disc_abs_upper : Integer(res.field_disc_abs_upper / unresolved);
  return res;
}

}  // namespace nfsearch
