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

#include "nfsearch/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nfsearch/factor.hpp"
#include "nfsearch/maximal_order.hpp"

namespace nfsearch {

namespace {

using Complex = std::complex<long double>;

long double to_ld(const Integer& v) { return static_cast<long double>(v.get_d()); }

Complex eval_complex(const ZPoly& p, Complex z) {
  Complex acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * z + Complex(to_ld(p[static_cast<std::size_t>(i)]), 0);
  return acc;
}

std::string join(const std::vector<Integer>& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a[i];
  }
  return os.str();
}

// d^n h(G/d) mod f == 0, with h given by a_1..a_n.
bool annihilates(const std::vector<Integer>& a, const ZPoly& G, const Integer& d, const ZPoly& f) {
  const std::size_t n = a.size();
  ZPoly acc = ZPoly::constant(1);
  Integer dpow = 1;
  for (std::size_t i = 0; i < n; ++i) {
    dpow *= d;
    acc = divide_monic(acc * G + ZPoly::constant(a[i] * dpow), f).first;
  }
  return acc.is_zero();
}

}  // namespace

std::vector<Complex> complex_roots(const ZPoly& f) {
  const int n = f.degree();
  std::vector<Complex> roots;
  if (n < 1) return roots;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -f[static_cast<std::size_t>(i)].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  const ZPoly df = derivative(f);
  for (int i = 0; i < n; ++i) {
    Complex z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 6; ++it) {
      const Complex dz = eval_complex(df, z);
      if (std::abs(dz) == 0) break;
      z -= eval_complex(f, z) / dz;
    }
    roots.push_back(z);
  }
  return roots;
}

Eigen::MatrixXd lll_reduce(Eigen::MatrixXd& b, double delta) {
  const Eigen::Index n = b.cols();
  Eigen::MatrixXd U = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd bstar(b.rows(), n);
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd norms(n);
  auto gram_schmidt = [&] {
    for (Eigen::Index i = 0; i < n; ++i) {
      bstar.col(i) = b.col(i);
      for (Eigen::Index j = 0; j < i; ++j) {
        mu(i, j) = b.col(i).dot(bstar.col(j)) / norms(j);
        bstar.col(i) -= mu(i, j) * bstar.col(j);
      }
      norms(i) = bstar.col(i).squaredNorm();
    }
  };
  gram_schmidt();
  Eigen::Index k = 1;
  int guard = 0;
  while (k < n && guard++ < 100000) {
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      const double q = std::round(mu(k, j));
      if (q == 0) continue;
      b.col(k) -= q * b.col(j);
      U.col(k) -= q * U.col(j);
      gram_schmidt();
    }
    if (norms(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * norms(k - 1)) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      U.col(k).swap(U.col(k - 1));
      gram_schmidt();
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
  return U;
}

std::vector<Eigen::VectorXd> short_vectors(const Eigen::MatrixXd& gram, double bound, std::size_t max_count,
                                           bool* truncated) {
  const Eigen::Index n = gram.rows();
  *truncated = false;
  std::vector<Eigen::VectorXd> out;
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  const Eigen::MatrixXd R = llt.matrixU();
  Eigen::VectorXd qd(n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    qd(i) = R(i, i) * R(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) q(i, j) = R(i, j) / R(i, i);
  }
  const double eps = 1e-9 * std::max(1.0, bound);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::function<void(Eigen::Index, double)> rec = [&](Eigen::Index i, double rem) {
    if (*truncated) return;
    double c = 0;
    for (Eigen::Index j = i + 1; j < n; ++j) c -= q(i, j) * x(j);
    const double r = std::sqrt(std::max(0.0, rem + eps) / qd(i));
    const double lo = std::ceil(c - r);
    const double hi = std::floor(c + r);
    for (double xi = lo; xi <= hi; xi += 1) {
      const double t = rem - qd(i) * (xi - c) * (xi - c);
      if (t < -eps) continue;
      x(i) = xi;
      if (i == 0) {
        if (!x.isZero()) {
          if (out.size() >= max_count) {
            *truncated = true;
            return;
          }
          out.push_back(x);
        }
      } else {
        rec(i - 1, t);
      }
      if (*truncated) return;
    }
    x(i) = 0;
  };
  rec(n - 1, bound);
  return out;
}

bool canonical_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const int c = cmp(abs(a[i]), abs(b[i]));
    if (c != 0) return c < 0;
  }
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

CanonicalForm canonical_polynomial(const ZPoly& f) {
  const int n = f.degree();
  CanonicalForm fallback{to_monic_coeffs(f), 0, false};
  if (n < 2) return fallback;
  const MaximalOrderResult mo = maximal_order(f, poly_discriminant(f));
  std::vector<Complex> roots = complex_roots(f);
  const int r1 = count_real_roots(f);
  std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
    return std::abs(x.imag()) < std::abs(y.imag());
  });
  for (int i = 0; i < r1; ++i) roots[static_cast<std::size_t>(i)].imag(0);
  std::vector<Complex> reps(roots.begin(), roots.begin() + r1);
  for (std::size_t i = static_cast<std::size_t>(r1); i < roots.size(); ++i)
    if (roots[i].imag() > 0) reps.push_back(roots[i]);
  if (static_cast<int>(reps.size()) != r1 + (n - r1) / 2) return fallback;

  // conj[k][i]: the k-th conjugate of basis element i (all n embeddings).
  std::vector<Complex> all(reps.begin(), reps.end());
  for (std::size_t i = static_cast<std::size_t>(r1); i < reps.size(); ++i) all.push_back(std::conj(reps[i]));
  const long double den = to_ld(mo.basis.denominator);
  std::vector<std::vector<Complex>> conj(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  std::vector<ZPoly> basis_polys;
  for (int i = 0; i < n; ++i) basis_polys.emplace_back(mo.basis.rows[static_cast<std::size_t>(i)]);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      conj[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
          eval_complex(basis_polys[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(k)]) / den;

  Eigen::MatrixXd B(n, n);
  for (int i = 0; i < n; ++i) {
    int row = 0;
    for (int k = 0; k < r1; ++k) B(row++, i) = static_cast<double>(conj[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].real());
    for (std::size_t k = static_cast<std::size_t>(r1); k < reps.size(); ++k) {
      B(row++, i) = static_cast<double>(std::sqrt(2.0L) * conj[k][static_cast<std::size_t>(i)].real());
      B(row++, i) = static_cast<double>(std::sqrt(2.0L) * conj[k][static_cast<std::size_t>(i)].imag());
    }
  }
  Eigen::MatrixXd reduced = B;
  const Eigen::MatrixXd U = lll_reduce(reduced);
  const Eigen::MatrixXd gram = reduced.transpose() * reduced;

  struct Found {
    std::vector<Integer> coeffs;
    double t2;
  };
  auto examine = [&](const Eigen::VectorXd& x, std::vector<Found>& found) {
    const Eigen::VectorXd v = U * x;
    std::vector<Integer> vi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vi[static_cast<std::size_t>(i)] = static_cast<long>(std::llround(v(i)));
    std::vector<Complex> e(static_cast<std::size_t>(n), 0);
    long double t2 = 0;
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i)
        e[static_cast<std::size_t>(k)] += to_ld(vi[static_cast<std::size_t>(i)]) * conj[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      t2 += std::norm(e[static_cast<std::size_t>(k)]);
    }
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        if (std::abs(e[static_cast<std::size_t>(k)] - e[static_cast<std::size_t>(l)]) < 1e-7L) return;
    // Characteristic polynomial from the conjugates, rounded, then checked exactly.
    std::vector<Complex> h{Complex(1, 0)};
    for (const auto& z : e) {
      std::vector<Complex> next(h.size() + 1, 0);
      for (std::size_t i = 0; i < h.size(); ++i) {
        next[i] += h[i];
        next[i + 1] -= h[i] * z;
      }
      h = std::move(next);
    }
    std::vector<Integer> a(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      const long double re = h[static_cast<std::size_t>(i)].real();
      const long double r = std::round(re);
      if (std::abs(re - r) > 1e-3L || std::abs(r) > 9e15L) return;
      a[static_cast<std::size_t>(i - 1)] = static_cast<long>(r);
    }
    ZPoly G;
    for (int i = 0; i < n; ++i) G += basis_polys[static_cast<std::size_t>(i)] * vi[static_cast<std::size_t>(i)];
    if (!annihilates(a, G, mo.basis.denominator, f)) return;
    std::vector<Integer> b = a;
    for (std::size_t i = 0; i < b.size(); i += 2) b[i] = -b[i];  // x -> -x on a_1, a_3, ...
    found.push_back({canonical_less(b, a) ? b : a, static_cast<double>(t2)});
  };

  double bound = gram.diagonal().maxCoeff();
  for (int attempt = 0; attempt < 6; ++attempt, bound *= 2) {
    bool truncated = false;
    const auto vecs = short_vectors(gram, bound * (1 + 1e-9), 200000, &truncated);
    std::vector<Found> found;
    for (const auto& x : vecs) examine(x, found);
    if (found.empty()) {
      if (truncated) break;
      continue;
    }
    double best = found.front().t2;
    for (const auto& f2 : found) best = std::min(best, f2.t2);
    CanonicalForm out{{}, best, true};
    for (const auto& f2 : found) {
      if (f2.t2 > best * (1 + 1e-7) + 1e-9) continue;
      if (out.coeffs.empty() || canonical_less(f2.coeffs, out.coeffs)) out.coeffs = f2.coeffs;
    }
    return out;
  }
  return fallback;
}

std::vector<DedupGroup> dedup(std::vector<FieldRecord>& records) {
  auto key_less = [](const Integer& a, const Integer& b) {
    const int c = cmp(abs(a), abs(b));
    return c != 0 ? c < 0 : a < b;
  };
  std::map<Integer, std::map<std::string, std::vector<std::size_t>>, decltype(key_less)> groups(key_less);
  std::map<std::string, std::string> memo;
  for (std::size_t i = 0; i < records.size(); ++i) {
    FieldRecord& rec = records[i];
    const std::string self = join(rec.poly.coeffs);
    auto it = memo.find(self);
    if (it == memo.end()) it = memo.emplace(self, join(canonical_polynomial(rec.poly.poly()).coeffs)).first;
    rec.canonical = it->second;
    groups[rec.field_disc][rec.canonical].push_back(i);
  }
  std::vector<DedupGroup> out;
  for (auto& [disc, classes] : groups) {
    DedupGroup g{disc, {}};
    for (auto& [canon, members] : classes) g.classes.push_back({canon, members});
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace nfsearch
