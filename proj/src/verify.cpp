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

#include "nfsearch/verify.hpp"

#include <complex>
#include <sstream>
#include <stdexcept>

#include "nfsearch/factor.hpp"
#include "nfsearch/hp_bounds.hpp"
#include "nfsearch/maximal_order.hpp"
#include "nfsearch/reduce.hpp"

namespace nfsearch {

ZPoly CandidatePolynomial::poly() const { return from_monic_coeffs(coeffs); }

CandidatePolynomial CandidatePolynomial::from_poly(const ZPoly& p, std::string cell_id) {
  return CandidatePolynomial{to_monic_coeffs(p), std::move(cell_id)};
}

namespace {

int sign_at_pos_inf(const ZPoly& p) { return sign_of(p.lead()); }
int sign_at_neg_inf(const ZPoly& p) { return p.degree() % 2 == 0 ? sign_of(p.lead()) : -sign_of(p.lead()); }

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const ZPoly& p) {
  if (p.degree() < 1) return 0;
  std::vector<ZPoly> seq{primitive_part(p, true), primitive_part(derivative(p), true)};
  while (seq.back().degree() > 0) {
    const ZPoly& a = seq[seq.size() - 2];
    const ZPoly& b = seq.back();
    ZPoly r = pseudo_remainder(a, b);
    // prem multiplies by lc(b)^(da - db + 1); undo a negative factor so only the sign of -rem matters.
    if (b.lead() < 0 && (a.degree() - b.degree() + 1) % 2 != 0) r = -r;
    if (r.is_zero()) break;
    seq.push_back(-primitive_part(r, true));
  }
  std::vector<int> neg, pos;
  for (const auto& q : seq) {
    neg.push_back(sign_at_neg_inf(q));
    pos.push_back(sign_at_pos_inf(q));
  }
  return sign_changes(neg) - sign_changes(pos);
}

RootSignature signature(const ZPoly& p) { return signature(p, poly_discriminant(p)); }

RootSignature signature(const ZPoly& p, const Integer& poly_disc) {
  if (poly_disc == 0) throw std::invalid_argument("signature: polynomial is not squarefree");
  const int n = p.degree();
  const int r1 = count_real_roots(p);
  if ((n - r1) % 2 != 0 || r1 < 0) throw std::logic_error("signature: inconsistent Sturm count");
  RootSignature s{r1, (n - r1) / 2};
  const int expected = s.r2 % 2 == 0 ? 1 : -1;
  if (sign_of(poly_disc) != expected) throw std::logic_error("signature: Sturm count contradicts disc sign");
  return s;
}

FieldDiscriminant field_discriminant(const ZPoly& p, const Integer& poly_disc, std::uint64_t trial_limit) {
  const MaximalOrderResult mo = maximal_order(p, poly_disc, trial_limit);
  FieldDiscriminant fd;
  fd.field_disc = mo.field_disc;
  fd.index2 = mo.index * mo.index;
  fd.resolved = mo.resolved;
  fd.abs_lower = mo.field_disc_abs_lower;
  fd.abs_upper = mo.field_disc_abs_upper;
  return fd;
}

double t2_norm(const ZPoly& p) {
  long double t = 0;
  for (const auto& z : complex_roots(p)) t += std::norm(z);
  return static_cast<double>(t);
}

bool exceeds_hunter_t2(const std::vector<Integer>& a, const Integer& disc_bound) {
  const int n = static_cast<int>(a.size());
  if (n < 2 || a.front() > 0 || -2 * a.front() > n) return false;
  const HermiteTable hermite;
  if (!hermite.contains(n - 1)) return false;
  const double T = u2_bound(n, static_cast<int>(-a.front().get_si()), disc_bound, hermite);
  const auto roots = complex_roots(from_monic_coeffs(a));
  std::complex<long double> s1 = 0, s2 = 0;
  long double t2 = 0;
  for (const auto& z : roots) {
    s1 += z;
    s2 += z * z;
    t2 += std::norm(z);
  }
  // Two roots polished onto the same value would understate T2; refuse to reject unless the roots
  // reproduce the exact S_1 and S_2.
  const long double e1 = -a[0].get_d();
  const long double e2 = Integer(a[0] * a[0] - 2 * a[1]).get_d();
  const long double tol = 1e-9L * (1 + t2);
  if (std::abs(s1 - e1) > tol || std::abs(s2 - e2) > tol) return false;
  return t2 > T * (1 + 1e-8L);
}

const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::accepted: return "accepted";
    case VerifyStatus::reducible: return "reducible";
    case VerifyStatus::squarefree_violation: return "squarefree_violation";
    case VerifyStatus::wrong_degree: return "wrong_degree";
    case VerifyStatus::t2_exceeds: return "t2_exceeds";
    case VerifyStatus::wrong_signature: return "wrong_signature";
    case VerifyStatus::over_bound: return "over_bound";
    case VerifyStatus::unresolved: return "unresolved";
  }
  return "?";
}

VerifyOutcome verify_candidate(const CandidatePolynomial& cand, const Signature& sig, const Integer& disc_bound,
                               const VerifyOptions& opts) {
  VerifyOutcome out;
  FieldRecord& rec = out.record;
  rec.poly = cand;
  if (cand.degree() != sig.n) {
    out.status = VerifyStatus::wrong_degree;
    return out;
  }
  if (cand.coeffs.back() == 0) {
    out.status = VerifyStatus::reducible;
    return out;
  }
  if (opts.hunter_t2 && exceeds_hunter_t2(cand.coeffs, disc_bound)) {
    out.status = VerifyStatus::t2_exceeds;
    return out;
  }
  const ZPoly p = cand.poly();
  rec.poly_disc = poly_discriminant(p);
  if (rec.poly_disc == 0) {
    out.status = VerifyStatus::squarefree_violation;
    return out;
  }
  // Wrong discriminant sign settles the signature without Sturm or factoring.
  if (sign_of(rec.poly_disc) != (sig.r2 % 2 == 0 ? 1 : -1)) {
    out.status = VerifyStatus::wrong_signature;
    return out;
  }
  if (!is_irreducible(p, IrreducibilityOptions{opts.sieve_primes})) {
    out.status = VerifyStatus::reducible;
    return out;
  }
  const RootSignature rs = signature(p, rec.poly_disc);
  rec.r1 = rs.r1;
  rec.r2 = rs.r2;
  if (rs.r1 != sig.r1) {
    out.status = VerifyStatus::wrong_signature;
    return out;
  }
  const FieldDiscriminant fd = field_discriminant(p, rec.poly_disc, opts.trial_limit);
  rec.field_disc = fd.field_disc;
  rec.index2 = fd.index2;
  rec.resolved = fd.resolved;
  rec.field_disc_abs_lower = fd.abs_lower;
  rec.field_disc_abs_upper = fd.abs_upper;
  if (fd.abs_lower > disc_bound) {
    out.status = VerifyStatus::over_bound;
  } else if (!fd.resolved && fd.abs_upper > disc_bound) {
    out.status = VerifyStatus::unresolved;
  } else {
    out.status = VerifyStatus::accepted;
  }
  return out;
}

bool accept(const FieldRecord& rec, const Signature& sig, const Integer& disc_bound) {
  if (rec.poly.degree() != sig.n || rec.r1 != sig.r1 || rec.r2 != sig.r2) return false;
  if (rec.field_disc == 0 || sign_of(rec.field_disc) != (rec.r2 % 2 == 0 ? 1 : -1)) return false;
  if (!rec.resolved) return false;
  if (abs(rec.field_disc) > disc_bound) return false;
  return is_irreducible(rec.poly.poly());
}

std::string format_record(const FieldRecord& rec, const std::vector<std::string>& extra_flags) {
  std::ostringstream os;
  for (std::size_t i = 0; i < rec.poly.coeffs.size(); ++i) {
    if (i) os << ',';
    os << rec.poly.coeffs[i];
  }
  os << "; " << rec.poly_disc << "; " << rec.field_disc << "; " << rec.r1 << ',' << rec.r2 << "; ";
  std::vector<std::string> flags;
  if (rec.primitivity_unknown) flags.emplace_back("primitivity_unknown");
  if (!rec.resolved)
    flags.push_back("unresolved[" + rec.field_disc_abs_lower.get_str() + ".." + rec.field_disc_abs_upper.get_str() +
                    "]");
  flags.insert(flags.end(), extra_flags.begin(), extra_flags.end());
  if (flags.empty()) flags.emplace_back("-");
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) os << '|';
    os << flags[i];
  }
  return os.str();
}

}  // namespace nfsearch
