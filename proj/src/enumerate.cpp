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

#include "nfsearch/enumerate.hpp"

#include <climits>
#include <cmath>
#include <compare>
#include <sstream>
#include <stdexcept>

#include "nfsearch/explicit_bounds.hpp"

namespace nfsearch {

namespace {

struct Overflow {};

// int64 that throws Overflow instead of wrapping.
class Checked {
 public:
  Checked() = default;
  Checked(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  long long value() const { return v_; }

  friend Checked operator+(Checked a, Checked b) {
    long long r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    long long r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    long long r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a) {
    if (a.v_ == LLONG_MIN) throw Overflow{};
    return -a.v_;
  }
  Checked& operator+=(Checked o) { return *this = *this + o; }
  Checked& operator-=(Checked o) { return *this = *this - o; }
  friend bool operator==(Checked a, Checked b) = default;
  friend auto operator<=>(Checked a, Checked b) = default;

 private:
  long long v_ = 0;
};

Integer to_integer(Checked c) { return Integer(static_cast<long>(c.value())); }
const Integer& to_integer(const Integer& v) { return v; }

template <class Int> Int from_integer(const Integer& v);
template <> Checked from_integer<Checked>(const Integer& v) {
  if (!v.fits_slong_p()) throw Overflow{};
  return Checked(v.get_si());
}
template <> Integer from_integer<Integer>(const Integer& v) { return v; }

Checked fdiv(Checked x, long m) {
  long long q = x.value() / m;
  if (x.value() % m != 0 && x.value() < 0) --q;
  return q;
}
Integer fdiv(const Integer& x, long m) {
  Integer q;
  mpz_fdiv_q_ui(q.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return q;
}
long fmod(Checked x, long m) {
  const long r = static_cast<long>(x.value() % m);
  return r < 0 ? r + m : r;
}
long fmod(const Integer& x, long m) {
  return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(m)));
}
Checked exact_div(Checked x, long m) { return x.value() / m; }
Integer exact_div(const Integer& x, long m) {
  Integer q;
  mpz_divexact_ui(q.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return q;
}
Checked abs_val(Checked x) { return x < 0 ? -x : x; }
Integer abs_val(const Integer& x) { return abs(x); }
bool admissible(Checked v, const std::vector<long>& ex) { return norm_admissible(v.value(), ex); }
bool admissible(const Integer& v, const std::vector<long>& ex) { return norm_admissible(v, ex); }

constexpr long double kInflate = 1.0L + 1e-12L;

// Integer thresholds of one cell.
struct Limits {
  std::vector<Integer> FU;  // floor(U_m), m = 2..n
  Integer cap_s1;           // floor(U_{-1} N)
  Integer cap_s2;           // floor(U_{-2} N^2)
  Integer cap_p1;           // |p(1)| cap
  Integer cap_m1;           // |p(-1)| cap
  Integer s2_lower;         // ceil(2 s1^2 / n - T)
};

Limits make_limits(const EnumCell& c) {
  const BoundsSet& b = c.bounds;
  const long double n = c.n;
  const long double T = b.T;
  Limits lim;
  lim.FU.resize(static_cast<std::size_t>(c.n + 1));
  for (int m = 2; m <= c.n; ++m) lim.FU[static_cast<std::size_t>(m)] = floor_to_integer(b.Um(m));
  const long double N = static_cast<long double>(c.N);
  lim.cap_s1 = floor_to_integer(static_cast<long double>(b.U.at(-1)) * N * kInflate);
  lim.cap_s2 = floor_to_integer(static_cast<long double>(b.U.at(-2)) * N * N * kInflate);
  lim.cap_p1 = floor_to_integer(std::pow((T - 2.0L * c.s1) / n + 1.0L, n / 2.0L) * kInflate);
  lim.cap_m1 = floor_to_integer(std::pow((T + 2.0L * c.s1) / n + 1.0L, n / 2.0L) * kInflate);
  const long double s2 = (T - 2.0L * c.s1 * c.s1 / n) * kInflate + 1e-12L;
  lim.s2_lower = -floor_to_integer(s2);
  return lim;
}

template <class Int>
class Engine {
 public:
  enum class Phase { starting, examining, advancing };

  Engine(const EnumCell& cell, const FilterSettings& fs, const Limits& lim, EnumCounters& counters)
      : n_(cell.n), inner_(cell.n - 1), c_(cell.parity_c), fs_(fs), counters_(counters) {
    const auto sz = static_cast<std::size_t>(n_ + 1);
    a_.assign(sz, Int(0));
    S_.assign(sz, Int(0));
    L_.assign(sz, Int(0));
    lower_.assign(sz, Int(0));
    k_.assign(sz, 0);
    FU_.assign(sz, Int(0));
    for (int m = 2; m <= n_; ++m) FU_[idx(m)] = from_integer<Int>(lim.FU[idx(m)]);
    cap_s1_ = from_integer<Int>(lim.cap_s1);
    cap_s2_ = from_integer<Int>(lim.cap_s2);
    cap_p1_ = from_integer<Int>(lim.cap_p1);
    cap_m1_ = from_integer<Int>(lim.cap_m1);
    s2_lower_ = from_integer<Int>(lim.s2_lower);
    a_[1] = Int(-cell.s1);
    S_[1] = Int(cell.s1);
    a_[idx(n_)] = from_integer<Int>(cell.a_n());
  }

  bool start() {
    init(2);
    if (inner_ == 2) parity();
    return settle(2);
  }

  bool restore(const ResumePoint& rp) {
    if (static_cast<int>(rp.a.size()) != n_ || from_integer<Int>(rp.a[0]) != a_[1] ||
        from_integer<Int>(rp.a.back()) != a_[idx(n_)])
      throw std::invalid_argument("resume point does not belong to this cell");
    for (int m = 2; m <= inner_; ++m) {
      const Int combo = newton_combo(m);
      a_[idx(m)] = from_integer<Int>(rp.a[idx(m - 1)]);
      S_[idx(m)] = -(Int(m) * a_[idx(m)]) - combo;
      set_cutoffs(m, fmod(-combo, m));
      const Int hi = Int(m) * fdiv(FU_[idx(m)] - Int(k_[idx(m)]), m) + Int(k_[idx(m)]);
      if (S_[idx(m)] > hi || S_[idx(m)] < lower_[idx(m)])
        throw std::invalid_argument("resume point outside the enumeration box");
    }
    if (fmod(p_at_one(), 2) != c_) throw std::invalid_argument("resume point has the wrong parity");
    phase_ = Phase::starting;
    if (rp.skip_current) return advance();
    return true;
  }

  // True when the cell is exhausted, false when stopped by the hook.
  bool run(const CellRunHooks& hooks, std::optional<ResumePoint>* stop) {
    std::uint64_t since_poll = 0;
    for (;;) {
      if (hooks.should_stop && ++since_poll >= hooks.poll_interval) {
        since_poll = 0;
        if (hooks.should_stop()) {
          *stop = ResumePoint{current(), false};
          return false;
        }
      }
      phase_ = Phase::examining;
      pos_ = a_;
      FilterCondition failed = FilterCondition::count;
      const bool ok = !fs_.enabled || filter(&failed);
      ++counters_.generated;
      if (ok) {
        ++counters_.passed;
        if (hooks.on_candidate) hooks.on_candidate(current());
      } else {
        ++counters_.failed[static_cast<std::size_t>(failed)];
      }
      phase_ = Phase::advancing;
      if (!advance()) return true;
    }
  }

  // Sets the coefficients directly (no box or parity checks); power sums follow from Newton.
  void load_unchecked(const std::vector<Integer>& a) {
    for (int m = 1; m <= n_; ++m) a_[idx(m)] = from_integer<Int>(a[idx(m - 1)]);
    S_[1] = -a_[1];
    for (int m = 2; m < n_; ++m) S_[idx(m)] = -(Int(m) * a_[idx(m)]) - newton_combo(m);
  }

  bool filter(FilterCondition* failed) const {
    const Int p1 = p_at_one();
    if (!norm_ok(p1) || abs_val(p1) > cap_p1_) {
      *failed = FilterCondition::p_plus1;
      return false;
    }
    const Int m1 = eval(-1);
    if (!norm_ok(m1) || abs_val(m1) > cap_m1_) {
      *failed = FilterCondition::p_minus1;
      return false;
    }
    Int sn = -(Int(n_) * a_[idx(n_)]);
    for (int i = 1; i < n_; ++i) sn -= a_[idx(i)] * S_[idx(n_ - i)];
    if (abs_val(sn) > FU_[idx(n_)]) {
      *failed = FilterCondition::s_n;
      return false;
    }
    const Int& an1 = a_[idx(n_ - 1)];
    if (abs_val(an1) > cap_s1_) {
      *failed = FilterCondition::s_minus1;
      return false;
    }
    const Int t = an1 * an1 - Int(2) * a_[idx(n_ - 2)] * a_[idx(n_)];
    if (abs_val(t) > cap_s2_) {
      *failed = FilterCondition::s_minus2;
      return false;
    }
    for (int k : fs_.eval_range) {
      if (!norm_ok(eval(k)) || !norm_ok(eval(-k))) {
        *failed = FilterCondition::p_k;
        return false;
      }
    }
    return true;
  }

  // Where an arbitrary-precision rerun must pick up after an overflow; nullopt: from the start.
  std::optional<ResumePoint> overflow_point() const {
    if (phase_ == Phase::starting) return std::nullopt;
    ResumePoint rp;
    for (int i = 1; i <= n_; ++i) rp.a.push_back(to_integer(pos_[idx(i)]));
    rp.skip_current = phase_ == Phase::advancing;
    return rp;
  }

 private:
  static std::size_t idx(int m) { return static_cast<std::size_t>(m); }

  Int newton_combo(int m) const {
    Int combo(0);
    for (int i = 1; i < m; ++i) combo += a_[idx(i)] * S_[idx(m - i)];
    return combo;
  }

  void set_cutoffs(int m, long km) {
    k_[idx(m)] = km;
    const long r = m - km;
    L_[idx(m)] = -(Int(m) * fdiv(FU_[idx(m)] - Int(r), m)) - Int(r);
    lower_[idx(m)] = (m == 2 && s2_lower_ > L_[idx(m)]) ? s2_lower_ : L_[idx(m)];
  }

  void init(int m) {
    const Int combo = newton_combo(m);
    const long km = fmod(-combo, m);
    S_[idx(m)] = Int(m) * fdiv(FU_[idx(m)] - Int(km), m) + Int(km);
    a_[idx(m)] = exact_div(-S_[idx(m)] - combo, m);
    set_cutoffs(m, km);
  }

  Int p_at_one() const {
    Int p(1);
    for (int i = 1; i <= n_; ++i) p += a_[idx(i)];
    return p;
  }

  void parity() {
    if (fmod(p_at_one(), 2) != c_) {
      a_[idx(inner_)] += Int(1);
      S_[idx(inner_)] -= Int(inner_);
    }
  }

  bool settle(int m) {
    for (;;) {
      if (S_[idx(m)] >= lower_[idx(m)]) {
        if (m == inner_) return true;
        ++m;
        init(m);
        if (m == inner_) parity();
      } else {
        if (m == 2) return false;
        --m;
        a_[idx(m)] += Int(1);
        S_[idx(m)] -= Int(m);
      }
    }
  }

  bool advance() {
    a_[idx(inner_)] += Int(2);
    S_[idx(inner_)] -= Int(2 * inner_);
    return settle(inner_);
  }

  Int eval(long x) const {
    Int acc(1);
    for (int i = 1; i <= n_; ++i) acc = acc * Int(x) + a_[idx(i)];
    return acc;
  }

  bool norm_ok(const Int& v) const {
    return v != Int(0) && (fs_.excluded_norms.empty() || admissible(v, fs_.excluded_norms));
  }

  std::vector<Integer> current() const {
    std::vector<Integer> out;
    out.reserve(idx(n_));
    for (int i = 1; i <= n_; ++i) out.push_back(to_integer(a_[idx(i)]));
    return out;
  }

  int n_;
  int inner_;
  long c_;
  const FilterSettings& fs_;
  EnumCounters& counters_;
  std::vector<Int> a_, S_, L_, lower_, FU_, pos_;
  std::vector<long> k_;
  Int cap_s1_, cap_s2_, cap_p1_, cap_m1_, s2_lower_;
  Phase phase_ = Phase::starting;
};

template <class Int>
bool drive(Engine<Int>& e, const std::optional<ResumePoint>& from, const CellRunHooks& hooks, CellRunResult& res) {
  const bool positioned = from ? e.restore(*from) : e.start();
  if (!positioned) return true;
  std::optional<ResumePoint> stop;
  if (e.run(hooks, &stop)) return true;
  res.resume = std::move(stop);
  return false;
}

}  // namespace

std::string EnumCell::id() const {
  return "s" + std::to_string(s1) + ":a" + std::to_string(sign * N) + ":c" + std::to_string(parity_c);
}

EnumCell make_cell(int n, int s1, const Integer& disc_bound, long N, int sign, int parity_c) {
  if (n < 3) throw std::invalid_argument("enumeration needs degree >= 3");
  if (s1 < 0 || 2 * s1 > n) throw std::invalid_argument("trace outside [0, n/2]");
  if (N < 1 || (sign != 1 && sign != -1) || (parity_c != 0 && parity_c != 1))
    throw std::invalid_argument("invalid cell parameters");
  EnumCell c;
  c.n = n;
  c.s1 = s1;
  c.N = N;
  c.sign = sign;
  c.parity_c = parity_c;
  c.bounds = compute_bounds(n, s1, disc_bound, N);
  return c;
}

std::vector<int> default_eval_range(int n) {
  std::vector<int> r;
  for (int k = 2; k <= (5 * n) / 8; ++k) r.push_back(k);
  return r;
}

const char* to_string(FilterCondition c) {
  switch (c) {
    case FilterCondition::p_plus1: return "p(1)";
    case FilterCondition::p_minus1: return "p(-1)";
    case FilterCondition::s_n: return "S_n";
    case FilterCondition::s_minus1: return "S_-1";
    case FilterCondition::s_minus2: return "S_-2";
    case FilterCondition::p_k: return "p(+-k)";
    case FilterCondition::count: break;
  }
  return "?";
}

std::uint64_t EnumCounters::discarded() const {
  std::uint64_t s = 0;
  for (auto v : failed) s += v;
  return s;
}

EnumCounters& EnumCounters::operator+=(const EnumCounters& o) {
  generated += o.generated;
  passed += o.passed;
  for (std::size_t i = 0; i < failed.size(); ++i) failed[i] += o.failed[i];
  return *this;
}

EnumState EnumState::start(int n, int s1, const Integer& a_n) {
  EnumState st;
  st.n = n;
  const auto sz = static_cast<std::size_t>(n + 1);
  st.a.assign(sz, 0);
  st.S.assign(sz, 0);
  st.k.assign(sz, 0);
  st.L.assign(sz, 0);
  st.a[1] = -s1;
  st.S[1] = s1;
  st.a[sz - 1] = a_n;
  return st;
}

Integer lower_cutoff(int m, const Integer& k, double U_m) {
  const Integer r = m - k;
  return -(m * fdiv(floor_to_integer(U_m) - r, m)) - r;
}

void init_level(EnumState& st, int m, double U_m) {
  const auto i = static_cast<std::size_t>(m);
  Integer combo = 0;
  for (int j = 1; j < m; ++j) combo += st.a[static_cast<std::size_t>(j)] * st.S[static_cast<std::size_t>(m - j)];
  const Integer km = fmod(-combo, m);
  st.k[i] = km;
  st.S[i] = m * fdiv(floor_to_integer(U_m) - km, m) + km;
  st.a[i] = exact_div(-st.S[i] - combo, m);
  st.L[i] = lower_cutoff(m, km, U_m);
  st.level = m;
}

bool parity_adjust(EnumState& st, int c) {
  Integer p = 1;
  for (int i = 1; i <= st.n; ++i) p += st.a[static_cast<std::size_t>(i)];
  if (fmod(p, 2) == c) return false;
  const auto inner = static_cast<std::size_t>(st.n - 1);
  st.a[inner] += 1;
  st.S[inner] -= st.n - 1;
  return true;
}

bool step3_filter(const std::vector<Integer>& a, const BoundsSet& b, const FilterSettings& fs,
                  FilterCondition* failed) {
  if (static_cast<int>(a.size()) != b.n || b.n < 3) throw std::invalid_argument("step3_filter: wrong length");
  EnumCell cell;
  cell.n = b.n;
  cell.s1 = b.s1;
  cell.N = b.N;
  cell.bounds = b;
  const Limits lim = make_limits(cell);
  EnumCounters unused;
  Engine<Integer> e(cell, fs, lim, unused);
  e.load_unchecked(a);
  FilterCondition fc = FilterCondition::count;
  const bool ok = e.filter(&fc);
  if (failed) *failed = fc;
  return ok;
}

std::string format_candidate(const std::vector<Integer>& a, const std::string& cell_id) {
  std::ostringstream os;
  os << a.size();
  for (const auto& v : a) os << ',' << v;
  os << ',' << cell_id;
  return os.str();
}

CellRunResult run_cell(const EnumCell& cell, const FilterSettings& fs, const std::optional<ResumePoint>& from,
                       const CellRunHooks& hooks, bool force_bigint) {
  const Limits lim = make_limits(cell);
  CellRunResult res;
  std::optional<ResumePoint> next = from;
  if (!force_bigint) {
    std::optional<Engine<Checked>> fast;
    try {
      fast.emplace(cell, fs, lim, res.counters);
      res.finished = drive(*fast, from, hooks, res);
      return res;
    } catch (const Overflow&) {
      if (fast) {
        auto p = fast->overflow_point();
        if (p) next = std::move(p);
      }
    }
  }
  res.used_bigint = true;
  res.resume.reset();
  Engine<Integer> exact(cell, fs, lim, res.counters);
  res.finished = drive(exact, next, hooks, res);
  return res;
}

}  // namespace nfsearch
