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

#include "nfsearch/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nfsearch/factor.hpp"
#include "nfsearch/hp_bounds.hpp"

namespace nfsearch {

namespace {

std::string join(const std::vector<Integer>& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  return os.str();
}

bool record_less(const FieldRecord& x, const FieldRecord& y) {
  const int c = cmp(abs(x.field_disc), abs(y.field_disc));
  if (c != 0) return c < 0;
  if (x.field_disc != y.field_disc) return x.field_disc < y.field_disc;
  return join(x.poly.coeffs) < join(y.poly.coeffs);
}

void logln(const RunOptions& opts, const std::string& s) {
  if (opts.log) *opts.log << s << '\n' << std::flush;
}

}  // namespace

double estimate_cell_cost(const EnumCell& cell) {
  double cost = 1;
  for (int m = 2; m < cell.n; ++m) cost *= 2.0 * cell.bounds.Um(m) / m + 1.0;
  return cost;
}

std::vector<EnumCell> plan_cells(const SearchSpec& spec) {
  const int n = spec.degree;
  std::vector<std::pair<double, EnumCell>> planned;
  for (int s1 : spec.s1_values) {
    const double T = u2_bound(n, s1, spec.disc_bound) * (1 + kBoundSafety);
    long cap = static_cast<long>(std::floor(norm_cap(n, T)));
    if (spec.a_n_max) cap = std::min(cap, *spec.a_n_max);
    for (long N = 1; N <= cap; ++N) {
      if (!spec.excluded_norms.empty() && !norm_admissible(static_cast<long long>(N), spec.excluded_norms)) continue;
      for (int sign : {1, -1}) {
        if (std::find(spec.sign_values.begin(), spec.sign_values.end(), sign) == spec.sign_values.end()) continue;
        for (int c : spec.parity_values) {
          EnumCell cell = make_cell(n, s1, spec.disc_bound, N, sign, c);
          const double cost = estimate_cell_cost(cell);
          planned.emplace_back(cost, std::move(cell));
        }
      }
    }
  }
  if (planned.empty()) throw ConfigError("no admissible cell: (T/n)^(n/2) < 1 for every requested trace");
  std::stable_sort(planned.begin(), planned.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<EnumCell> out;
  for (auto& p : planned) out.push_back(std::move(p.second));
  return out;
}

std::string format_plan(const std::vector<EnumCell>& cells) {
  std::ostringstream os;
  for (const auto& c : cells) {
    char buf[96];
    std::snprintf(buf, sizeof buf, ", %.9g, %.4g", c.bounds.T, estimate_cell_cost(c));
    os << c.id() << ", " << c.s1 << ", " << c.a_n() << ", " << c.parity_c << buf << '\n';
  }
  return os.str();
}

std::vector<BoundsRow> bounds_table(const Signature& sig, const std::vector<long>& norms, YRange range,
                                    int k_cutoff) {
  std::vector<BoundsRow> rows;
  if (norms.empty()) {
    rows.push_back({std::nullopt, optimize_bound(sig, LocalTerms{}, range, k_cutoff)});
    return rows;
  }
  for (long q : norms) rows.push_back({q, optimize_bound(sig, LocalTerms{{q}, 200}, range, k_cutoff)});
  return rows;
}

std::string format_bounds_table(const std::vector<BoundsRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ", %.9f, %.12f, %s", r.eval.y, r.eval.rhs,
                  floor_to_integer(r.eval.implied_bound).get_str().c_str());
    os << (r.norm ? std::to_string(*r.norm) : std::string("none")) << buf << '\n';
  }
  return os.str();
}

std::string to_gp(const std::vector<Integer>& a) {
  const std::size_t n = a.size();
  std::ostringstream os;
  os << "x^" << n;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& c = a[i];
    if (c == 0) continue;
    const std::size_t e = n - 1 - i;
    os << (c < 0 ? " - " : " + ");
    const Integer m = abs(c);
    if (e == 0) {
      os << m;
      continue;
    }
    if (m != 1) os << m << '*';
    os << 'x';
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

std::string format_table(const std::vector<FieldRecord>& accepted, const std::vector<FieldRecord>& unresolved,
                         const std::vector<DedupGroup>& groups) {
  // canonical -> (class size, group has several classes)
  std::map<std::pair<Integer, std::string>, std::pair<std::size_t, bool>> info;
  for (const auto& g : groups)
    for (const auto& cl : g.classes) info[{g.field_disc, cl.canonical}] = {cl.members.size(), g.classes.size() > 1};
  std::ostringstream os;
  for (const auto& r : accepted) {
    std::vector<std::string> flags{"canonical=" + r.canonical};
    const auto it = info.find({r.field_disc, r.canonical});
    if (it != info.end()) {
      if (it->second.first > 1) flags.emplace_back("probably_isomorphic");
      if (it->second.second) flags.emplace_back("possibly_distinct");
    }
    os << format_record(r, flags) << '\n';
  }
  for (const auto& r : unresolved) os << format_record(r) << '\n';
  return os.str();
}

RunReport run_search(const SearchSpec& spec, const RunOptions& opts) {
  const std::vector<EnumCell> cells = plan_cells(spec);
  const std::string hash = spec_hash(spec);
  const std::string ckpt_path = spec.effective_checkpoint_path();

  std::optional<Checkpoint> existing = opts.fresh ? std::nullopt : load_checkpoint(ckpt_path);
  if (opts.resume_only && !existing) throw ConfigError("no checkpoint at " + ckpt_path + " to resume from");
  Checkpoint ck;
  if (existing) {
    if (existing->spec_hash != hash)
      throw ConfigError("checkpoint " + ckpt_path + " belongs to a different search (hash " + existing->spec_hash + ")");
    ck = std::move(*existing);
    bool same = ck.cells.size() == cells.size();
    for (std::size_t i = 0; same && i < cells.size(); ++i) same = ck.cells[i].id == cells[i].id();
    if (!same) throw ConfigError("checkpoint cell list does not match the plan");
    logln(opts, "resuming from " + ckpt_path);
  } else {
    ck.spec_hash = hash;
    ck.spec_text = canonical_text(spec);
    for (const auto& c : cells) ck.cells.push_back(CellProgress{c.id(), CellState::pending, std::nullopt, {}, false, 0, {}});
    save_checkpoint(ckpt_path, ck);
  }

  FilterSettings fs;
  fs.enabled = spec.filters;
  fs.excluded_norms = spec.excluded_norms;
  fs.eval_range = spec.eval_range;

  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (ck.cells[i].state != CellState::done) work.push_back(i);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> examined{0};
  std::mutex ck_mutex;
  std::exception_ptr error;

  auto commit = [&](std::size_t i, const CellProgress& p) {
    std::lock_guard<std::mutex> lock(ck_mutex);
    ck.cells[i] = p;
    save_checkpoint(ckpt_path, ck);
  };

  auto worker = [&] {
    try {
      while (!stop.load()) {
        const std::size_t w = next.fetch_add(1);
        if (w >= work.size()) break;
        const std::size_t i = work[w];
        CellProgress local;
        {
          std::lock_guard<std::mutex> lock(ck_mutex);
          local = ck.cells[i];
        }
        local.state = CellState::in_progress;
        for (;;) {
          std::uint64_t since_save = 0;
          CellRunHooks hooks;
          hooks.poll_interval = opts.stop_after ? 1 : std::min<std::uint64_t>(4096, spec.checkpoint_interval);
          hooks.on_candidate = [&](const std::vector<Integer>& a) {
            if (spec.t2_filter && exceeds_hunter_t2(a, spec.disc_bound))
              ++local.t2_rejected;
            else
              local.survivors.push_back(a);
          };
          hooks.should_stop = [&] {
            if (opts.external_stop && opts.external_stop->load()) stop = true;
            if (opts.stop_after && examined.fetch_add(hooks.poll_interval) + hooks.poll_interval > *opts.stop_after)
              stop = true;
            since_save += hooks.poll_interval;
            return stop.load() || since_save >= spec.checkpoint_interval;
          };
          const CellRunResult r = run_cell(cells[i], fs, local.resume, hooks);
          local.counters += r.counters;
          local.used_bigint = local.used_bigint || r.used_bigint;
          if (r.finished) {
            local.state = CellState::done;
            local.resume.reset();
            commit(i, local);
            break;
          }
          local.resume = r.resume;
          commit(i, local);
          if (stop.load()) break;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(ck_mutex);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };

  const int nworkers = std::max(1, std::min<int>(spec.workers, static_cast<int>(std::max<std::size_t>(work.size(), 1))));
  std::vector<std::thread> pool;
  for (int t = 1; t < nworkers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  RunReport rep;
  rep.cells_total = ck.cells.size();
  for (const auto& c : ck.cells) {
    rep.counters += c.counters;
    if (c.state == CellState::done) ++rep.cells_done;
  }
  if (!ck.complete()) {
    logln(opts, "interrupted: " + std::to_string(rep.cells_done) + "/" + std::to_string(rep.cells_total) +
                    " cells done; checkpoint at " + ckpt_path);
    return rep;
  }
  rep.completed = true;

  // Step 5 over all survivors, data-parallel, results in survivor order.
  std::vector<CandidatePolynomial> survivors;
  for (const auto& c : ck.cells)
    for (const auto& a : c.survivors) survivors.push_back(CandidatePolynomial{a, c.id});
  const Signature sig = spec.signature();
  const VerifyOptions vopts{spec.trial_limit, spec.sieve_primes};
  std::vector<VerifyOutcome> outcomes(survivors.size());
  {
    std::atomic<std::size_t> vi{0};
    std::exception_ptr verror;
    std::mutex vm;
    auto vworker = [&] {
      try {
        for (std::size_t i = vi.fetch_add(1); i < survivors.size(); i = vi.fetch_add(1))
          outcomes[i] = verify_candidate(survivors[i], sig, spec.disc_bound, vopts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(vm);
        if (!verror) verror = std::current_exception();
      }
    };
    std::vector<std::thread> vpool;
    for (int t = 1; t < spec.workers; ++t) vpool.emplace_back(vworker);
    vworker();
    for (auto& t : vpool) t.join();
    if (verror) std::rethrow_exception(verror);
  }
  for (int s = 0; s <= static_cast<int>(VerifyStatus::unresolved); ++s)
    rep.verify_counts[to_string(static_cast<VerifyStatus>(s))] = 0;
  for (const auto& c : ck.cells) rep.verify_counts[to_string(VerifyStatus::t2_exceeds)] += c.t2_rejected;
  for (auto& o : outcomes) {
    ++rep.verify_counts[to_string(o.status)];
    if (o.status == VerifyStatus::accepted) rep.accepted.push_back(std::move(o.record));
    else if (o.status == VerifyStatus::unresolved) rep.unresolved.push_back(std::move(o.record));
  }
  std::sort(rep.accepted.begin(), rep.accepted.end(), record_less);
  std::sort(rep.unresolved.begin(), rep.unresolved.end(), record_less);
  rep.groups = dedup(rep.accepted);
  if (!rep.accepted.empty()) rep.min_abs_disc = abs(rep.accepted.front().field_disc);
  rep.table = format_table(rep.accepted, rep.unresolved, rep.groups);

  std::size_t classes = 0;
  for (const auto& g : rep.groups) classes += g.classes.size();
  std::ostringstream st;
  st << "# cells: " << rep.cells_total << '\n';
  st << "# generated: " << rep.counters.generated << '\n';
  st << "# discarded_step3: " << rep.counters.discarded() << '\n';
  for (std::size_t i = 0; i < kFilterConditions; ++i)
    st << "#   " << to_string(static_cast<FilterCondition>(i)) << ": " << rep.counters.failed[i] << '\n';
  st << "# passed_to_verify: " << rep.counters.passed << '\n';
  for (const auto& [name, count] : rep.verify_counts) st << "#   " << name << ": " << count << '\n';
  st << "# field_discriminants: " << rep.groups.size() << '\n';
  st << "# canonical_classes: " << classes << '\n';
  st << "# minimum_abs_field_disc: " << (rep.min_abs_disc ? rep.min_abs_disc->get_str() : std::string("none"))
     << '\n';
  rep.statistics = st.str();

  std::ostringstream txt;
  txt << "# degree " << spec.degree << " signature (" << spec.r1 << "," << spec.r2 << ") |d| <= " << spec.disc_bound
      << '\n';
  txt << "# spec_hash " << hash << '\n';
  txt << "# a1,...,an; poly_disc; field_disc; r1,r2; flags\n";
  txt << rep.table << rep.statistics;
  write_file_atomic(spec.output_path + ".txt", txt.str());

  nlohmann::json j;
  j["spec_hash"] = hash;
  j["degree"] = spec.degree;
  j["signature"] = {spec.r1, spec.r2};
  j["disc_bound"] = spec.disc_bound.get_str();
  auto rec_json = [](const FieldRecord& r) {
    nlohmann::json jr;
    std::vector<std::string> a;
    for (const auto& c : r.poly.coeffs) a.push_back(c.get_str());
    jr["coeffs"] = a;
    jr["cell"] = r.poly.cell_id;
    jr["poly_disc"] = r.poly_disc.get_str();
    jr["field_disc"] = r.field_disc.get_str();
    jr["index2"] = r.index2.get_str();
    jr["signature"] = {r.r1, r.r2};
    jr["resolved"] = r.resolved;
    jr["field_disc_abs_range"] = {r.field_disc_abs_lower.get_str(), r.field_disc_abs_upper.get_str()};
    jr["canonical"] = r.canonical;
    return jr;
  };
  nlohmann::json acc = nlohmann::json::array(), unr = nlohmann::json::array(), grp = nlohmann::json::array();
  for (const auto& r : rep.accepted) acc.push_back(rec_json(r));
  for (const auto& r : rep.unresolved) unr.push_back(rec_json(r));
  for (const auto& g : rep.groups) {
    nlohmann::json jg;
    jg["field_disc"] = g.field_disc.get_str();
    for (const auto& cl : g.classes) jg["classes"].push_back({{"canonical", cl.canonical}, {"members", cl.members}});
    grp.push_back(jg);
  }
  j["accepted"] = acc;
  j["unresolved"] = unr;
  j["groups"] = grp;
  nlohmann::json stats;
  stats["cells"] = rep.cells_total;
  stats["generated"] = rep.counters.generated;
  stats["passed_to_verify"] = rep.counters.passed;
  for (std::size_t i = 0; i < kFilterConditions; ++i)
    stats["discarded"][to_string(static_cast<FilterCondition>(i))] = rep.counters.failed[i];
  stats["verify"] = rep.verify_counts;
  j["statistics"] = stats;
  j["minimum_abs_field_disc"] = rep.min_abs_disc ? rep.min_abs_disc->get_str() : std::string();
  write_file_atomic(spec.output_path + ".json", j.dump(1) + "\n");

  std::ostringstream gp, cand;
  gp << "\\\\ Step-3 survivors, degree " << spec.degree << ", |d| <= " << spec.disc_bound << "\nsurvivors = [";
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    gp << (i ? ",\n  " : "\n  ") << to_gp(survivors[i].coeffs);
    cand << format_candidate(survivors[i].coeffs, survivors[i].cell_id) << '\n';
  }
  gp << "\n];\n";
  write_file_atomic(spec.output_path + ".gp", gp.str());
  write_file_atomic(spec.output_path + ".candidates", cand.str());
  logln(opts, "completed: " + std::to_string(rep.accepted.size()) + " accepted polynomials, " +
                  std::to_string(rep.groups.size()) + " field discriminants");
  return rep;
}

CandidatePolynomial parse_polynomial_line(const std::string& line) {
  std::vector<std::string> tok;
  std::stringstream ss(line);
  std::string t;
  while (std::getline(ss, t, ',')) {
    const auto b = t.find_first_not_of(" \t\r");
    const auto e = t.find_last_not_of(" \t\r");
    tok.push_back(b == std::string::npos ? std::string() : t.substr(b, e - b + 1));
  }
  auto numeric = [](const std::string& s) {
    if (s.empty()) return false;
    const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    return start < s.size() && s.find_first_not_of("0123456789", start) == std::string::npos;
  };
  CandidatePolynomial cand;
  std::size_t lo = 0, hi = tok.size();
  if (!tok.empty() && !numeric(tok.back())) {
    // n,a1,...,an,cellid
    cand.cell_id = tok.back();
    if (tok.size() < 3) throw ConfigError("malformed candidate line: " + line);
    lo = 1;
    hi = tok.size() - 1;
  }
  for (std::size_t i = lo; i < hi; ++i) {
    if (!numeric(tok[i])) throw ConfigError("malformed polynomial line: " + line);
    cand.coeffs.push_back(parse_integer(tok[i][0] == '+' ? tok[i].substr(1) : tok[i]));
  }
  if (lo == 1 && std::to_string(cand.coeffs.size()) != tok[0])
    throw ConfigError("degree field does not match coefficient count: " + line);
  if (cand.coeffs.empty()) throw ConfigError("empty polynomial line");
  return cand;
}

StandaloneResult verify_standalone(const CandidatePolynomial& cand, const std::optional<VerifyTarget>& target,
                                   const VerifyOptions& opts) {
  StandaloneResult out;
  FieldRecord& rec = out.record;
  rec.poly = cand;
  const ZPoly p = cand.poly();
  rec.poly_disc = poly_discriminant(p);
  out.squarefree = rec.poly_disc != 0;
  out.irreducible = cand.coeffs.back() != 0 && is_irreducible(p, IrreducibilityOptions{opts.sieve_primes});
  if (out.squarefree) {
    const RootSignature rs = signature(p, rec.poly_disc);
    rec.r1 = rs.r1;
    rec.r2 = rs.r2;
  }
  if (out.squarefree && out.irreducible) {
    const FieldDiscriminant fd = field_discriminant(p, rec.poly_disc, opts.trial_limit);
    rec.field_disc = fd.field_disc;
    rec.index2 = fd.index2;
    rec.resolved = fd.resolved;
    rec.field_disc_abs_lower = fd.abs_lower;
    rec.field_disc_abs_upper = fd.abs_upper;
  }
  if (target) out.status = verify_candidate(cand, target->sig, target->disc_bound, opts).status;
  return out;
}

}  // namespace nfsearch
