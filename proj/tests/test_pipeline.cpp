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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "nfsearch/pipeline.hpp"
#include "oracles.hpp"

using namespace nfsearch;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nfsearch_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SearchSpec spec_for(int n, int r1, int r2, long bound, const fs::path& dir, std::vector<std::string> extra = {}) {
  std::ostringstream os;
  os << "degree=" << n << "\nr1=" << r1 << "\nr2=" << r2 << "\ndisc_bound=" << bound
     << "\noutput_path=" << (dir / "out").string() << '\n';
  return parse_spec(os.str(), extra);
}

std::set<Integer> discs(const RunReport& r) {
  std::set<Integer> s;
  for (const auto& g : r.groups) s.insert(g.field_disc);
  return s;
}

std::set<Integer> keys(const std::map<Integer, std::vector<Integer>>& m) {
  std::set<Integer> s;
  for (const auto& [k, v] : m) s.insert(k);
  return s;
}

void check_conservation(const RunReport& r) {
  CHECK(r.counters.generated == r.counters.discarded() + r.counters.passed);
  std::uint64_t verified = 0;
  for (const auto& [k, v] : r.verify_counts) verified += v;
  CHECK(verified == r.counters.passed);
  CHECK(r.verify_counts.at("accepted") == r.accepted.size());
  CHECK(r.verify_counts.at("unresolved") == r.unresolved.size());
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const SearchSpec s = parse_spec("# comment\ndegree = 8\nr1=2\nr2 = 3\ndisc_bound=5726300\n");
  CHECK(s.degree == 8);
  CHECK(s.excluded_norms == std::vector<long>{2, 3, 4, 5});
  CHECK(s.eval_range == std::vector<int>{2, 3, 4, 5});
  CHECK(s.s1_values == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(s.parity_values == std::vector<int>{0, 1});
  CHECK(s.sign_values == std::vector<int>{-1, 1});
  CHECK(s.t2_filter);
  CHECK(s.signature().r2 == 3);
  CHECK(s.effective_checkpoint_path() == "nfsearch_out.ckpt.json");

  const SearchSpec cubic = parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=50\n");
  CHECK(cubic.excluded_norms.empty());
  CHECK(cubic.s1_values == std::vector<int>{0, 1});
  CHECK(cubic.eval_range.empty());

  CHECK_THROWS_AS(parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=50\ncolour=blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3\nr1=3\nr2=1\ndisc_bound=50\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=0\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=50\ns1_values=2\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=50\nparity_values=2\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=50\nexcluded_norms=6\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=12\nr1=12\nr2=0\ndisc_bound=50\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3\nr1=1\nr2=1\n"), ConfigError);
  CHECK_THROWS_AS(parse_spec("degree=3 r1=1\n"), ConfigError);
  CHECK_THROWS_AS(load_spec("/nonexistent/spec.cfg"), ConfigError);

  // overrides win over the file
  const SearchSpec o = parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=50\n", {"disc_bound=23", "workers=3"});
  CHECK(o.disc_bound == 23);
  CHECK(o.workers == 3);
}

TEST_CASE("spec hash covers exactly the search-relevant keys") {
  const std::string base = "degree=3\nr1=1\nr2=1\ndisc_bound=50\n";
  const std::string h = spec_hash(parse_spec(base));
  CHECK(h.size() == 16);
  CHECK(spec_hash(parse_spec("# reordered\nr2=1\n  degree =3\ndisc_bound= 50\nr1=1\n")) == h);
  CHECK(spec_hash(parse_spec(base, {"workers=4", "output_path=elsewhere", "checkpoint_interval=5"})) == h);
  CHECK(spec_hash(parse_spec(base, {"disc_bound=51"})) != h);
  CHECK(spec_hash(parse_spec(base, {"parity_values=0"})) != h);
  CHECK(spec_hash(parse_spec(base, {"t2_filter=false"})) != h);
  // canonical text round-trips
  const SearchSpec s = parse_spec(base, {"excluded_norms=7", "eval_range=2,3"});
  CHECK(spec_hash(parse_spec(to_config_text(s))) == spec_hash(s));
}

TEST_CASE("provably excluded norms") {
  const auto auto8 = provable_excluded_norms(Signature::make(8, 2, 3), Integer(5726300), 10);
  CHECK(auto8 == std::vector<long>{2, 3, 4, 5});
  const SearchSpec s = parse_spec("degree=8\nr1=2\nr2=3\ndisc_bound=5726300\nexcluded_norms=auto\n");
  CHECK(s.excluded_norms_auto);
  CHECK(std::find(s.excluded_norms.begin(), s.excluded_norms.end(), 7) == s.excluded_norms.end());
  // a larger bound drops the norm-5 exclusion
  const auto wider = provable_excluded_norms(Signature::make(8, 2, 3), Integer(5800000), 10);
  CHECK(wider == std::vector<long>{2, 3, 4});
}

TEST_CASE("plan for the degree-3 bound-23 search matches a hand listing") {
  const SearchSpec s = parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=23\n");
  std::set<std::string> ids;
  for (const auto& c : plan_cells(s)) ids.insert(c.id());
  const std::set<std::string> expected{"s0:a1:c0", "s0:a1:c1", "s0:a-1:c0", "s0:a-1:c1",
                                       "s1:a1:c0", "s1:a1:c1", "s1:a-1:c0", "s1:a-1:c1"};
  CHECK(ids == expected);
  const auto cells = plan_cells(s);
  for (std::size_t i = 1; i < cells.size(); ++i) CHECK(estimate_cell_cost(cells[i - 1]) >= estimate_cell_cost(cells[i]));
  CHECK(format_plan(cells).find("s0:a1:c0, 0, 1, 0") != std::string::npos);
  CHECK_THROWS_AS(plan_cells(parse_spec("degree=3\nr1=1\nr2=1\ndisc_bound=1\n")), ConfigError);
}

TEST_CASE("plan drops inadmissible norms") {
  const SearchSpec s = parse_spec("degree=8\nr1=2\nr2=3\ndisc_bound=5726300\ns1_values=4\nparity_values=0\n");
  std::set<long> Ns;
  for (const auto& c : plan_cells(s)) {
    Ns.insert(c.N);
    CHECK(static_cast<double>(c.N) <= norm_cap(8, c.bounds.T));
  }
  CHECK(Ns == std::set<long>{1, 7, 8, 9});
  const SearchSpec one = parse_spec(
      "degree=8\nr1=2\nr2=3\ndisc_bound=5726300\ns1_values=0\na_n_max=1\nsign_values=-1\nparity_values=1\n");
  const auto cells = plan_cells(one);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].id() == "s0:a-1:c1");
}

TEST_CASE("plan counting with a small norm cap") {
  const SearchSpec s = parse_spec(
      "degree=8\nr1=2\nr2=3\ndisc_bound=2000000\ns1_values=0\nparity_values=0\nexcluded_norms=2\n");
  const auto cells = plan_cells(s);
  REQUIRE_FALSE(cells.empty());
  const double cap = norm_cap(8, cells[0].bounds.T);
  REQUIRE(cap >= 3.0);
  REQUIRE(cap < 4.0);
  // N in {1, 2, 3}; N = 2 has v_2 = 1 and is excluded
  std::multiset<std::pair<long, int>> got;
  for (const auto& c : cells) got.insert({c.N, c.sign});
  CHECK(got == std::multiset<std::pair<long, int>>{{1, -1}, {1, 1}, {3, -1}, {3, 1}});
  CHECK(cells.size() <= 6);
}

TEST_CASE("bounds table") {
  const Signature sig = Signature::make(8, 2, 3);
  const auto rows = bounds_table(sig, {2, 3, 4, 5, 7});
  REQUIRE(rows.size() == 5);
  const double expected[] = {11725962, 8336752, 6688609, 5726300, 4682934};
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(rows[i].eval.implied_bound / expected[i] - 1) < 0.01);
  const auto none = bounds_table(sig, {});
  REQUIRE(none.size() == 1);
  CHECK_FALSE(none[0].norm.has_value());
  const std::string text = format_bounds_table(rows);
  CHECK(text.find("\n5, ") != std::string::npos);
  const double real = bounds_table(Signature::make(8, 8, 0), {})[0].eval.implied_bound;
  const double imag = bounds_table(Signature::make(8, 0, 4), {})[0].eval.implied_bound;
  CHECK(real != imag);
}

TEST_CASE("cubic (1,1) up to 50 agrees with the coefficient-box oracle") {
  const fs::path dir = scratch("cubic");
  const SearchSpec s = spec_for(3, 1, 1, 50, dir);
  RunOptions o;
  o.fresh = true;
  const RunReport r = run_search(s, o);
  REQUIRE(r.completed);
  CHECK(r.exit_code() == kExitOk);
  const auto box = oracle::coefficient_box_fields(s.signature(), Integer(50), 8);
  CHECK(keys(box) == std::set<Integer>{-23, -31, -44});
  CHECK(discs(r) == keys(box));
  REQUIRE(r.min_abs_disc);
  CHECK(*r.min_abs_disc == 23);
  check_conservation(r);
  for (const auto& rec : r.accepted) CHECK(accept(rec, s.signature(), s.disc_bound));
  for (const char* ext : {".txt", ".json", ".gp", ".candidates"}) CHECK(fs::exists(dir / (std::string("out") + ext)));
  const auto j = nlohmann::json::parse(slurp(dir / "out.json"));
  CHECK(j["spec_hash"] == spec_hash(s));
  // filters off and T2 check off still reach the same fields
  const RunReport raw = run_search(spec_for(3, 1, 1, 50, scratch("cubic_raw"), {"filters=false", "t2_filter=false"}), o);
  CHECK(discs(raw) == keys(box));
  CHECK(raw.counters.generated == r.counters.generated);
  CHECK(raw.counters.discarded() == 0);
}

TEST_CASE("totally real cubics up to 300") {
  const RunReport r = run_search(spec_for(3, 3, 0, 300, scratch("real3")), RunOptions{false, true});
  CHECK(discs(r) == std::set<Integer>{49, 81, 148, 169, 229, 257});
  const auto box = oracle::coefficient_box_fields(Signature::make(3, 3, 0), Integer(300), 7);
  CHECK(discs(r) == keys(box));
}

TEST_CASE("quartic (2,1) up to 300 has minimum 275") {
  const fs::path dir = scratch("quartic");
  const SearchSpec s = spec_for(4, 2, 1, 300, dir);
  const RunReport r = run_search(s, RunOptions{false, true});
  REQUIRE(r.completed);
  REQUIRE(r.min_abs_disc);
  CHECK(*r.min_abs_disc == 275);
  const auto box = oracle::coefficient_box_fields(s.signature(), Integer(300), 5);
  CHECK(keys(box).count(Integer(-275)) == 1);
  CHECK(discs(r) == keys(box));
  check_conservation(r);
}

TEST_CASE("worker count does not change the result") {
  const SearchSpec a = spec_for(4, 0, 2, 400, scratch("w1"));
  const SearchSpec b = spec_for(4, 0, 2, 400, scratch("w2"), {"workers=2"});
  const RunReport ra = run_search(a, RunOptions{false, true});
  const RunReport rb = run_search(b, RunOptions{false, true});
  CHECK(ra.table == rb.table);
  CHECK(ra.statistics == rb.statistics);
  CHECK(discs(ra).count(Integer(117)) == 1);  // smallest totally complex quartic
}

TEST_CASE("randomized kill and resume gives a byte-identical table") {
  const fs::path ref_dir = scratch("resume_ref");
  const SearchSpec ref = spec_for(5, 1, 2, 2000, ref_dir);
  const RunReport full = run_search(ref, RunOptions{false, true});
  REQUIRE(full.completed);
  const std::string want = slurp(ref_dir / "out.txt");
  CHECK(discs(full).count(Integer(1609)) == 1);

  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 4; ++trial) {
    const fs::path dir = scratch("resume_" + std::to_string(trial));
    const SearchSpec s = spec_for(5, 1, 2, 2000, dir, {"checkpoint_interval=" + std::to_string(50 + rng() % 500)});
    int interruptions = 0;
    RunOptions first;
    first.fresh = true;
    first.stop_after = 1 + rng() % std::max<std::uint64_t>(1, full.counters.generated / 2);
    RunReport r = run_search(s, first);
    while (!r.completed) {
      ++interruptions;
      CHECK(r.exit_code() == kExitInterrupted);
      REQUIRE(interruptions < 1000);
      RunOptions next;
      next.resume_only = true;
      next.stop_after = 1 + rng() % std::max<std::uint64_t>(1, full.counters.generated / 3);
      r = run_search(s, next);
    }
    CHECK(interruptions > 0);
    CHECK(slurp(dir / "out.txt") == want);
    CHECK(r.counters.generated == full.counters.generated);
  }
}

TEST_CASE("checkpoint guards") {
  const fs::path dir = scratch("guards");
  const SearchSpec s = spec_for(3, 1, 1, 50, dir);
  RunOptions resume;
  resume.resume_only = true;
  CHECK_THROWS_AS(run_search(s, resume), ConfigError);
  RunOptions stop;
  stop.fresh = true;
  stop.stop_after = 1;
  const RunReport partial = run_search(s, stop);
  CHECK_FALSE(partial.completed);
  // same checkpoint path, different search
  const SearchSpec other = spec_for(3, 1, 1, 60, dir);
  CHECK_THROWS_AS(run_search(other, RunOptions{}), ConfigError);
  // a fresh run ignores the stale checkpoint
  CHECK(run_search(other, RunOptions{false, true}).completed);
}

TEST_CASE("checkpoint JSON round trip") {
  Checkpoint ck;
  ck.spec_hash = "0123456789abcdef";
  ck.spec_text = "degree=3\n";
  CellProgress c;
  c.id = "s0:a1:c0";
  c.state = CellState::in_progress;
  c.resume = ResumePoint{{Integer(0), Integer("-123456789012345678901234567890"), Integer(1)}, true};
  c.counters.generated = 17;
  c.counters.passed = 5;
  c.counters.failed[2] = 12;
  c.t2_rejected = 3;
  c.survivors = {{Integer(0), Integer(-1), Integer(1)}};
  ck.cells.push_back(c);
  const Checkpoint back = checkpoint_from_json(checkpoint_to_json(ck));
  REQUIRE(back.cells.size() == 1);
  CHECK(back.spec_hash == ck.spec_hash);
  CHECK(back.cells[0].resume->a == c.resume->a);
  CHECK(back.cells[0].resume->skip_current);
  CHECK(back.cells[0].counters.failed == c.counters.failed);
  CHECK(back.cells[0].t2_rejected == 3);
  CHECK(back.cells[0].survivors == c.survivors);
  CHECK_FALSE(back.complete());
  CHECK_THROWS(checkpoint_from_json("{not json"));
  const fs::path dir = scratch("ckpt");
  save_checkpoint((dir / "c.json").string(), ck);
  CHECK(load_checkpoint((dir / "c.json").string())->cells.size() == 1);
  CHECK_FALSE(load_checkpoint((dir / "missing.json").string()).has_value());
}

TEST_CASE("standalone verification input") {
  const auto a = parse_polynomial_line("0,-1,-1");
  CHECK(a.coeffs == std::vector<Integer>{0, -1, -1});
  const auto b = parse_polynomial_line("3,0,-1,-1,s0:a-1:c1");
  CHECK(b.coeffs == a.coeffs);
  CHECK(b.cell_id == "s0:a-1:c1");
  CHECK_THROWS(parse_polynomial_line(""));
  CHECK_THROWS(parse_polynomial_line("1,,2"));
  CHECK_THROWS(parse_polynomial_line("x,y"));
  const auto r = verify_standalone(a, VerifyTarget{Signature::make(3, 1, 1), Integer(23)});
  CHECK(r.irreducible);
  CHECK(r.squarefree);
  REQUIRE(r.status);
  CHECK(*r.status == VerifyStatus::accepted);
  CHECK(r.record.field_disc == -23);
  CHECK(to_gp({Integer(0), Integer(-1), Integer(-1)}) == "x^3 - x - 1");
}
