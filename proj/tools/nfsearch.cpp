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

// nfsearch command-line front end: bounds, plan, run, verify, resume.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nfsearch/pipeline.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

const std::vector<std::string> kSpecKeys = {
    "degree",        "r1",      "r2",         "disc_bound",          "excluded_norms", "eval_range",
    "s1_values",     "a_n_max", "sign_values", "parity_values", "workers",          "checkpoint_interval",
    "output_path",   "checkpoint_path", "filters", "t2_filter", "trial_limit",    "sieve_primes"};

// Config file, then NFSEARCH_WORKERS, then --set and per-key flags in command-line order.
struct SpecArgs {
  std::string config;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::string>> flags;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config, "key = value configuration file");
    app->add_option("--set", sets, "override key=value (repeatable)");
    for (const auto& key : kSpecKeys) {
      app->add_option_function<std::string>(
          "--" + key, [this, key](const std::string& v) { flags.emplace_back(key, v); }, "SearchSpec " + key);
    }
  }

  std::vector<std::string> overrides() const {
    std::vector<std::string> out;
    if (const char* w = std::getenv("NFSEARCH_WORKERS")) out.push_back(std::string("workers=") + w);
    out.insert(out.end(), sets.begin(), sets.end());
    for (const auto& [k, v] : flags) out.push_back(k + "=" + v);
    return out;
  }

  std::string text() const {
    if (config.empty()) return {};
    std::ifstream in(config);
    if (!in) throw nfsearch::ConfigError("cannot read config file " + config);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  nfsearch::SearchSpec spec() const { return nfsearch::parse_spec(text(), overrides()); }

  // Signature-only view for subcommands that need no bound.
  nfsearch::Signature signature() const {
    nfsearch::SearchSpec s;
    std::istringstream in(text());
    std::string line;
    while (std::getline(in, line)) {
      if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
      const auto eq = line.find('=');
      if (eq != std::string::npos) nfsearch::apply_setting(s, line.substr(0, eq), line.substr(eq + 1));
    }
    for (const auto& o : overrides()) {
      const auto eq = o.find('=');
      if (eq != std::string::npos) nfsearch::apply_setting(s, o.substr(0, eq), o.substr(eq + 1));
    }
    if (s.r1 < 0 && s.r2 >= 0) s.r1 = s.degree - 2 * s.r2;
    if (s.r2 < 0 && s.r1 >= 0) s.r2 = (s.degree - s.r1) / 2;
    try {
      return nfsearch::Signature::make(s.degree, s.r1, s.r2);
    } catch (const std::exception& e) {
      throw nfsearch::ConfigError(e.what());
    }
  }
};

int print_run(const nfsearch::RunReport& rep) {
  if (!rep.completed) {
    std::cerr << "interrupted: " << rep.cells_done << "/" << rep.cells_total << " cells complete\n";
    return rep.exit_code();
  }
  std::cout << rep.table << rep.statistics;
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate number fields of given degree and signature with bounded discriminant"};
  app.require_subcommand(1);

  SpecArgs bounds_args, plan_args, run_args, resume_args, verify_args;

  auto* bounds = app.add_subcommand("bounds", "lower bounds for |d_K| with local corrections");
  bounds_args.attach(bounds);
  std::vector<long> norms;
  double y_lo = 1e-3, y_hi = 10.0;
  int k_cutoff = nfsearch::kDefaultKCutoff;
  bounds->add_option("--norms", norms, "prime-ideal norms, one row each")->delimiter(',');
  bounds->add_option("--y_lo", y_lo, "lower end of the y search window");
  bounds->add_option("--y_hi", y_hi, "upper end of the y search window");
  bounds->add_option("--k_cutoff", k_cutoff, "truncation index of the L1 sums");

  auto* plan = app.add_subcommand("plan", "list the enumeration cells");
  plan_args.attach(plan);

  auto* run = app.add_subcommand("run", "full search (resumes from a matching checkpoint)");
  run_args.attach(run);
  bool fresh = false;
  std::uint64_t stop_after = 0;
  run->add_flag("--fresh", fresh, "ignore an existing checkpoint");
  run->add_option("--stop_after", stop_after, "stop after this many examined candidates (testing)");

  auto* resume = app.add_subcommand("resume", "continue an interrupted search");
  resume_args.attach(resume);
  std::uint64_t resume_stop_after = 0;
  resume->add_option("--stop_after", resume_stop_after, "stop after this many examined candidates (testing)");

  auto* verify = app.add_subcommand("verify", "Step-5 checks on a file of polynomials");
  verify_args.attach(verify);
  std::string input;
  verify->add_option("input", input, "one polynomial per line: a1,...,an or n,a1,...,an,cell")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? nfsearch::kExitOk : nfsearch::kExitConfig;
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  try {
    if (*bounds) {
      const auto rows = nfsearch::bounds_table(bounds_args.signature(), norms, {y_lo, y_hi}, k_cutoff);
      std::cout << "# norm, y_opt, rhs, implied_bound\n" << nfsearch::format_bounds_table(rows);
      return nfsearch::kExitOk;
    }
    if (*plan) {
      const auto spec = plan_args.spec();
      const auto cells = nfsearch::plan_cells(spec);
      std::cout << "# " << cells.size() << " cells; id, s1, a_n, c, T, cost\n" << nfsearch::format_plan(cells);
      return nfsearch::kExitOk;
    }
    if (*run || *resume) {
      const bool is_resume = resume->parsed();
      const auto spec = (is_resume ? resume_args : run_args).spec();
      nfsearch::RunOptions opts;
      opts.fresh = fresh && !is_resume;
      opts.resume_only = is_resume;
      const std::uint64_t limit = is_resume ? resume_stop_after : stop_after;
      if (limit > 0) opts.stop_after = limit;
      opts.external_stop = &g_interrupted;
      opts.log = &std::cerr;
      return print_run(nfsearch::run_search(spec, opts));
    }
    if (*verify) {
      std::optional<nfsearch::VerifyTarget> target;
      nfsearch::VerifyOptions vopts;
      try {
        const auto spec = verify_args.spec();
        target = nfsearch::VerifyTarget{spec.signature(), spec.disc_bound};
        vopts = {spec.trial_limit, spec.sieve_primes};
      } catch (const nfsearch::ConfigError&) {
        // No complete search spec: report the invariants only.
      }
      std::ifstream in(input);
      if (!in) {
        std::cerr << "cannot read " << input << '\n';
        return nfsearch::kExitIo;
      }
      std::string line;
      while (std::getline(in, line)) {
        if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto res = nfsearch::verify_standalone(nfsearch::parse_polynomial_line(line), target, vopts);
        std::vector<std::string> flags;
        if (!res.squarefree) flags.emplace_back("not_squarefree");
        if (!res.irreducible) flags.emplace_back("reducible");
        if (res.status) flags.emplace_back(std::string("status=") + nfsearch::to_string(*res.status));
        std::cout << nfsearch::format_record(res.record, flags) << '\n';
      }
      return nfsearch::kExitOk;
    }
  } catch (const nfsearch::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return nfsearch::kExitConfig;
  } catch (const nfsearch::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return nfsearch::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return nfsearch::kExitInternal;
  }
  return nfsearch::kExitInternal;
}
