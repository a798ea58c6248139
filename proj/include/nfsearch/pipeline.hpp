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

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nfsearch/checkpoint.hpp"
#include "nfsearch/config.hpp"
#include "nfsearch/enumerate.hpp"
#include "nfsearch/explicit_bounds.hpp"
#include "nfsearch/reduce.hpp"
#include "nfsearch/verify.hpp"

namespace nfsearch {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitInterrupted = 3,
  kExitIo = 4,
};

/// Crude relative work estimate of a cell: product over the free levels of the box widths.
double estimate_cell_cost(const EnumCell& cell);

/// One cell per (s1, N admissible, sign, c), most expensive first (ties in plan order).
/// Throws ConfigError when no N fits under (T/n)^(n/2) for any requested trace.
std::vector<EnumCell> plan_cells(const SearchSpec& spec);

/// `id, s1, a_n, c, T, cost`
std::string format_plan(const std::vector<EnumCell>& cells);

struct BoundsRow {
  std::optional<long> norm;  // nullopt: no local term
  BoundEvaluation eval;
};

/// One row per norm (each on its own); the empty list gives the unconditional bound.
std::vector<BoundsRow> bounds_table(const Signature& sig, const std::vector<long>& norms, YRange range = {},
                                    int k_cutoff = kDefaultKCutoff);

/// `norm, y_opt, rhs, implied_bound` per row; implied_bound rounded down.
std::string format_bounds_table(const std::vector<BoundsRow>& rows);

struct RunOptions {
  bool resume_only = false;                 // fail unless a checkpoint exists
  bool fresh = false;                       // ignore any existing checkpoint
  std::optional<std::uint64_t> stop_after;  // simulated interruption after this many examined candidates
  std::atomic<bool>* external_stop = nullptr;
  std::ostream* log = nullptr;
};

struct RunReport {
  bool completed = false;
  std::size_t cells_total = 0;
  std::size_t cells_done = 0;
  EnumCounters counters;
  std::map<std::string, std::uint64_t> verify_counts;  // by VerifyStatus name
  std::vector<FieldRecord> accepted;                   // sorted by (|field_disc|, field_disc, coefficients)
  std::vector<FieldRecord> unresolved;
  std::vector<DedupGroup> groups;
  std::optional<Integer> min_abs_disc;
  std::string table;       // survivor table lines
  std::string statistics;  // statistics block lines

  int exit_code() const { return completed ? kExitOk : kExitInterrupted; }
};

/// Plans, enumerates (resuming from the checkpoint when present), verifies, dedups and writes
/// <output_path>.txt, .json, .gp and .candidates. Throws ConfigError or IoError.
RunReport run_search(const SearchSpec& spec, const RunOptions& opts = {});

/// Table line for a record plus dedup flags.
std::string format_table(const std::vector<FieldRecord>& accepted, const std::vector<FieldRecord>& unresolved,
                         const std::vector<DedupGroup>& groups);

/// gp syntax, e.g. x^3 - x^2 - 2*x - 8.
std::string to_gp(const std::vector<Integer>& a);

struct StandaloneResult {
  FieldRecord record;
  bool irreducible = false;
  bool squarefree = false;
  std::optional<VerifyStatus> status;  // set when a target signature and bound were given
};

struct VerifyTarget {
  Signature sig;
  Integer disc_bound;
};

/// Parses `a1,...,an` or a candidate-stream line `n,a1,...,an,cellid`. Throws ConfigError.
CandidatePolynomial parse_polynomial_line(const std::string& line);

/// Step-5 computations on one polynomial, independent of any search.
StandaloneResult verify_standalone(const CandidatePolynomial& cand, const std::optional<VerifyTarget>& target,
                                   const VerifyOptions& opts = {});

}  // namespace nfsearch
