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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfsearch/explicit_bounds.hpp"
#include "nfsearch/integer.hpp"

namespace nfsearch {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Root configuration. Text keys are the field names below.
struct SearchSpec {
  int degree = 0;
  int r1 = -1;
  int r2 = -1;
  Integer disc_bound = 0;
  std::vector<long> excluded_norms;
  bool excluded_norms_set = false;   // false: default rule in finalize_spec
  bool excluded_norms_auto = false;  // value "auto": provable_excluded_norms
  std::vector<int> eval_range;
  std::vector<int> s1_values;
  std::optional<long> a_n_max;
  std::vector<int> parity_values{0, 1};
  std::vector<int> sign_values{-1, 1};  // signs of a_n
  int workers = 1;
  std::uint64_t checkpoint_interval = 10000000;  // candidates per cell between checkpoint writes
  std::string output_path = "nfsearch_out";
  std::string checkpoint_path;  // empty: output_path + ".ckpt.json"

  bool filters = true;    // Step-3 battery; off only for completeness testing
  bool t2_filter = true;  // drop Step-3 survivors whose roots break the Hunter T2 bound
  std::uint64_t trial_limit = 1000000;
  int sieve_primes = 5;

  Signature signature() const { return Signature::make(degree, r1, r2); }
  std::string effective_checkpoint_path() const;
};

/// Parses `key = value` lines ('#' starts a comment) and then `key=value` overrides, fills
/// defaults and validates. Throws ConfigError.
SearchSpec parse_spec(const std::string& text, const std::vector<std::string>& overrides = {});
SearchSpec load_spec(const std::string& path, const std::vector<std::string>& overrides = {});

/// Applies one `key=value` assignment; unknown keys throw ConfigError.
void apply_setting(SearchSpec& spec, const std::string& key, const std::string& value);

/// Fills unset lists with their defaults and checks every invariant. Throws ConfigError.
void finalize_spec(SearchSpec& spec);

/// Prime powers q >= 2 whose implied lower bound on |d_K| exceeds disc_bound, up to max_norm.
std::vector<long> provable_excluded_norms(const Signature& sig, const Integer& disc_bound, long max_norm = 64);

/// Canonical text form (search-relevant keys only: no paths, workers or intervals).
std::string canonical_text(const SearchSpec& spec);

/// Every key with its value, in file syntax.
std::string to_config_text(const SearchSpec& spec);

/// FNV-1a 64 of canonical_text, as 16 hex digits.
std::string spec_hash(const SearchSpec& spec);

}  // namespace nfsearch
