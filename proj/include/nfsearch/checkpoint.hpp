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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfsearch/enumerate.hpp"
#include "nfsearch/integer.hpp"

namespace nfsearch {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CellState { pending, in_progress, done };
const char* to_string(CellState s);

struct CellProgress {
  std::string id;
  CellState state = CellState::pending;
  std::optional<ResumePoint> resume;  // in_progress only
  EnumCounters counters;
  bool used_bigint = false;
  std::uint64_t t2_rejected = 0;                // survivors dropped by the T2 pre-check
  std::vector<std::vector<Integer>> survivors;  // Step-3 survivors so far, a_1..a_n
};

struct Checkpoint {
  std::string spec_hash;
  std::string spec_text;
  std::vector<CellProgress> cells;  // plan order

  bool complete() const;
  CellProgress* find(const std::string& id);
};

std::string checkpoint_to_json(const Checkpoint& ckpt);
/// Throws IoError on malformed input.
Checkpoint checkpoint_from_json(const std::string& text);

/// Writes path.tmp, then renames over path. Throws IoError.
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
/// nullopt when the file does not exist; IoError when it exists but cannot be parsed.
std::optional<Checkpoint> load_checkpoint(const std::string& path);

/// Atomic whole-file write used for every output artifact. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace nfsearch
