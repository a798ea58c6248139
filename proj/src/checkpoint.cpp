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

#include "nfsearch/checkpoint.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nfsearch {

namespace {

using nlohmann::json;

json vec_to_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::vector<Integer> vec_from_json(const json& a) {
  std::vector<Integer> v;
  for (const auto& x : a) v.push_back(parse_integer(x.get<std::string>()));
  return v;
}

CellState state_from_string(const std::string& s) {
  if (s == "pending") return CellState::pending;
  if (s == "in_progress") return CellState::in_progress;
  if (s == "done") return CellState::done;
  throw IoError("unknown cell state '" + s + "'");
}

}  // namespace

const char* to_string(CellState s) {
  switch (s) {
    case CellState::pending: return "pending";
    case CellState::in_progress: return "in_progress";
    case CellState::done: return "done";
  }
  return "?";
}

bool Checkpoint::complete() const {
  for (const auto& c : cells)
    if (c.state != CellState::done) return false;
  return true;
}

CellProgress* Checkpoint::find(const std::string& id) {
  for (auto& c : cells)
    if (c.id == id) return &c;
  return nullptr;
}

std::string checkpoint_to_json(const Checkpoint& ckpt) {
  json j;
  j["format"] = 1;
  j["spec_hash"] = ckpt.spec_hash;
  j["spec"] = ckpt.spec_text;
  json cells = json::array();
  for (const auto& c : ckpt.cells) {
    json jc;
    jc["id"] = c.id;
    jc["state"] = to_string(c.state);
    if (c.resume) jc["resume"] = {{"a", vec_to_json(c.resume->a)}, {"skip_current", c.resume->skip_current}};
    json failed = json::object();
    for (std::size_t i = 0; i < kFilterConditions; ++i)
      failed[to_string(static_cast<FilterCondition>(i))] = c.counters.failed[i];
    jc["counters"] = {{"generated", c.counters.generated}, {"passed", c.counters.passed}, {"failed", failed}};
    jc["used_bigint"] = c.used_bigint;
    jc["t2_rejected"] = c.t2_rejected;
    json surv = json::array();
    for (const auto& s : c.survivors) surv.push_back(vec_to_json(s));
    jc["survivors"] = surv;
    cells.push_back(jc);
  }
  j["cells"] = cells;
  return j.dump(1);
}

Checkpoint checkpoint_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Checkpoint ck;
    ck.spec_hash = j.at("spec_hash").get<std::string>();
    ck.spec_text = j.value("spec", std::string{});
    for (const auto& jc : j.at("cells")) {
      CellProgress c;
      c.id = jc.at("id").get<std::string>();
      c.state = state_from_string(jc.at("state").get<std::string>());
      if (jc.contains("resume"))
        c.resume = ResumePoint{vec_from_json(jc["resume"].at("a")), jc["resume"].at("skip_current").get<bool>()};
      const auto& cnt = jc.at("counters");
      c.counters.generated = cnt.at("generated").get<std::uint64_t>();
      c.counters.passed = cnt.at("passed").get<std::uint64_t>();
      for (std::size_t i = 0; i < kFilterConditions; ++i)
        c.counters.failed[i] = cnt.at("failed").at(to_string(static_cast<FilterCondition>(i))).get<std::uint64_t>();
      c.used_bigint = jc.value("used_bigint", false);
      c.t2_rejected = jc.value("t2_rejected", std::uint64_t{0});
      for (const auto& s : jc.at("survivors")) c.survivors.push_back(vec_from_json(s));
      ck.cells.push_back(std::move(c));
    }
    return ck;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("malformed checkpoint: ") + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  write_file_atomic(path, checkpoint_to_json(ckpt));
}

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read checkpoint " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace nfsearch
