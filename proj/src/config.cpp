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

#include "nfsearch/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "nfsearch/enumerate.hpp"
#include "nfsearch/hp_bounds.hpp"

namespace nfsearch {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  const long x = parse_long(key, v);
  if (x < 0) throw ConfigError(key + " must be nonnegative");
  return static_cast<std::uint64_t>(x);
}

bool is_empty_list(const std::string& v) { return v.empty() || v == "none" || v == "[]"; }

template <class T>
std::vector<T> parse_list(const std::string& key, std::string v) {
  std::vector<T> out;
  if (!v.empty() && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
  if (is_empty_list(trim(v))) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<T>(parse_long(key, trim(item))));
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + v + "'");
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

bool is_prime_power(long q) {
  try {
    (void)as_prime_power(q);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::string SearchSpec::effective_checkpoint_path() const {
  return checkpoint_path.empty() ? output_path + ".ckpt.json" : checkpoint_path;
}

void apply_setting(SearchSpec& spec, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "degree") {
    spec.degree = static_cast<int>(parse_long(key, value));
  } else if (key == "r1") {
    spec.r1 = static_cast<int>(parse_long(key, value));
  } else if (key == "r2") {
    spec.r2 = static_cast<int>(parse_long(key, value));
  } else if (key == "disc_bound") {
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("invalid disc_bound: '" + value + "'");
    spec.disc_bound = parse_integer(value);
  } else if (key == "excluded_norms") {
    spec.excluded_norms_set = true;
    spec.excluded_norms_auto = value == "auto";
    spec.excluded_norms = spec.excluded_norms_auto ? std::vector<long>{} : parse_list<long>(key, value);
  } else if (key == "eval_range") {
    spec.eval_range = parse_list<int>(key, value);
  } else if (key == "s1_values") {
    spec.s1_values = parse_list<int>(key, value);
  } else if (key == "a_n_max") {
    if (is_empty_list(value)) spec.a_n_max.reset();
    else spec.a_n_max = parse_long(key, value);
  } else if (key == "sign_values") {
    spec.sign_values = parse_list<int>(key, value);
  } else if (key == "parity_values") {
    spec.parity_values = parse_list<int>(key, value);
  } else if (key == "workers") {
    spec.workers = static_cast<int>(parse_long(key, value));
  } else if (key == "checkpoint_interval") {
    spec.checkpoint_interval = parse_u64(key, value);
  } else if (key == "output_path") {
    spec.output_path = value;
  } else if (key == "checkpoint_path") {
    spec.checkpoint_path = value;
  } else if (key == "filters") {
    spec.filters = parse_bool(key, value);
  } else if (key == "t2_filter") {
    spec.t2_filter = parse_bool(key, value);
  } else if (key == "trial_limit") {
    spec.trial_limit = parse_u64(key, value);
  } else if (key == "sieve_primes") {
    spec.sieve_primes = static_cast<int>(parse_long(key, value));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::vector<long> provable_excluded_norms(const Signature& sig, const Integer& disc_bound, long max_norm) {
  std::vector<long> out;
  for (long q = 2; q <= max_norm; ++q) {
    if (!is_prime_power(q)) continue;
    const BoundEvaluation b = optimize_bound(sig, LocalTerms{{q}, 200});
    // Rounded down: the hypothesis "a prime of norm q exists" is refuted only strictly above.
    if (floor_to_integer(b.implied_bound) > disc_bound) out.push_back(q);
  }
  return out;
}

void finalize_spec(SearchSpec& spec) {
  const int n = spec.degree;
  if (n < 3) throw ConfigError("degree must be at least 3");
  if (!HermiteTable().contains(n - 1)) throw ConfigError("no Hermite constant for dimension " + std::to_string(n - 1));
  if (spec.r1 < 0 && spec.r2 >= 0) spec.r1 = n - 2 * spec.r2;
  if (spec.r2 < 0 && spec.r1 >= 0 && (n - spec.r1) % 2 == 0) spec.r2 = (n - spec.r1) / 2;
  if (spec.r1 < 0 || spec.r2 < 0 || spec.r1 + 2 * spec.r2 != n) throw ConfigError("signature must satisfy n = r1 + 2 r2");
  if (spec.disc_bound < 1) throw ConfigError("disc_bound must be >= 1");

  if (!spec.excluded_norms_set) {
    // The hypothesis behind {2,3,4,5} is specific to this signature and bound.
    if (n == 8 && spec.r1 == 2 && spec.r2 == 3 && spec.disc_bound <= 5726300) spec.excluded_norms = {2, 3, 4, 5};
  } else if (spec.excluded_norms_auto) {
    spec.excluded_norms = provable_excluded_norms(spec.signature(), spec.disc_bound);
  }
  for (long q : spec.excluded_norms)
    if (!is_prime_power(q)) throw ConfigError("excluded norm " + std::to_string(q) + " is not a prime power");
  std::sort(spec.excluded_norms.begin(), spec.excluded_norms.end());
  spec.excluded_norms.erase(std::unique(spec.excluded_norms.begin(), spec.excluded_norms.end()),
                            spec.excluded_norms.end());

  if (spec.eval_range.empty()) spec.eval_range = default_eval_range(n);
  for (int k : spec.eval_range)
    if (k < 2) throw ConfigError("eval_range entries must be >= 2");

  if (spec.s1_values.empty())
    for (int s = 0; 2 * s <= n; ++s) spec.s1_values.push_back(s);
  std::sort(spec.s1_values.begin(), spec.s1_values.end());
  spec.s1_values.erase(std::unique(spec.s1_values.begin(), spec.s1_values.end()), spec.s1_values.end());
  for (int s : spec.s1_values)
    if (s < 0 || 2 * s > n) throw ConfigError("s1_values must lie in [0, n/2]");

  if (spec.a_n_max && *spec.a_n_max < 1) throw ConfigError("a_n_max must be >= 1");
  std::sort(spec.parity_values.begin(), spec.parity_values.end());
  spec.parity_values.erase(std::unique(spec.parity_values.begin(), spec.parity_values.end()),
                           spec.parity_values.end());
  if (spec.parity_values.empty()) throw ConfigError("parity_values must not be empty");
  std::sort(spec.sign_values.begin(), spec.sign_values.end());
  spec.sign_values.erase(std::unique(spec.sign_values.begin(), spec.sign_values.end()), spec.sign_values.end());
  if (spec.sign_values.empty()) throw ConfigError("sign_values must not be empty");
  for (int s : spec.sign_values)
    if (s != 1 && s != -1) throw ConfigError("sign_values must be a subset of {-1,1}");
  for (int c : spec.parity_values)
    if (c != 0 && c != 1) throw ConfigError("parity_values must be a subset of {0,1}");
  if (spec.workers < 1) throw ConfigError("workers must be >= 1");
  if (spec.checkpoint_interval < 1) throw ConfigError("checkpoint_interval must be >= 1");
  if (spec.sieve_primes < 1) throw ConfigError("sieve_primes must be >= 1");
  if (spec.output_path.empty()) throw ConfigError("output_path must not be empty");
}

SearchSpec parse_spec(const std::string& text, const std::vector<std::string>& overrides) {
  SearchSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(spec, line.substr(0, eq), line.substr(eq + 1));
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "': expected key=value");
    apply_setting(spec, o.substr(0, eq), o.substr(eq + 1));
  }
  finalize_spec(spec);
  return spec;
}

SearchSpec load_spec(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), overrides);
}

std::string canonical_text(const SearchSpec& s) {
  std::ostringstream os;
  os << "degree=" << s.degree << "\nr1=" << s.r1 << "\nr2=" << s.r2 << "\ndisc_bound=" << s.disc_bound
     << "\nexcluded_norms=" << join(s.excluded_norms) << "\neval_range=" << join(s.eval_range)
     << "\ns1_values=" << join(s.s1_values) << "\na_n_max=" << (s.a_n_max ? std::to_string(*s.a_n_max) : "none")
     << "\nsign_values=" << join(s.sign_values) << "\nparity_values=" << join(s.parity_values) << "\nfilters=" << (s.filters ? "true" : "false")
     << "\nt2_filter=" << (s.t2_filter ? "true" : "false") << "\ntrial_limit=" << s.trial_limit << "\nsieve_primes=" << s.sieve_primes << "\n";
  return os.str();
}

std::string to_config_text(const SearchSpec& s) {
  std::ostringstream os;
  os << canonical_text(s) << "workers=" << s.workers << "\ncheckpoint_interval=" << s.checkpoint_interval
     << "\noutput_path=" << s.output_path << "\ncheckpoint_path=" << s.checkpoint_path << "\n";
  return os.str();
}

std::string spec_hash(const SearchSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(spec)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nfsearch
