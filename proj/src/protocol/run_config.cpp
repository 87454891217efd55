// Copyright 2026 The zkride Authors.
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

#include "zkride/protocol/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zkride/common/errors.hpp"

namespace zkride {
namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_uint(std::string_view key, std::string_view v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    throw ValidationError(std::string(key) + ": expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  std::string s(v);
  try {
    std::size_t used = 0;
    double d = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(d)) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw ValidationError(std::string(key) + ": expected a number, got '" + s + "'");
  }
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ValidationError(std::string(key) + ": expected true or false, got '" + std::string(v) + "'");
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view raw) {
  std::string_view v = trim(raw);
  if (key == "backend") {
    backend = crypto::parse_backend(v);
  } else if (key == "engine") {
    engine = parse_engine(v);
  } else if (key == "peer_count") {
    peer_count = parse_uint<std::uint32_t>(key, v);
  } else if (key == "peer_delay_ms") {
    peer_delay_ms.clear();
    for (auto item : split_list(v)) peer_delay_ms.push_back(parse_double(key, item));
  } else if (key == "peer_jitter_ms") {
    peer_jitter_ms = parse_double(key, v);
  } else if (key == "batch_size") {
    batch_size = parse_uint<std::uint32_t>(key, v);
  } else if (key == "block_timeout_ms") {
    block_timeout_ms = parse_uint<std::uint32_t>(key, v);
  } else if (key == "commit_latency_ms") {
    commit_latency_ms = parse_uint<std::uint32_t>(key, v);
  } else if (key == "policy_k") {
    policy_k = parse_uint<std::uint32_t>(key, v);
  } else if (key == "policy_n") {
    policy_n = parse_uint<std::uint32_t>(key, v);
  } else if (key == "nonce_binding") {
    nonce_binding = parse_bool(key, v);
  } else if (key == "seed") {
    if (v.empty() || v == "none") {
      seed.reset();
    } else {
      seed = parse_uint<std::uint64_t>(key, v);
    }
  } else if (key == "output_dir") {
    output_dir = std::string(v);
  } else if (key == "drivers") {
    drivers = parse_uint<std::uint32_t>(key, v);
  } else if (key == "riders") {
    riders = parse_uint<std::uint32_t>(key, v);
  } else if (key == "rides") {
    rides = parse_uint<std::uint32_t>(key, v);
  } else if (key == "bench_rates") {
    bench_rates.clear();
    for (auto item : split_list(v)) bench_rates.push_back(parse_double(key, item));
  } else if (key == "bench_policies") {
    bench_policies.clear();
    for (auto item : split_list(v)) bench_policies.push_back(parse_uint<std::uint32_t>(key, item));
  } else if (key == "bench_duration_s") {
    bench_duration_s = parse_double(key, v);
  } else if (key == "bench_ramp_s") {
    bench_ramp_s = parse_double(key, v);
  } else if (key == "timing_warmup") {
    timing_warmup = parse_uint<std::uint32_t>(key, v);
  } else if (key == "timing_iterations") {
    timing_iterations = parse_uint<std::uint32_t>(key, v);
  } else {
    throw ValidationError("unknown configuration key '" + std::string(key) + "'");
  }
}

void RunConfig::validate() const {
  auto positive = [](std::uint64_t v, const char* name) {
    if (v == 0) throw ValidationError(std::string(name) + " must be positive");
  };
  positive(peer_count, "peer_count");
  positive(batch_size, "batch_size");
  positive(block_timeout_ms, "block_timeout_ms");
  positive(policy_k, "policy_k");
  positive(policy_n, "policy_n");
  positive(drivers, "drivers");
  positive(riders, "riders");
  positive(timing_iterations, "timing_iterations");
  if (policy_k > policy_n) throw ValidationError("policy_k must not exceed policy_n");
  if (policy_n > peer_count) throw ValidationError("policy_n must not exceed peer_count");
  if (peer_delay_ms.size() != 1 && peer_delay_ms.size() != peer_count) {
    throw ValidationError("peer_delay_ms needs one value or one per peer (" + std::to_string(peer_count) + ")");
  }
  for (double d : peer_delay_ms) {
    if (d < 0) throw ValidationError("peer_delay_ms must be >= 0");
  }
  if (peer_jitter_ms < 0) throw ValidationError("peer_jitter_ms must be >= 0");
  if (bench_rates.empty()) throw ValidationError("bench_rates must not be empty");
  for (double r : bench_rates) {
    if (!(r > 0)) throw ValidationError("bench_rates must be > 0");
  }
  if (bench_policies.empty()) throw ValidationError("bench_policies must not be empty");
  for (auto k : bench_policies) {
    if (k == 0 || k > peer_count) throw ValidationError("bench_policies entries must be in [1, peer_count]");
  }
  if (!(bench_duration_s > 0)) throw ValidationError("bench_duration_s must be > 0");
  if (bench_ramp_s < 0) throw ValidationError("bench_ramp_s must be >= 0");
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << "backend = " << crypto::to_string(backend) << '\n'
     << "engine = " << to_string(engine) << '\n'
     << "peer_count = " << peer_count << '\n'
     << "peer_delay_ms = " << join(peer_delay_ms) << '\n'
     << "peer_jitter_ms = " << peer_jitter_ms << '\n'
     << "batch_size = " << batch_size << '\n'
     << "block_timeout_ms = " << block_timeout_ms << '\n'
     << "commit_latency_ms = " << commit_latency_ms << '\n'
     << "policy_k = " << policy_k << '\n'
     << "policy_n = " << policy_n << '\n'
     << "nonce_binding = " << (nonce_binding ? "true" : "false") << '\n'
     << "seed = " << (seed ? std::to_string(*seed) : std::string("none")) << '\n'
     << "output_dir = " << output_dir.string() << '\n'
     << "drivers = " << drivers << '\n'
     << "riders = " << riders << '\n'
     << "rides = " << rides << '\n'
     << "bench_rates = " << join(bench_rates) << '\n'
     << "bench_policies = " << join(bench_policies) << '\n'
     << "bench_duration_s = " << bench_duration_s << '\n'
     << "bench_ramp_s = " << bench_ramp_s << '\n'
     << "timing_warmup = " << timing_warmup << '\n'
     << "timing_iterations = " << timing_iterations << '\n';
  return os.str();
}

crypto::CryptoParams RunConfig::params() const { return crypto::CryptoParams::for_backend(backend); }

NetworkConfig RunConfig::network_config() const {
  validate();
  NetworkConfig net;
  for (std::uint32_t i = 0; i < peer_count; ++i) {
    double mean = peer_delay_ms.size() == 1 ? peer_delay_ms[0] : peer_delay_ms[i];
    net.peers.push_back({"peer-" + std::to_string(i + 1), {mean, peer_jitter_ms}});
  }
  net.ledger.batch_size = batch_size;
  net.ledger.block_timeout = millis_to_micros(block_timeout_ms);
  net.commit_latency = millis_to_micros(commit_latency_ms);
  net.nonce_binding = nonce_binding;
  return net;
}

Population RunConfig::population() const { return {drivers, riders}; }

Drbg RunConfig::master_rng() const { return seed ? Drbg::from_u64(*seed) : Drbg::from_entropy(); }

RunConfig parse_run_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_run_config(ss.str(), std::move(base));
}

}  // namespace zkride
