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

#include "zkride/protocol/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "zkride/common/errors.hpp"

namespace zkride {

double effective_ramp(double ramp_s, double duration_s) { return std::max(0.0, std::min(ramp_s, duration_s / 4)); }

MetricsReport aggregate_metrics(const EventLog& log, const LoadProfile& profile, double ramp_s, std::string run_id) {
  MetricsReport r;
  r.run_id = std::move(run_id);
  r.profile = profile;
  const double ramp = effective_ramp(ramp_s, profile.duration_s);
  r.window_start_s = ramp;
  r.window_end_s = profile.duration_s;
  const Micros w0 = static_cast<Micros>(std::llround(ramp * 1e6));
  const Micros w1 = static_cast<Micros>(std::llround(profile.duration_s * 1e6));

  std::map<std::string, Micros> submit_at;
  std::map<std::string, Micros> commit_at;
  for (const Event& e : log.events()) {
    if (e.type == EventType::submit) {
      submit_at.emplace(e.tx_id, e.timestamp);
    } else if (e.type == EventType::commit) {
      commit_at.emplace(e.tx_id, e.timestamp);
    }
  }
  r.submitted = submit_at.size();
  r.committed = commit_at.size();
  r.success_rate = r.submitted == 0 ? 0.0 : static_cast<double>(r.committed) / static_cast<double>(r.submitted);

  std::size_t in_window = 0;
  for (const auto& [id, t] : commit_at) in_window += (t >= w0 && t < w1) ? 1 : 0;
  r.throughput_tps = w1 > w0 ? static_cast<double>(in_window) / micros_to_seconds(w1 - w0) : 0.0;

  double sum = 0;
  std::size_t n = 0;
  for (const auto& [id, s] : submit_at) {
    if (s < w0 || s >= w1) continue;
    auto c = commit_at.find(id);
    if (c == commit_at.end()) continue;
    double lat = micros_to_seconds(c->second - s);
    r.latency_min_s = r.latency_min_s ? std::min(*r.latency_min_s, lat) : lat;
    r.latency_max_s = r.latency_max_s ? std::max(*r.latency_max_s, lat) : lat;
    sum += lat;
    ++n;
  }
  if (n > 0) r.latency_avg_s = sum / static_cast<double>(n);
  return r;
}

MetricsReport run_benchmark(const LoadProfile& profile, World& world, const BenchmarkOptions& options,
                            std::string run_id) {
  LoadResult result = run_load(profile, world, options.engine);
  MetricsReport r = aggregate_metrics(result.log, profile, options.ramp_s, std::move(run_id));
  if (options.measure_crypto) r.crypto_timings = measure_crypto_timings(world.params(), options.timing);
  return r;
}

namespace {

std::string rate_label(double rate) {
  std::ostringstream os;
  os << rate;
  return os.str();
}

}  // namespace

std::vector<MetricsReport> run_sweep(const SweepSpec& spec, const WorldFactory& make_world,
                                     const BenchmarkOptions& options) {
  if (spec.send_rates.empty() || spec.policy_ks.empty()) throw ValidationError("sweep needs rates and policies");
  std::vector<MetricsReport> out;
  for (std::uint32_t k : spec.policy_ks) {
    for (double rate : spec.send_rates) {
      LoadProfile p;
      p.send_rate = rate;
      p.duration_s = spec.duration_s;
      p.policy = {k, spec.peer_count};
      p.client_count = spec.client_count;
      p.validate();
      auto world = make_world();
      out.push_back(run_benchmark(p, *world, options, "k" + std::to_string(k) + "-r" + rate_label(rate)));
    }
  }
  return out;
}

std::optional<double> saturation_rate(std::span<const MetricsReport> series, double slack) {
  std::vector<const MetricsReport*> sorted;
  for (const auto& r : series) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const MetricsReport* a, const MetricsReport* b) { return a->profile.send_rate < b->profile.send_rate; });
  for (const auto* r : sorted) {
    if (r->throughput_tps < (1 - slack) * r->profile.send_rate) return r->profile.send_rate;
  }
  return std::nullopt;
}

double peak_throughput(std::span<const MetricsReport> series) {
  double peak = 0;
  for (const auto& r : series) peak = std::max(peak, r.throughput_tps);
  return peak;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of an empty sample");
  std::sort(values.begin(), values.end());
  std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Fixed inputs for one secret length.
struct LengthFixture {
  std::size_t length = 0;
  crypto::ProverKey key;
  crypto::VerifierKey vkey;
  Bytes secret;
  crypto::Nonce nonce{};
  crypto::Digest digest;
  crypto::Proof proof;
  std::vector<double> prove;
  std::vector<double> verify;
};

LengthFixture make_fixture(std::size_t length, const crypto::CryptoParams& params, Drbg& rng) {
  auto [key, vkey] = crypto::generate_keypair(params, rng);
  Bytes secret(length);
  for (auto& b : secret) b = static_cast<std::uint8_t>('0' + rng.next_u64() % 10);
  crypto::Nonce nonce{};
  rng.fill(nonce);
  const crypto::Digest digest = crypto::digest_message(secret);
  crypto::Proof proof = crypto::generate_proof(key, digest, nonce, params);
  return {length, key, vkey, std::move(secret), nonce, digest, std::move(proof), {}, {}};
}

}  // namespace

std::vector<LengthTiming> run_length_sweep(std::span<const std::size_t> lengths, const crypto::CryptoParams& params,
                                           const TimingOptions& options, std::uint64_t seed) {
  if (options.iterations == 0) throw ValidationError("timing needs at least one iteration");
  Drbg rng = Drbg::from_u64(seed);
  std::vector<LengthFixture> fixtures;
  for (std::size_t len : lengths) {
    if (len == 0) throw ValidationError("secret lengths must be positive");
    fixtures.push_back(make_fixture(len, params, rng));
  }
  // Lengths are interleaved within every round so that drift in machine
  // speed (frequency scaling, noisy neighbours) hits all of them alike.
  bool invalid = false;
  for (std::size_t i = 0; i < options.warmup + options.iterations; ++i) {
    for (auto& f : fixtures) {
      auto t0 = Clock::now();
      crypto::Proof p = crypto::generate_proof(f.key, crypto::digest_message(f.secret), f.nonce, params);
      double prove_ms = elapsed_ms(t0);
      t0 = Clock::now();
      bool ok = crypto::verify_proof(p, f.digest, f.nonce, f.vkey, params);
      double verify_ms = elapsed_ms(t0);
      invalid = invalid || !ok || !(p == f.proof);
      if (i >= options.warmup) {
        f.prove.push_back(prove_ms);
        f.verify.push_back(verify_ms);
      }
    }
  }
  if (invalid) throw Error("timing run produced an invalid proof");
  std::vector<LengthTiming> out;
  for (auto& f : fixtures) out.push_back({f.length, median(std::move(f.prove)), median(std::move(f.verify))});
  return out;
}

CryptoTimings measure_crypto_timings(const crypto::CryptoParams& params, const TimingOptions& options,
                                     std::uint64_t seed) {
  const std::size_t len = 7;
  auto rows = run_length_sweep(std::span<const std::size_t>(&len, 1), params, options, seed);
  return {rows[0].prove_ms_median, rows[0].verify_ms_median};
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::vector<const MetricsReport*> sorted_reports(std::span<const MetricsReport> reports) {
  std::vector<const MetricsReport*> out;
  for (const auto& r : reports) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](const MetricsReport* a, const MetricsReport* b) {
    return std::tie(a->profile.policy.required_k, a->profile.policy.peer_set_size_n, a->profile.send_rate,
                    a->run_id) < std::tie(b->profile.policy.required_k, b->profile.policy.peer_set_size_n,
                                          b->profile.send_rate, b->run_id);
  });
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string format_csv(std::span<const MetricsReport> reports) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto* r : sorted_reports(reports)) {
    os << r->run_id << ',' << r->profile.policy.required_k << ',' << r->profile.policy.peer_set_size_n << ','
       << fmt(r->profile.send_rate) << ',' << fmt(r->profile.duration_s) << ',' << fmt(r->throughput_tps) << ','
       << fmt(r->latency_min_s) << ',' << fmt(r->latency_avg_s) << ',' << fmt(r->latency_max_s) << ','
       << fmt(r->success_rate) << '\n';
  }
  return os.str();
}

std::string format_plot_data(std::span<const MetricsReport> reports, const EndorsementPolicy& policy) {
  std::ostringstream os;
  os << "# policy " << policy.required_k << "-of-" << policy.peer_set_size_n << '\n';
  os << "# send_rate_tps throughput_tps latency_avg_s\n";
  for (const auto* r : sorted_reports(reports)) {
    if (!(r->profile.policy == policy)) continue;
    os << fmt(r->profile.send_rate) << ' ' << fmt(r->throughput_tps) << ' '
       << (r->latency_avg_s ? fmt(*r->latency_avg_s) : std::string("nan")) << '\n';
  }
  return os.str();
}

std::vector<std::filesystem::path> emit_report(std::span<const MetricsReport> reports,
                                               const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto csv = dir / "metrics.csv";
  write_file(csv, format_csv(reports));
  written.push_back(csv);
  std::set<std::pair<std::uint32_t, std::uint32_t>> policies;
  for (const auto& r : reports) policies.insert({r.profile.policy.required_k, r.profile.policy.peer_set_size_n});
  for (auto [k, n] : policies) {
    auto path = dir / ("series_k" + std::to_string(k) + "_n" + std::to_string(n) + ".dat");
    write_file(path, format_plot_data(reports, {k, n}));
    written.push_back(path);
  }
  return written;
}

}  // namespace zkride
