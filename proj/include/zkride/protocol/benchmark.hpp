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

#ifndef ZKRIDE_PROTOCOL_BENCHMARK_HPP_
#define ZKRIDE_PROTOCOL_BENCHMARK_HPP_

// Load benchmark harness: runs profiles against a world, aggregates the raw
// event log into throughput / latency / success-rate metrics, and writes CSV
// and plot data. Also times proof generation and verification directly.
//
// Metric definitions (window = [ramp, load end)):
//   throughput   commit events inside the window / window length
//   latency      commit - submit, over committed txs submitted in the window
//   success rate committed / submitted over the whole run (after drain)

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zkride/crypto/crypto_core.hpp"
#include "zkride/protocol/network_sim.hpp"

namespace zkride {

struct CryptoTimings {
  double prove_ms_median = 0;
  double verify_ms_median = 0;
};

struct TimingOptions {
  std::size_t warmup = 5;
  std::size_t iterations = 30;
};

struct MetricsReport {
  std::string run_id;
  LoadProfile profile;
  double throughput_tps = 0;
  // Absent when nothing in the window committed.
  std::optional<double> latency_min_s;
  std::optional<double> latency_avg_s;
  std::optional<double> latency_max_s;
  double success_rate = 0;
  std::optional<CryptoTimings> crypto_timings;

  std::size_t submitted = 0;
  std::size_t committed = 0;
  double window_start_s = 0;
  double window_end_s = 0;
};

struct BenchmarkOptions {
  // Warm-up excluded from the window; shrunk to a quarter of the duration
  // for very short runs.
  double ramp_s = 1.0;
  Engine engine = Engine::virtual_clock;
  bool measure_crypto = false;
  TimingOptions timing;
};

// Ramp actually used for a given duration.
double effective_ramp(double ramp_s, double duration_s);

// Pure aggregation over an event log.
MetricsReport aggregate_metrics(const EventLog& log, const LoadProfile& profile, double ramp_s, std::string run_id);

MetricsReport run_benchmark(const LoadProfile& profile, World& world, const BenchmarkOptions& options = {},
                            std::string run_id = "");

// One fresh world per profile.
using WorldFactory = std::function<std::unique_ptr<World>()>;

struct SweepSpec {
  std::vector<double> send_rates;
  std::vector<std::uint32_t> policy_ks;
  std::uint32_t peer_count = 3;
  double duration_s = 10;
  std::uint32_t client_count = 5;
};

// Reports ordered by (k, send rate); run ids are "k<k>-r<rate>".
std::vector<MetricsReport> run_sweep(const SweepSpec& spec, const WorldFactory& make_world,
                                     const BenchmarkOptions& options = {});

// Smallest send rate whose throughput falls below (1 - slack) x rate; nullopt
// if the series never saturates. `series` must share one policy.
std::optional<double> saturation_rate(std::span<const MetricsReport> series, double slack = 0.05);
// Highest throughput in the series.
double peak_throughput(std::span<const MetricsReport> series);

struct LengthTiming {
  std::size_t length = 0;
  double prove_ms_median = 0;
  double verify_ms_median = 0;
};

// Median prove (digest + proof) and verify times per secret length, after
// warm-up. Throws ValidationError for zero lengths.
std::vector<LengthTiming> run_length_sweep(std::span<const std::size_t> lengths, const crypto::CryptoParams& params,
                                           const TimingOptions& options = {}, std::uint64_t seed = 1);

CryptoTimings measure_crypto_timings(const crypto::CryptoParams& params, const TimingOptions& options = {},
                                     std::uint64_t seed = 1);

double median(std::vector<double> values);

inline constexpr std::string_view kCsvHeader =
    "run_id,policy_k,policy_n,send_rate_tps,duration_s,throughput_tps,latency_min_s,latency_avg_s,latency_max_s,"
    "success_rate";

// Rows sorted by (policy k, policy n, send rate, run id). Absent latencies
// are empty fields.
std::string format_csv(std::span<const MetricsReport> reports);
// "# send_rate_tps throughput_tps latency_avg_s" then one row per report of
// the given policy, sorted by send rate.
std::string format_plot_data(std::span<const MetricsReport> reports, const EndorsementPolicy& policy);

// Writes <dir>/metrics.csv and <dir>/series_k<k>_n<n>.dat per policy. Returns
// the paths written. Throws IoError with the path on failure.
std::vector<std::filesystem::path> emit_report(std::span<const MetricsReport> reports,
                                               const std::filesystem::path& dir);

}  // namespace zkride

#endif  // ZKRIDE_PROTOCOL_BENCHMARK_HPP_
