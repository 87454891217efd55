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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "zkride/common/errors.hpp"

namespace zkride {
namespace {

Event ev(EventType t, std::string id, double at_s) {
  return {t, std::move(id), static_cast<Micros>(at_s * 1e6 + 0.5), std::nullopt, std::nullopt};
}

LoadProfile profile(double rate, double duration, std::uint32_t k = 1) {
  LoadProfile p;
  p.send_rate = rate;
  p.duration_s = duration;
  p.policy = {k, 3};
  return p;
}

NetworkConfig tuned_network() {
  NetworkConfig net;
  net.peers = {{"peer-1", {36, 0}}, {"peer-2", {55, 0}}, {"peer-3", {65, 0}}};
  return net;
}

WorldFactory toy_worlds() {
  return [] {
    return std::make_unique<World>(crypto::CryptoParams::toy(), tuned_network(), Population{}, Drbg::from_u64(7));
  };
}

TEST(AggregateTest, EffectiveRamp) {
  EXPECT_DOUBLE_EQ(effective_ramp(1, 15), 1);
  EXPECT_DOUBLE_EQ(effective_ramp(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(effective_ramp(0, 2), 0);
}

// Hand-computed: window [1, 4).
//   a: submit 0.5 commit 1.2   counted in throughput, not latency
//   b: submit 1.0 commit 1.5   latency 0.5
//   c: submit 2.0 commit 4.5   latency 2.5, commit outside the window
//   d: submit 3.0 rejected
//   e: submit 3.9 commit 3.95  latency 0.05
TEST(AggregateTest, HandComputedOracle) {
  EventLog log;
  log.append(ev(EventType::submit, "a", 0.5));
  log.append(ev(EventType::submit, "b", 1.0));
  log.append(ev(EventType::commit, "a", 1.2));
  log.append(ev(EventType::commit, "b", 1.5));
  log.append(ev(EventType::submit, "c", 2.0));
  log.append(ev(EventType::submit, "d", 3.0));
  log.append(ev(EventType::reject, "d", 3.1));
  log.append(ev(EventType::submit, "e", 3.9));
  log.append(ev(EventType::commit, "e", 3.95));
  log.append(ev(EventType::commit, "c", 4.5));
  MetricsReport r = aggregate_metrics(log, profile(2, 4), 1, "oracle");
  EXPECT_EQ(r.run_id, "oracle");
  EXPECT_EQ(r.submitted, 5u);
  EXPECT_EQ(r.committed, 4u);
  EXPECT_DOUBLE_EQ(r.window_start_s, 1);
  EXPECT_DOUBLE_EQ(r.window_end_s, 4);
  EXPECT_NEAR(r.throughput_tps, 1.0, 1e-12);
  EXPECT_NEAR(*r.latency_min_s, 0.05, 1e-12);
  EXPECT_NEAR(*r.latency_avg_s, (0.5 + 2.5 + 0.05) / 3, 1e-12);
  EXPECT_NEAR(*r.latency_max_s, 2.5, 1e-12);
  EXPECT_NEAR(r.success_rate, 0.8, 1e-12);
}

TEST(AggregateTest, ZeroCommitsGiveAbsentLatency) {
  EventLog log;
  log.append(ev(EventType::submit, "a", 1.5));
  log.append(ev(EventType::reject, "a", 1.6));
  MetricsReport r = aggregate_metrics(log, profile(1, 4), 1, "x");
  EXPECT_EQ(r.throughput_tps, 0);
  EXPECT_FALSE(r.latency_min_s || r.latency_avg_s || r.latency_max_s);
  EXPECT_EQ(r.success_rate, 0);
  MetricsReport empty = aggregate_metrics(EventLog{}, profile(1, 4), 1, "y");
  EXPECT_EQ(empty.submitted, 0u);
  EXPECT_EQ(empty.success_rate, 0);
}

TEST(AggregateTest, RunBenchmarkInvariants) {
  auto world = toy_worlds()();
  MetricsReport r = run_benchmark(profile(20, 6, 2), *world, {}, "inv");
  EXPECT_EQ(r.submitted, 120u);
  EXPECT_DOUBLE_EQ(r.success_rate, 1.0);
  EXPECT_NEAR(r.throughput_tps, 20, 20 * 0.1);
  ASSERT_TRUE(r.latency_avg_s);
  EXPECT_LE(*r.latency_min_s, *r.latency_avg_s);
  EXPECT_LE(*r.latency_avg_s, *r.latency_max_s);
  // At least the second fastest verdict plus the commit latency.
  EXPECT_GE(*r.latency_min_s, 0.055 + 0.3 - 1e-9);
  EXPECT_FALSE(r.crypto_timings);
}

TEST(SweepTest, RunIdsOrderAndSaturation) {
  SweepSpec spec;
  spec.send_rates = {10, 20, 40};
  spec.policy_ks = {1, 3};
  spec.duration_s = 5;
  auto reports = run_sweep(spec, toy_worlds());
  ASSERT_EQ(reports.size(), 6u);
  EXPECT_EQ(reports[0].run_id, "k1-r10");
  EXPECT_EQ(reports[5].run_id, "k3-r40");
  std::span<const MetricsReport> k1(reports.data(), 3);
  std::span<const MetricsReport> k3(reports.data() + 3, 3);
  // Single FIFO servers saturate near 1000/36 and 1000/65 tps.
  EXPECT_EQ(saturation_rate(k1), 40);
  EXPECT_EQ(saturation_rate(k3), 20);
  EXPECT_GT(peak_throughput(k1), peak_throughput(k3));
  EXPECT_THROW(run_sweep(SweepSpec{}, toy_worlds()), ValidationError);
}

MetricsReport fake_report(std::string id, std::uint32_t k, double rate, double tput) {
  MetricsReport r;
  r.run_id = std::move(id);
  r.profile = profile(rate, 10, k);
  r.throughput_tps = tput;
  return r;
}

TEST(SweepTest, SaturationRateDefinition) {
  std::vector<MetricsReport> s{fake_report("c", 1, 30, 20), fake_report("a", 1, 10, 9.6), fake_report("b", 1, 20, 19)};
  EXPECT_EQ(saturation_rate(s), 30);
  EXPECT_EQ(saturation_rate(s, 0.5), std::nullopt);
  EXPECT_EQ(saturation_rate(s, 0.01), 10);
  EXPECT_DOUBLE_EQ(peak_throughput(s), 20);
}

TEST(ReportTest, CsvRowsSortedWithEmptyLatencies) {
  std::vector<MetricsReport> reports{fake_report("k2-r5", 2, 5, 4.5), fake_report("k1-r10", 1, 10, 9),
                                     fake_report("k1-r5", 1, 5, 5)};
  reports[1].latency_min_s = 0.25;
  reports[1].latency_avg_s = 0.5;
  reports[1].latency_max_s = 1;
  reports[1].success_rate = 1;
  const std::string csv = format_csv(reports);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], kCsvHeader);
  EXPECT_EQ(lines[1], "k1-r5,1,3,5.000000000,10.000000000,5.000000000,,,,0.000000000");
  EXPECT_EQ(lines[2],
            "k1-r10,1,3,10.000000000,10.000000000,9.000000000,0.250000000,0.500000000,1.000000000,1.000000000");
  EXPECT_EQ(lines[3].rfind("k2-r5,2,3,", 0), 0u);
  EXPECT_EQ(format_csv(reports), csv);
}

TEST(ReportTest, PlotDataFiltersByPolicy) {
  std::vector<MetricsReport> reports{fake_report("b", 1, 20, 19), fake_report("x", 2, 5, 5),
                                     fake_report("a", 1, 10, 10)};
  reports[2].latency_avg_s = 0.4;
  EXPECT_EQ(format_plot_data(reports, {1, 3}),
            "# policy 1-of-3\n# send_rate_tps throughput_tps latency_avg_s\n"
            "10.000000000 10.000000000 0.400000000\n20.000000000 19.000000000 nan\n");
}

TEST(ReportTest, EmitWritesCsvAndSeriesFiles) {
  auto dir = std::filesystem::temp_directory_path() / "zkride_emit_test";
  std::filesystem::remove_all(dir);
  std::vector<MetricsReport> reports{fake_report("a", 1, 10, 10), fake_report("b", 3, 10, 8)};
  auto written = emit_report(reports, dir / "nested");
  ASSERT_EQ(written.size(), 3u);
  EXPECT_EQ(written[0].filename(), "metrics.csv");
  EXPECT_EQ(written[1].filename(), "series_k1_n3.dat");
  EXPECT_EQ(written[2].filename(), "series_k3_n3.dat");
  std::ifstream f(written[0]);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), format_csv(reports));
  std::filesystem::remove_all(dir);
}

TEST(ReportTest, EmitReportsUnwritableDirectory) {
  auto file = std::filesystem::temp_directory_path() / "zkride_emit_blocker";
  std::ofstream(file) << "x";
  std::vector<MetricsReport> reports{fake_report("a", 1, 10, 10)};
  try {
    emit_report(reports, file / "sub");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("zkride_emit_blocker"), std::string::npos);
  }
  std::filesystem::remove(file);
}

TEST(TimingTest, Median) {
  EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2);
  EXPECT_DOUBLE_EQ(median({4, 1, 3, 2}), 2.5);
  EXPECT_DOUBLE_EQ(median({7}), 7);
  EXPECT_THROW(median({}), ValidationError);
}

TEST(TimingTest, LengthSweepOnToyBackend) {
  const std::size_t lengths[] = {1, 7, 64};
  auto rows = run_length_sweep(lengths, crypto::CryptoParams::toy(), {2, 5});
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[i].length, lengths[i]);
    EXPECT_GE(rows[i].prove_ms_median, 0);
    EXPECT_GE(rows[i].verify_ms_median, 0);
  }
  const std::size_t bad[] = {0};
  EXPECT_THROW(run_length_sweep(bad, crypto::CryptoParams::toy()), ValidationError);
  EXPECT_THROW(run_length_sweep(lengths, crypto::CryptoParams::toy(), {0, 0}), ValidationError);
}

TEST(TimingTest, ProductionVerifyCostsMoreThanProve) {
  auto t = measure_crypto_timings(crypto::CryptoParams::production(), {2, 7});
  EXPECT_GT(t.prove_ms_median, 0);
  EXPECT_GT(t.verify_ms_median, t.prove_ms_median);
}

}  // namespace
}  // namespace zkride
