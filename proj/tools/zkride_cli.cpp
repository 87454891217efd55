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

// zkride command-line driver.
//
// Exit status: 0 success, 1 other failure, 2 invalid input or configuration,
// 3 a proof was rejected, 4 integrity failure, 5 I/O error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "zkride/common/errors.hpp"
#include "zkride/common/sha256.hpp"
#include "zkride/crypto/batch_verify.hpp"
#include "zkride/protocol/benchmark.hpp"
#include "zkride/protocol/identity_registry.hpp"
#include "zkride/protocol/ledger.hpp"
#include "zkride/protocol/network_sim.hpp"
#include "zkride/protocol/ride_workflow.hpp"
#include "zkride/protocol/run_config.hpp"
#include "zkride/protocol/scenarios.hpp"

namespace fs = std::filesystem;
using namespace zkride;

namespace {

enum Exit : int { kOk = 0, kOther = 1, kValidation = 2, kRejected = 3, kIntegrity = 4, kIo = 5 };

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  std::string backend;
  bool paper_exact = false;
  std::vector<std::string> overrides;
};

RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = load_run_config(g.config_path);
  for (const auto& kv : g.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (g.seed) cfg.seed = g.seed;
  if (!g.output_dir.empty()) cfg.output_dir = g.output_dir;
  if (!g.backend.empty()) cfg.backend = crypto::parse_backend(g.backend);
  if (g.paper_exact) cfg.nonce_binding = false;
  cfg.validate();
  return cfg;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("failed writing " + path.string());
}

int cmd_keygen(const RunConfig& cfg) {
  const auto params = cfg.params();
  Drbg rng = cfg.master_rng();
  auto [sk, vk] = crypto::generate_keypair(params, rng);
  std::cout << "backend " << crypto::to_string(params.backend()) << '\n'
            << "prover_key " << sk.to_hex(params) << '\n'
            << "verifier_key " << vk.to_hex() << '\n';
  return kOk;
}

struct RegisterArgs {
  std::string registry_path;
  std::string driver_id;
  std::string secret;
  std::string rider_id;
};

int cmd_register(const RunConfig& cfg, const RegisterArgs& a) {
  if (a.driver_id.empty() == a.rider_id.empty()) throw ValidationError("give exactly one of --driver or --rider");
  if (!a.driver_id.empty() && a.secret.empty()) {
    // An empty licence is legal, but it has to be asked for explicitly.
    std::cerr << "note: registering " << a.driver_id << " with an empty secret\n";
  }
  const fs::path path = a.registry_path.empty() ? cfg.output_dir / "registry.txt" : fs::path(a.registry_path);
  const auto params = cfg.params();
  Drbg rng = cfg.master_rng();
  std::optional<Registry> reg;
  if (fs::exists(path)) {
    // Fork per registry state so a fixed seed still gives each driver its own key.
    const std::string text = read_file(path);
    reg.emplace(Registry::import_text(text, rng.fork("registry/" + to_hex(sha256(as_bytes(text))))));
    if (reg->params().backend() != params.backend()) {
      throw ValidationError(path.string() + " holds a " + std::string(crypto::to_string(reg->params().backend())) +
                            " registry, but the configured backend is " +
                            std::string(crypto::to_string(params.backend())));
    }
  } else {
    reg.emplace("issuer", params, rng.fork("registry"));
  }
  if (!a.driver_id.empty()) {
    auto [key, rec] = reg->register_driver(a.driver_id, a.secret);
    std::cout << "registered driver " << a.driver_id << '\n'
              << "prover_key " << key.to_hex(params) << '\n'
              << "verifier_key " << rec.verifier_key->to_hex() << '\n';
  } else {
    reg->register_rider(a.rider_id);
    std::cout << "registered rider " << a.rider_id << '\n';
  }
  write_file(path, reg->export_text());
  return kOk;
}

struct SimulateArgs {
  std::optional<std::uint32_t> rides;
  std::vector<std::uint32_t> fake_rides;  // 1-based
};

int cmd_simulate(const RunConfig& cfg, const SimulateArgs& a) {
  const std::uint32_t rides = a.rides.value_or(cfg.rides);
  for (auto r : a.fake_rides) {
    if (r == 0 || r > rides) throw ValidationError("--fake-ride " + std::to_string(r) + " is outside 1.." + std::to_string(rides));
  }
  const auto params = cfg.params();
  const NetworkConfig net_cfg = cfg.network_config();
  World world(params, net_cfg, cfg.population(), cfg.master_rng());

  std::unique_ptr<TimeSource> clock;
  if (cfg.engine == Engine::virtual_clock) {
    clock = std::make_unique<VirtualTime>();
  } else {
    clock = std::make_unique<WallTime>();
  }
  SessionFactory factory(world.registry(), world.rng().fork("sessions"), cfg.nonce_binding, *clock);
  Drbg delays = world.rng().fork("delays");
  Drbg trips = world.rng().fork("trips");
  VerificationNetwork net;
  net.peers = peer_pointers(world.peers());
  net.policy = cfg.policy();
  net.ledger = &world.ledger();
  net.commit_latency = net_cfg.commit_latency;

  std::map<std::string, const DriverClient*> clients;
  for (const auto& d : world.drivers()) clients[d.driver_id] = &d;
  std::deque<std::string> driver_pool;
  std::deque<std::string> rider_pool;
  std::string transcripts;
  std::size_t recorded = 0;
  std::size_t rejected = 0;
  bool as_expected = true;
  for (std::uint32_t i = 1; i <= rides; ++i) {
    if (driver_pool.empty()) for (const auto& d : world.drivers()) driver_pool.push_back(d.driver_id);
    if (rider_pool.empty()) for (const auto& r : world.riders()) rider_pool.push_back(r);
    auto [driver_id, rider_id] = match_ride(driver_pool, rider_pool);
    const DriverClient& d = *clients.at(driver_id);
    TripDetails trip{"stop-" + std::to_string(trips.next_u64() % 100),
                     "stop-" + std::to_string(trips.next_u64() % 100), 500 + trips.next_u64() % 5000};
    VerificationSession s = factory.request_verification(driver_id, rider_id, trip);
    const bool fake = std::find(a.fake_rides.begin(), a.fake_rides.end(), i) != a.fake_rides.end();
    if (fake) {
      driver_respond(s, kFakeLicence, d.key, params, *clock);
    } else {
      driver_respond(s, d.secret, d.key, params, *clock);
    }
    complete_verification(s, net, *clock, delays);
    if (auto* v = dynamic_cast<VirtualTime*>(clock.get())) v->advance_by(kMicrosPerSecond);
    const bool ok = s.state() == SessionState::recorded;
    recorded += ok ? 1 : 0;
    rejected += ok ? 0 : 1;
    as_expected = as_expected && (ok != fake);
    std::cout << s.session_id() << '\t' << driver_id << '\t' << rider_id << '\t' << to_string(s.state()) << '\t'
              << s.outcome_message() << '\n';
    transcripts += export_transcript(s);
  }
  const fs::path out = cfg.output_dir;
  write_file(out / "ledger.bin", [&] { Bytes b = world.ledger().export_binary(); return std::string(b.begin(), b.end()); }());
  write_file(out / "ledger.txt", world.ledger().export_text());
  write_file(out / "transcripts.txt", transcripts);
  write_file(out / "registry.txt", world.registry().export_text());
  std::cout << "sessions " << rides << ", recorded " << recorded << ", rejected " << rejected << ", ledger txs "
            << world.ledger().tx_count() << " in " << world.ledger().block_count() << " blocks\n"
            << "wrote " << (out / "ledger.bin").string() << ", ledger.txt, transcripts.txt, registry.txt\n";
  return as_expected ? kOk : kRejected;
}

struct BenchArgs {
  std::vector<double> rates;
  std::vector<std::uint32_t> policies;
  std::optional<double> duration;
  bool skip_timing = false;
};

int cmd_bench(RunConfig cfg, const BenchArgs& a) {
  if (!a.rates.empty()) cfg.bench_rates = a.rates;
  if (!a.policies.empty()) cfg.bench_policies = a.policies;
  if (a.duration) cfg.bench_duration_s = *a.duration;
  cfg.validate();
  const auto params = cfg.params();
  const NetworkConfig net = cfg.network_config();
  Drbg master = cfg.master_rng();
  SweepSpec spec;
  spec.send_rates = cfg.bench_rates;
  spec.policy_ks = cfg.bench_policies;
  spec.peer_count = cfg.peer_count;
  spec.duration_s = cfg.bench_duration_s;
  spec.client_count = cfg.drivers;
  BenchmarkOptions opts;
  opts.ramp_s = cfg.bench_ramp_s;
  opts.engine = cfg.engine;
  opts.timing = {cfg.timing_warmup, cfg.timing_iterations};
  auto reports = run_sweep(spec, [&] { return std::make_unique<World>(params, net, cfg.population(), master.fork("world")); },
                           opts);
  if (!a.skip_timing) {
    CryptoTimings t = measure_crypto_timings(params, opts.timing);
    for (auto& r : reports) r.crypto_timings = t;
    std::printf("crypto: prove median %.3f ms, verify median %.3f ms (%d OpenMP threads)\n", t.prove_ms_median,
                t.verify_ms_median, crypto::batch_verify_threads());
  }
  std::printf("%-10s %6s %10s %12s %10s %10s %10s %8s\n", "run", "k/n", "rate", "throughput", "lat_min", "lat_avg",
              "lat_max", "success");
  for (const auto& r : reports) {
    auto f = [](const std::optional<double>& v) { return v ? *v : std::nan(""); };
    std::printf("%-10s %3u/%-2u %10.2f %12.3f %10.3f %10.3f %10.3f %8.3f\n", r.run_id.c_str(),
                r.profile.policy.required_k, r.profile.policy.peer_set_size_n, r.profile.send_rate, r.throughput_tps,
                f(r.latency_min_s), f(r.latency_avg_s), f(r.latency_max_s), r.success_rate);
  }
  for (const auto& p : emit_report(reports, cfg.output_dir)) std::cout << "wrote " << p.string() << '\n';
  return kOk;
}

int cmd_verify_chain(const RunConfig& cfg, const std::string& ledger_path) {
  const fs::path path = ledger_path.empty() ? cfg.output_dir / "ledger.bin" : fs::path(ledger_path);
  if (!fs::exists(path)) throw IoError("ledger export " + path.string() + " does not exist");
  std::string bytes = read_file(path);
  Ledger ledger = Ledger::import_binary(as_bytes(bytes));
  ChainVerdict v = ledger.verify_chain();
  if (v.intact) {
    std::cout << "intact: " << ledger.block_count() << " blocks verified\n";
    return kOk;
  }
  std::cout << "TAMPERED: violation at height " << (v.first_violation ? std::to_string(*v.first_violation) : "?")
            << ": " << v.reason << '\n';
  return kIntegrity;
}

int cmd_scenarios(const RunConfig& cfg) {
  ScenarioEnv env = ScenarioEnv::from_config(cfg);
  bool failed = false;
  for (const auto& o : run_scenario_suite(env)) {
    std::cout << o.to_line() << '\n';
    failed = failed || o.status == ScenarioStatus::fail;
  }
  return failed ? kOther : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zkride: private driver verification on a simulated permissioned ledger"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "Configuration file (key = value)")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed for all randomness");
  app.add_option("--output-dir", g.output_dir, "Directory for outputs");
  app.add_option("--backend", g.backend, "Crypto backend: production or toy");
  app.add_flag("--paper-exact", g.paper_exact, "Disable session nonces (literal h = H(m))");
  app.add_option("--set", g.overrides, "Override a configuration key (key=value)");

  auto* keygen = app.add_subcommand("keygen", "Generate a prover/verifier key pair");

  RegisterArgs reg;
  auto* registercmd = app.add_subcommand("register", "Register a driver or rider in a registry file");
  registercmd->add_option("--registry", reg.registry_path, "Registry file (default <output-dir>/registry.txt)");
  registercmd->add_option("--driver", reg.driver_id, "Driver id to register");
  registercmd->add_option("--secret", reg.secret, "The driver's licence number");
  registercmd->add_option("--rider", reg.rider_id, "Rider id to register");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run matched rides through the verification workflow");
  simulate->add_option("--rides", sim.rides, "Number of rides");
  simulate->add_option("--fake-ride", sim.fake_rides, "1-based ride index whose driver presents a fake licence");

  BenchArgs bench;
  auto* benchcmd = app.add_subcommand("bench", "Sweep send rates and endorsement policies");
  benchcmd->add_option("--rates", bench.rates, "Send rates in tx/s")->delimiter(',');
  benchcmd->add_option("--policies", bench.policies, "Values of k for k-of-any")->delimiter(',');
  benchcmd->add_option("--duration", bench.duration, "Seconds of load per profile");
  benchcmd->add_flag("--skip-timing", bench.skip_timing, "Skip the prove/verify micro-timing");

  std::string ledger_path;
  auto* verify = app.add_subcommand("verify-chain", "Check the hash chain of a ledger export");
  verify->add_option("--ledger", ledger_path, "Binary ledger export (default <output-dir>/ledger.bin)");

  auto* scenarios = app.add_subcommand("scenarios", "Run the attack scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    RunConfig cfg = resolve_config(g);
    if (keygen->parsed()) return cmd_keygen(cfg);
    if (registercmd->parsed()) return cmd_register(cfg, reg);
    if (simulate->parsed()) return cmd_simulate(cfg, sim);
    if (benchcmd->parsed()) return cmd_bench(cfg, bench);
    if (verify->parsed()) return cmd_verify_chain(cfg, ledger_path);
    if (scenarios->parsed()) return cmd_scenarios(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const RegistryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const BackendMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
