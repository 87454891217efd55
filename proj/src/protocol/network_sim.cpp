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

#include "zkride/protocol/network_sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <queue>
#include <sstream>
#include <thread>

#include "zkride/common/errors.hpp"
#include "zkride/crypto/batch_verify.hpp"

namespace zkride {

// ---------------------------------------------------------------------------
// Delays and peers

void DelayModel::validate() const {
  if (!(mean_ms >= 0) || !(jitter_ms >= 0)) throw ValidationError("service delay mean and jitter must be >= 0");
}

Micros DelayModel::sample(Drbg& rng) const {
  double ms = mean_ms;
  if (jitter_ms > 0) {
    double u = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;  // [0, 1)
    ms += (2 * u - 1) * jitter_ms;
  }
  return millis_to_micros(std::max(ms, 0.0));
}

PeerNode::PeerNode(PeerConfig config, const Registry& registry) : config_(std::move(config)), registry_(registry) {
  validate_subject_id(config_.peer_id);
  config_.service_delay.validate();
}

std::optional<VerifierMaterial> PeerNode::resolve(const std::string& driver_id, std::string* cause) const {
  std::lock_guard lock(mu_);
  auto it = cache_.find(driver_id);
  if (it != cache_.end()) return it->second;
  try {
    VerifierMaterial m = registry_.lookup_verifier_material(driver_id);
    cache_.emplace(driver_id, m);
    return m;
  } catch (const RegistryError& e) {
    if (cause) *cause = e.what();
    return std::nullopt;
  }
}

Endorsement PeerNode::evaluate(const EndorsementRequest& req) const {
  Endorsement e;
  e.peer_id = config_.peer_id;
  e.tx_id = req.tx_id;
  std::string cause;
  auto material = resolve(req.driver_id, &cause);
  if (!material) {
    e.cause = "unresolvable driver: " + cause;
    return e;
  }
  try {
    e.positive = crypto::verify_proof(crypto::Proof::from_hex(req.proof_hex, registry_.params()), material->digest,
                                      req.nonce, material->verifier_key, registry_.params());
    if (!e.positive) e.cause = "proof verification failed";
  } catch (const DecodeError& err) {
    e.cause = std::string("malformed proof: ") + err.what();
  } catch (const BackendMismatch& err) {
    e.cause = std::string("backend mismatch: ") + err.what();
  }
  return e;
}

Endorsement peer_endorse(const PeerNode& peer, const EndorsementRequest& req, Micros submitted_at, Drbg& rng) {
  Endorsement e = peer.evaluate(req);
  e.at = submitted_at + peer.service_delay().sample(rng);
  return e;
}

// ---------------------------------------------------------------------------
// Event log

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::submit:
      return "submit";
    case EventType::endorse:
      return "endorse";
    case EventType::commit:
      return "commit";
    case EventType::reject:
      return "reject";
  }
  return "unknown";
}

EventLog::EventLog(const EventLog& other) {
  std::lock_guard lock(other.mu_);
  events_ = other.events_;
}

EventLog& EventLog::operator=(const EventLog& other) {
  if (this != &other) {
    std::vector<Event> copy = other.events();
    std::lock_guard lock(mu_);
    events_ = std::move(copy);
  }
  return *this;
}

void EventLog::append(Event e) {
  std::lock_guard lock(mu_);
  events_.push_back(std::move(e));
}

std::vector<Event> EventLog::events() const {
  std::vector<Event> out;
  {
    std::lock_guard lock(mu_);
    out = events_;
  }
  std::stable_sort(out.begin(), out.end(), [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
  return out;
}

std::size_t EventLog::size() const {
  std::lock_guard lock(mu_);
  return events_.size();
}

std::string EventLog::to_text() const {
  std::ostringstream os;
  for (const Event& e : events()) {
    os << to_string(e.type) << '\t' << e.tx_id << '\t' << e.timestamp << '\t' << (e.peer_id ? *e.peer_id : "-")
       << '\t' << (e.verdict ? (*e.verdict ? "1" : "0") : "-") << '\n';
  }
  return os.str();
}

EventLog EventLog::from_text(std::string_view text) {
  EventLog log;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string type, tx, ts, peer, verdict;
    if (!std::getline(ls, type, '\t') || !std::getline(ls, tx, '\t') || !std::getline(ls, ts, '\t') ||
        !std::getline(ls, peer, '\t') || !std::getline(ls, verdict)) {
      throw DecodeError("event log line " + std::to_string(line_no) + ": expected 5 fields");
    }
    Event e;
    if (type == "submit") {
      e.type = EventType::submit;
    } else if (type == "endorse") {
      e.type = EventType::endorse;
    } else if (type == "commit") {
      e.type = EventType::commit;
    } else if (type == "reject") {
      e.type = EventType::reject;
    } else {
      throw DecodeError("event log line " + std::to_string(line_no) + ": unknown type '" + type + "'");
    }
    e.tx_id = tx;
    try {
      std::size_t used = 0;
      e.timestamp = std::stoll(ts, &used);
      if (used != ts.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DecodeError("event log line " + std::to_string(line_no) + ": bad timestamp");
    }
    if (peer != "-") e.peer_id = peer;
    if (verdict == "1") {
      e.verdict = true;
    } else if (verdict == "0") {
      e.verdict = false;
    } else if (verdict != "-") {
      throw DecodeError("event log line " + std::to_string(line_no) + ": bad verdict");
    }
    log.events_.push_back(std::move(e));
  }
  return log;
}

// ---------------------------------------------------------------------------
// Configuration and world

void LoadProfile::validate() const {
  if (!(send_rate > 0) || !std::isfinite(send_rate)) throw ValidationError("send rate must be > 0");
  if (!(duration_s > 0) || !std::isfinite(duration_s)) throw ValidationError("duration must be > 0");
  if (client_count == 0) throw ValidationError("client count must be positive");
  policy.validate();
}

std::string_view to_string(Engine e) { return e == Engine::virtual_clock ? "virtual" : "wall"; }

Engine parse_engine(std::string_view s) {
  if (s == "virtual" || s == "virtual_clock") return Engine::virtual_clock;
  if (s == "wall" || s == "wall_clock") return Engine::wall_clock;
  throw ValidationError("unknown engine '" + std::string(s) + "'");
}

void NetworkConfig::validate() const {
  if (peers.empty()) throw ValidationError("at least one peer is required");
  for (const auto& p : peers) p.service_delay.validate();
  if (ledger.batch_size == 0) throw ValidationError("batch size must be positive");
  if (ledger.block_timeout <= 0) throw ValidationError("block timeout must be positive");
  if (commit_latency < 0) throw ValidationError("commit latency must be >= 0");
}

namespace {

std::string licence_number(Drbg& rng) {
  // Eight digits, leading digit non-zero.
  std::uint64_t v = 10'000'000 + rng.next_u64() % 90'000'000;
  return std::to_string(v);
}

}  // namespace

World::World(crypto::CryptoParams params, NetworkConfig config, Population population, Drbg rng)
    : params_(params),
      config_(std::move(config)),
      rng_(std::move(rng)),
      registry_("issuer", params_, rng_.fork("registry")),
      ledger_(config_.ledger) {
  config_.validate();
  for (const auto& pc : config_.peers) peers_.push_back(std::make_unique<PeerNode>(pc, registry_));
  Drbg licences = rng_.fork("licences");
  for (std::uint32_t i = 0; i < population.drivers; ++i) {
    std::string id = "driver-" + std::to_string(i + 1);
    std::string secret = licence_number(licences);
    auto [key, rec] = registry_.register_driver(id, secret);
    drivers_.push_back({id, key, to_bytes(secret)});
  }
  for (std::uint32_t i = 0; i < population.riders; ++i) {
    std::string id = "rider-" + std::to_string(i + 1);
    registry_.register_rider(id);
    riders_.push_back(id);
  }
}

// ---------------------------------------------------------------------------
// Load generation

namespace {

struct SimTx {
  RideLogTx tx;
  EndorsementRequest req;
  Micros arrival = 0;
};

std::vector<Micros> arrival_schedule(const LoadProfile& profile) {
  std::vector<Micros> out;
  const double spacing_us = 1e6 / profile.send_rate;
  const double end_us = profile.duration_s * 1e6;
  for (std::size_t i = 0;; ++i) {
    double t = static_cast<double>(i) * spacing_us;
    if (t >= end_us) break;
    out.push_back(static_cast<Micros>(std::llround(t)));
  }
  return out;
}

SimTx make_tx(std::size_t i, Micros arrival, const LoadProfile& profile, World& world, Drbg& rng) {
  const auto& drivers = world.drivers();
  const auto& riders = world.riders();
  if (drivers.empty() || riders.empty()) throw ValidationError("load needs at least one driver and one rider");
  const std::size_t clients = std::min<std::size_t>(profile.client_count, drivers.size());
  const DriverClient& d = drivers[i % clients];
  SimTx s;
  s.arrival = arrival;
  s.tx.tx_id = "tx-" + std::to_string(i);
  s.tx.driver_id = d.driver_id;
  s.tx.rider_id = riders[i % riders.size()];
  s.tx.trip_time = arrival;
  s.tx.origin = "stop-" + std::to_string(rng.next_u64() % 100);
  s.tx.destination = "stop-" + std::to_string(rng.next_u64() % 100);
  s.tx.price_cents = 500 + rng.next_u64() % 5000;
  std::optional<crypto::Nonce> nonce;
  if (world.config().nonce_binding) {
    crypto::Nonce n{};
    rng.fill(n);
    nonce = n;
  }
  crypto::Proof proof = crypto::generate_proof(d.key, crypto::digest_message(d.secret), nonce, world.params());
  s.tx.proof_record = proof.to_hex();
  s.tx.nonce = nonce;
  s.req = {s.tx.tx_id, d.driver_id, s.tx.proof_record, nonce};
  return s;
}

struct Decision {
  Micros at = 0;
  std::vector<Endorsement> endorsements;
};

// k-of-any: decided at the k-th positive verdict, or when all verdicts are in.
Decision decide(std::vector<Endorsement> verdicts, std::uint32_t k) {
  std::stable_sort(verdicts.begin(), verdicts.end(),
                   [](const Endorsement& a, const Endorsement& b) { return a.at < b.at; });
  Decision d;
  std::uint32_t positives = 0;
  for (auto& v : verdicts) {
    d.at = v.at;
    positives += v.positive ? 1 : 0;
    d.endorsements.push_back(std::move(v));
    if (positives >= k) break;
  }
  return d;
}

void log_commits(EventLog& log, const Block& b) {
  for (const auto& tx : b.txs) log.append({EventType::commit, tx.tx_id, b.committed_at, std::nullopt, std::nullopt});
}

// ---------------------------------------------------------------------------
// Virtual clock: a discrete-event scheduler over (time, kind, sequence).

LoadResult run_virtual(const LoadProfile& profile, World& world) {
  LoadResult result;
  Drbg rng = world.rng().fork("load");
  const auto arrivals = arrival_schedule(profile);
  std::vector<SimTx> txs;
  txs.reserve(arrivals.size());
  for (std::size_t i = 0; i < arrivals.size(); ++i) txs.push_back(make_tx(i, arrivals[i], profile, world, rng));
  for (const auto& s : txs) result.log.append({EventType::submit, s.tx.tx_id, s.arrival, std::nullopt, std::nullopt});
  result.submitted = txs.size();

  // Verdicts are pure functions of their inputs, so all of them are computed
  // up front with the parallel kernel; the schedule below decides when each
  // one is delivered.
  const auto& peers = world.peers();
  const auto& params = world.params();
  std::vector<std::optional<crypto::Proof>> proofs(txs.size());
  std::vector<std::string> decode_errors(txs.size());
  for (std::size_t i = 0; i < txs.size(); ++i) {
    try {
      proofs[i] = crypto::Proof::from_hex(txs[i].req.proof_hex, params);
    } catch (const DecodeError& e) {
      decode_errors[i] = e.what();
    }
  }
  std::vector<std::vector<Endorsement>> verdicts(txs.size());
  for (const auto& peer : peers) {
    std::vector<crypto::VerifyJob> jobs;
    std::vector<std::size_t> job_tx;
    std::vector<VerifierMaterial> materials;
    materials.reserve(txs.size());
    std::vector<Endorsement> out(txs.size());
    for (std::size_t i = 0; i < txs.size(); ++i) {
      out[i].peer_id = peer->peer_id();
      out[i].tx_id = txs[i].tx.tx_id;
      std::string cause;
      auto m = peer->resolve(txs[i].req.driver_id, &cause);
      if (!m) {
        out[i].cause = "unresolvable driver: " + cause;
        continue;
      }
      if (!proofs[i]) {
        out[i].cause = "malformed proof: " + decode_errors[i];
        continue;
      }
      materials.push_back(*m);
      job_tx.push_back(i);
    }
    for (std::size_t j = 0; j < job_tx.size(); ++j) {
      std::size_t i = job_tx[j];
      jobs.push_back({&*proofs[i], materials[j].digest, txs[i].req.nonce, &materials[j].verifier_key});
    }
    auto ok = crypto::verify_batch(jobs, params);
    for (std::size_t j = 0; j < job_tx.size(); ++j) {
      out[job_tx[j]].positive = ok[j] != 0;
      if (!ok[j]) out[job_tx[j]].cause = "proof verification failed";
    }
    // Single FIFO server per peer.
    Drbg delays = rng.fork("delay/" + peer->peer_id());
    Micros free_at = 0;
    for (std::size_t i = 0; i < txs.size(); ++i) {
      Micros start = std::max(txs[i].arrival, free_at);
      free_at = start + peer->service_delay().sample(delays);
      out[i].at = free_at;
      verdicts[i].push_back(out[i]);
    }
  }

  enum Kind : int { kTimer = 0, kSubmission = 1 };
  struct Item {
    Micros at;
    int kind;
    std::size_t seq;
    std::size_t tx;
    bool operator>(const Item& o) const {
      return std::tie(at, kind, seq) > std::tie(o.at, o.kind, o.seq);
    }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::size_t seq = 0;
  std::vector<Decision> decisions(txs.size());
  for (std::size_t i = 0; i < txs.size(); ++i) {
    for (const auto& v : verdicts[i]) {
      result.log.append({EventType::endorse, v.tx_id, v.at, v.peer_id, v.positive});
    }
    decisions[i] = decide(verdicts[i], profile.policy.required_k);
    queue.push({decisions[i].at, kSubmission, seq++, i});
  }

  Ledger& ledger = world.ledger();
  const Micros commit_latency = world.config().commit_latency;
  auto cut_due_blocks = [&](Micros now) {
    while (ledger.block_due(now)) {
      auto b = ledger.form_block(now + commit_latency);
      log_commits(result.log, *b);
      result.committed += b->txs.size();
    }
  };
  Micros last = 0;
  while (!queue.empty()) {
    Item item = queue.top();
    queue.pop();
    last = std::max(last, item.at);
    if (item.kind == kTimer) {
      cut_due_blocks(item.at);
      continue;
    }
    SimTx& s = txs[item.tx];
    const Decision& d = decisions[item.tx];
    RideLogTx tx = s.tx;
    tx.verification_result = true;
    CommitReceipt r = ledger.submit_tx(tx, d.endorsements, profile.policy, item.at);
    if (!r.accepted()) {
      result.log.append({EventType::reject, s.tx.tx_id, item.at, std::nullopt, std::nullopt});
      ++result.rejected;
      continue;
    }
    cut_due_blocks(item.at);
    queue.push({item.at + ledger.config().block_timeout, kTimer, seq++, 0});
  }
  result.load_end = static_cast<Micros>(std::llround(profile.duration_s * 1e6));
  auto events = result.log.events();
  result.drained_at = events.empty() ? 0 : events.back().timestamp;
  (void)last;
  return result;
}

// ---------------------------------------------------------------------------
// Wall clock: one thread per peer, an orderer and a committer.

template <typename T>
class BlockingQueue {
 public:
  void push(T v) {
    {
      std::lock_guard lock(mu_);
      q_.push_back(std::move(v));
    }
    cv_.notify_one();
  }
  // nullopt once closed and empty.
  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return !q_.empty() || closed_; });
    if (q_.empty()) return std::nullopt;
    T v = std::move(q_.front());
    q_.pop_front();
    return v;
  }
  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> q_;
  bool closed_ = false;
};

LoadResult run_wall(const LoadProfile& profile, World& world) {
  LoadResult result;
  WallTime clock;
  Drbg rng = world.rng().fork("load");
  const auto arrivals = arrival_schedule(profile);
  const auto& peers = world.peers();
  const std::uint32_t k = profile.policy.required_k;
  Ledger& ledger = world.ledger();
  const Micros commit_latency = world.config().commit_latency;
  const Micros timeout = ledger.config().block_timeout;

  std::vector<SimTx> txs(arrivals.size());
  // Per-transaction verdict tally, guarded by tally_mu.
  std::mutex tally_mu;
  std::vector<std::vector<Endorsement>> received(arrivals.size());
  std::vector<bool> decided(arrivals.size(), false);
  std::size_t decided_count = 0;
  std::condition_variable all_decided_cv;

  struct Submission {
    std::size_t tx;
    Micros at;
    std::vector<Endorsement> endorsements;
  };
  std::mutex orderer_mu;
  std::condition_variable orderer_cv;
  std::deque<Submission> submissions;
  bool generator_done = false;

  struct PendingCommit {
    Block block;
  };
  BlockingQueue<PendingCommit> commits;
  std::vector<std::unique_ptr<BlockingQueue<std::size_t>>> peer_queues;
  for (std::size_t p = 0; p < peers.size(); ++p) peer_queues.push_back(std::make_unique<BlockingQueue<std::size_t>>());

  auto on_verdict = [&](std::size_t i, Endorsement e) {
    result.log.append({EventType::endorse, e.tx_id, e.at, e.peer_id, e.positive});
    std::lock_guard lock(tally_mu);
    if (decided[i]) return;
    received[i].push_back(std::move(e));
    std::uint32_t positives = 0;
    for (const auto& v : received[i]) positives += v.positive ? 1 : 0;
    if (positives >= k || received[i].size() == peers.size()) {
      decided[i] = true;
      ++decided_count;
      {
        std::lock_guard olock(orderer_mu);
        submissions.push_back({i, clock.now(), received[i]});
      }
      orderer_cv.notify_one();
      if (decided_count == txs.size()) all_decided_cv.notify_all();
    }
  };

  std::vector<std::thread> threads;
  for (std::size_t p = 0; p < peers.size(); ++p) {
    threads.emplace_back([&, p] {
      Drbg delays = rng.fork("delay/" + peers[p]->peer_id());
      while (auto i = peer_queues[p]->pop()) {
        Micros start = clock.now();
        Endorsement e = peers[p]->evaluate(txs[*i].req);
        clock.wait_until(start + peers[p]->service_delay().sample(delays));
        e.at = clock.now();
        on_verdict(*i, std::move(e));
      }
    });
  }

  std::thread committer([&] {
    while (auto c = commits.pop()) {
      clock.wait_until(c->block.committed_at);
      log_commits(result.log, c->block);
    }
  });

  std::size_t committed = 0;
  std::size_t rejected = 0;
  std::thread orderer([&] {
    std::unique_lock lock(orderer_mu);
    for (;;) {
      auto since = ledger.pending_since();
      if (submissions.empty()) {
        bool finished = generator_done;  // set only once every tx is decided
        if (finished && !since) break;
        if (since) {
          auto deadline = std::chrono::microseconds(*since + timeout - clock.now());
          orderer_cv.wait_for(lock, std::max(deadline, std::chrono::microseconds(0)));
        } else {
          orderer_cv.wait_for(lock, std::chrono::milliseconds(20));
        }
      }
      std::deque<Submission> batch;
      batch.swap(submissions);
      lock.unlock();
      for (auto& s : batch) {
        RideLogTx tx = txs[s.tx].tx;
        tx.verification_result = true;
        CommitReceipt r = ledger.submit_tx(tx, s.endorsements, profile.policy, s.at);
        if (!r.accepted()) {
          result.log.append({EventType::reject, tx.tx_id, s.at, std::nullopt, std::nullopt});
          ++rejected;
        }
      }
      Micros now = clock.now();
      while (ledger.block_due(now)) {
        auto b = ledger.form_block(now + commit_latency);
        committed += b->txs.size();
        commits.push({std::move(*b)});
      }
      lock.lock();
    }
  });

  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    clock.wait_until(arrivals[i]);
    txs[i] = make_tx(i, arrivals[i], profile, world, rng);
    Micros now = clock.now();
    txs[i].tx.trip_time = now;
    result.log.append({EventType::submit, txs[i].tx.tx_id, now, std::nullopt, std::nullopt});
    for (auto& q : peer_queues) q->push(i);
  }
  result.submitted = txs.size();
  {
    std::unique_lock lock(tally_mu);
    all_decided_cv.wait(lock, [&] { return decided_count == txs.size(); });
  }
  {
    std::lock_guard lock(orderer_mu);
    generator_done = true;
  }
  orderer_cv.notify_one();
  orderer.join();
  commits.close();
  committer.join();
  for (auto& q : peer_queues) q->close();
  for (auto& t : threads) t.join();
  result.committed = committed;
  result.rejected = rejected;
  result.load_end = static_cast<Micros>(std::llround(profile.duration_s * 1e6));
  auto events = result.log.events();
  result.drained_at = events.empty() ? 0 : events.back().timestamp;
  return result;
}

}  // namespace

LoadResult run_load(const LoadProfile& profile, World& world, Engine engine) {
  profile.validate();
  if (profile.policy.peer_set_size_n != world.peers().size()) {
    throw ValidationError("policy n = " + std::to_string(profile.policy.peer_set_size_n) + " but the world has " +
                          std::to_string(world.peers().size()) + " peers");
  }
  return engine == Engine::virtual_clock ? run_virtual(profile, world) : run_wall(profile, world);
}

}  // namespace zkride
