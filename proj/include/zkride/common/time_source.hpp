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

#ifndef ZKRIDE_COMMON_TIME_SOURCE_HPP_
#define ZKRIDE_COMMON_TIME_SOURCE_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>

namespace zkride {

// Microseconds since the start of a run (or since the epoch of the clock).
using Micros = std::int64_t;

inline constexpr Micros kMicrosPerSecond = 1'000'000;

inline Micros millis_to_micros(double ms) { return static_cast<Micros>(ms * 1000.0 + 0.5); }
inline double micros_to_seconds(Micros us) { return static_cast<double>(us) / 1e6; }

class TimeSource {
 public:
  virtual ~TimeSource() = default;
  virtual Micros now() const = 0;
  // Blocks until now() >= t on the wall clock; a no-op on the virtual clock,
  // where time only moves when the owning scheduler advances it.
  virtual void wait_until(Micros t) = 0;
  virtual bool is_virtual() const = 0;
};

class WallTime final : public TimeSource {
 public:
  WallTime() : origin_(std::chrono::steady_clock::now()) {}
  Micros now() const override;
  void wait_until(Micros t) override;
  bool is_virtual() const override { return false; }

 private:
  std::chrono::steady_clock::time_point origin_;
};

class VirtualTime final : public TimeSource {
 public:
  explicit VirtualTime(Micros start = 0) : now_(start) {}
  Micros now() const override { return now_.load(std::memory_order_acquire); }
  void wait_until(Micros) override {}
  bool is_virtual() const override { return true; }

  // Monotone: moving backwards is ignored.
  void advance_to(Micros t);
  void advance_by(Micros dt) { advance_to(now() + dt); }

 private:
  std::atomic<Micros> now_;
};

}  // namespace zkride

#endif  // ZKRIDE_COMMON_TIME_SOURCE_HPP_
