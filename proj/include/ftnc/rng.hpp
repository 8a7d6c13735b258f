#pragma once

#include <cstdint>

namespace ftnc {

/// Counter-based uniform stream. Every draw is a pure function of
/// (seed, stream_id, counter), so trajectories are reproducible regardless
/// of execution order or worker count.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream_id) : key_(mix(seed ^ mix(stream_id))) {}

  /// Draw at an explicit counter (order-independent).
  double uniform_at(uint64_t counter) const {
    uint64_t v = mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1));
    return static_cast<double>(v >> 11) * 0x1.0p-53;
  }

  /// Sequential draw from the stream's own counter, starting at a fixed
  /// offset so it never collides with uniform_at(site) indices below 2^32.
  double next_uniform() { return uniform_at((1ULL << 32) + seq_++); }

 private:
  // splitmix64 finalizer
  static uint64_t mix(uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
  }

  uint64_t key_;
  uint64_t seq_ = 0;
};

/// Abstract uniform source consumed by measurements.
struct RandomStream {
  virtual ~RandomStream() = default;
  virtual double next_uniform() = 0;
};

struct CounterStream final : RandomStream {
  explicit CounterStream(CounterRng rng) : rng(rng) {}
  double next_uniform() override { return rng.next_uniform(); }
  CounterRng rng;
};

}  // namespace ftnc
