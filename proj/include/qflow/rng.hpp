#pragma once

#include <array>
#include <cstdint>

namespace qflow {

// Counter-based generator (Philox4x32-10). Every random decision in the
// library is a pure function of (key, counter), which is what makes shot
// sampling reproducible independent of how work is split across threads:
// worker i never needs to know how many draws worker j consumed.
namespace philox {

// One 10-round block: 128 bits of output from a 64-bit key and 64-bit counter.
std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t counter);

// Uniform double in [0, 1) taken from lanes (0,1) or (2,3) of a block.
double uniform(std::uint64_t key, std::uint64_t counter, int pair = 0);

// Stable derivation of an independent sub-key, used to hand disjoint
// streams to tomography bases, optimizer restarts, etc. Derivation
// counters live in a reserved high-bit space so they can never collide
// with per-draw counters under the same key.
std::uint64_t derive_stream(std::uint64_t master_key, std::uint64_t stream_index);

}  // namespace philox

// Sequential convenience wrapper for call sites that just want a stream of
// draws (test fixtures, random restarts). Deterministic per (key, start).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t start_counter = 0)
      : key_(key), counter_(start_counter) {}

  double uniform() { return philox::uniform(key_, counter_++); }
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller (consumes one counter).
  double normal();
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace qflow
