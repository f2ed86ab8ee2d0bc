#include "qflow/rng.hpp"

#include <cmath>

namespace qflow {
namespace philox {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t counter) {
  std::array<std::uint32_t, 4> x = {
      static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32), 0u, 0u};
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int r = 0; r < 10; ++r) {
    round_once(x, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return x;
}

double uniform(std::uint64_t key, std::uint64_t counter, int pair) {
  const auto b = block(key, counter);
  const int base = (pair == 0) ? 0 : 2;
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(b[base]) << 32) | b[base + 1];
  // Top 53 bits give a dyadic rational in [0, 1).
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t derive_stream(std::uint64_t master_key, std::uint64_t stream_index) {
  const auto b = block(master_key, (1ull << 63) | stream_index);
  return (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
}

}  // namespace philox

double CounterRng::normal() {
  const auto b = philox::block(key_, counter_++);
  const std::uint64_t u1bits = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
  const std::uint64_t u2bits = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
  // Offset keeps u1 strictly positive for the log.
  const double u1 = (static_cast<double>(u1bits >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(u2bits >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace qflow
