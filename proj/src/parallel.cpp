#include "qflow/parallel.hpp"

#include <algorithm>
#include <thread>

#include "qflow/config.hpp"

namespace qflow {

namespace {

// Below this element count threading overhead dominates; run inline.
constexpr std::uint64_t kSerialCutoff = 1ull << 15;

}  // namespace

void parallel_for(std::uint64_t n,
                  const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  if (n == 0) return;
  const int workers = config::num_threads();
  if (workers <= 1 || n < kSerialCutoff) {
    fn(0, n);
    return;
  }
  const std::uint64_t stripes = std::min<std::uint64_t>(workers, n);
  const std::uint64_t base = n / stripes;
  const std::uint64_t extra = n % stripes;
  std::vector<std::thread> pool;
  pool.reserve(stripes);
  std::uint64_t begin = 0;
  for (std::uint64_t s = 0; s < stripes; ++s) {
    const std::uint64_t len = base + (s < extra ? 1 : 0);
    pool.emplace_back(fn, begin, begin + len);
    begin += len;
  }
  for (auto& t : pool) t.join();
}

double reduce_sum(std::uint64_t n, const std::function<double(std::uint64_t)>& term) {
  const std::uint64_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::uint64_t cb, std::uint64_t ce) {
    for (std::uint64_t c = cb; c < ce; ++c) {
      const std::uint64_t lo = c * kReduceChunk;
      const std::uint64_t hi = std::min(n, lo + kReduceChunk);
      double acc = 0.0;
      for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
      partial[c] = acc;
    }
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

std::complex<double> reduce_sum_complex(
    std::uint64_t n, const std::function<std::complex<double>(std::uint64_t)>& term) {
  const std::uint64_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<std::complex<double>> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::uint64_t cb, std::uint64_t ce) {
    for (std::uint64_t c = cb; c < ce; ++c) {
      const std::uint64_t lo = c * kReduceChunk;
      const std::uint64_t hi = std::min(n, lo + kReduceChunk);
      std::complex<double> acc = 0.0;
      for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
      partial[c] = acc;
    }
  });
  std::complex<double> total = 0.0;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace qflow
