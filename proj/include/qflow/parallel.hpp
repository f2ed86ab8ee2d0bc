#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qflow {

// Runs fn(begin, end) over [0, n) split into contiguous ranges. Ranges are
// fixed by n alone, not by the worker count, and workers write disjoint
// data, so any computation whose per-element results are independent is
// bitwise reproducible for every thread count (including 1).
void parallel_for(std::uint64_t n,
                  const std::function<void(std::uint64_t, std::uint64_t)>& fn);

// Deterministic reduction: partial sums are produced per fixed-size chunk
// (kReduceChunk elements) and combined in chunk order, so the floating-point
// summation tree never depends on the worker count.
inline constexpr std::uint64_t kReduceChunk = 4096;

double reduce_sum(std::uint64_t n, const std::function<double(std::uint64_t)>& term);

std::complex<double> reduce_sum_complex(
    std::uint64_t n, const std::function<std::complex<double>(std::uint64_t)>& term);

}  // namespace qflow
