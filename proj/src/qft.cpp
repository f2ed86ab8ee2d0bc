#include "qflow/qft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qflow/config.hpp"

namespace qflow {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed alias of bin k on an N-point grid: 0..N/2-1 stay, N/2..N-1 wrap
// to negative.
long long signed_bin(std::uint64_t k, std::uint64_t n) {
  return k < n / 2 ? static_cast<long long>(k)
                   : static_cast<long long>(k) - static_cast<long long>(n);
}

}  // namespace

Circuit qft_circuit(const QftSpec& spec) {
  const int n = spec.num_qubits;
  if (n < 1) {
    throw std::invalid_argument("qft needs at least one qubit");
  }
  config::require_capacity(n);
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    c.gate("h", {q});
    for (int p = q + 1; p < n; ++p) {
      // Qubit q accumulates the binary fraction 0.j_q j_{q+1} ... j_{n-1}.
      c.gate("phase", {q}, {2.0 * kPi / std::pow(2.0, p - q + 1)}, {p});
    }
  }
  if (spec.include_final_swaps) {
    for (int q = 0; q < n / 2; ++q) {
      c.gate("swap", {q, n - 1 - q});
    }
  }
  return c;
}

Circuit inverse_qft_circuit(const QftSpec& spec) {
  return qft_circuit(spec).inverted();
}

StateVector apply_qft(const StateVector& state) {
  return run_statevector(qft_circuit({state.num_qubits(), true}), state);
}

StateVector apply_inverse_qft(const StateVector& state) {
  return run_statevector(inverse_qft_circuit({state.num_qubits(), true}), state);
}

std::vector<std::complex<double>> qft_derivative_demo(
    const std::vector<std::complex<double>>& samples, double wavenumber_scale) {
  const std::uint64_t n = samples.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("sample count must be a power of two >= 2");
  }
  // The transforms run on unit vectors; linearity restores the scale.
  double norm2 = 0.0;
  for (const auto& s : samples) norm2 += std::norm(s);
  const double in_norm = std::sqrt(norm2);
  std::vector<std::complex<double>> zeros(n, {0.0, 0.0});
  if (in_norm == 0.0) return zeros;

  std::vector<std::complex<double>> unit(samples);
  for (auto& a : unit) a /= in_norm;
  int qubits = 0;
  while ((std::uint64_t{1} << qubits) < n) ++qubits;
  const StateVector spectrum =
      apply_qft(StateVector::from_raw(qubits, std::move(unit)));

  // Mode content of bin k is exp(+i * scale * (-signed_bin) * x), so the
  // per-bin derivative factor is -i * scale * signed_bin.
  std::vector<std::complex<double>> deriv(n);
  double deriv_norm2 = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const double m = (2 * k == n) ? 0.0 : static_cast<double>(signed_bin(k, n));
    deriv[k] = std::complex<double>(0.0, -wavenumber_scale * m) *
               spectrum.amplitude(k);
    deriv_norm2 += std::norm(deriv[k]);
  }
  const double deriv_norm = std::sqrt(deriv_norm2);
  if (deriv_norm == 0.0) return zeros;
  for (auto& a : deriv) a /= deriv_norm;
  const StateVector back =
      apply_inverse_qft(StateVector::from_raw(qubits, std::move(deriv)));

  std::vector<std::complex<double>> out(back.amplitudes());
  for (auto& a : out) a *= in_norm * deriv_norm;
  return out;
}

}  // namespace qflow
