#include "qflow/loading.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qflow/config.hpp"

namespace qflow {

namespace {

constexpr double kZeroAngle = 1e-14;

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::uint64_t v) {
  int n = 0;
  while ((std::uint64_t{1} << n) < v) ++n;
  return n;
}

// Fast Walsh-Hadamard transform in place: out[m] = sum_j (-1)^<m,j> in[j].
void walsh_transform(std::vector<double>& a) {
  for (std::size_t h = 1; h < a.size(); h *= 2) {
    for (std::size_t i = 0; i < a.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

// Appends a rotation multiplexed over all values of the select qubits
// 0..c-1, acting on `target`. The Gray-code ordering makes each CNOT
// cancel the select-dependence introduced by its predecessors, so the
// block costs 2^c rotations plus 2^c CNOTs.
void emit_multiplexed_rotation(Circuit& circuit, const char* rotation,
                               std::vector<double> angles, int target) {
  bool all_zero = true;
  for (double a : angles) {
    if (std::abs(a) > kZeroAngle) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return;

  const int c = log2_exact(angles.size());
  if (c == 0) {
    circuit.gate(rotation, {target}, {angles[0]});
    return;
  }
  // Rotation i carries hat[i] = (1/2^c) sum_j (-1)^<gray(i),j> angles[j]:
  // for any select value the signs accumulated by the CNOT pattern sum
  // the hats back to exactly angles[select].
  walsh_transform(angles);
  const std::uint64_t count = std::uint64_t{1} << c;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t gray = i ^ (i >> 1);
    circuit.gate(rotation, {target},
                 {angles[gray] / static_cast<double>(count)});
    const int changed_bit =
        (i + 1 == count) ? c - 1 : std::countr_zero(i + 1);
    // Select-integer bit b lives on qubit c-1-b (qubit 0 is the MSB).
    circuit.gate("cnot", {c - 1 - changed_bit, target});
  }
}

}  // namespace

LoadPlan amplitude_load(const std::vector<std::complex<double>>& values) {
  if (values.size() < 2 || !is_power_of_two(values.size())) {
    throw std::invalid_argument("value count must be a power of two >= 2");
  }
  double norm2 = 0.0;
  for (const auto& v : values) norm2 += std::norm(v);
  const double input_norm = std::sqrt(norm2);
  if (input_norm == 0.0) {
    throw std::invalid_argument("cannot load the all-zero vector");
  }
  const int n = log2_exact(values.size());
  config::require_capacity(n);

  std::vector<std::complex<double>> level(values);
  for (auto& v : level) v /= input_norm;
  const StateVector reference = StateVector::from_amplitudes(level);

  // Walk the binary tree bottom-up: each amplitude pair (u, v) collapses
  // into its parent r*exp(i*(arg u + arg v)/2) with
  //   theta = 2*atan2(|v|, |u|),  phi = arg(v) - arg(u),
  // inverting child = parent * Rz(phi)Ry(theta)|0>.
  std::vector<std::vector<double>> thetas(n), phis(n);
  for (int l = n; l >= 1; --l) {
    const std::size_t parents = std::size_t{1} << (l - 1);
    std::vector<std::complex<double>> up(parents);
    thetas[l - 1].resize(parents);
    phis[l - 1].resize(parents);
    for (std::size_t i = 0; i < parents; ++i) {
      const std::complex<double> u = level[2 * i], v = level[2 * i + 1];
      const double r = std::sqrt(std::norm(u) + std::norm(v));
      if (r < kZeroAngle) {
        thetas[l - 1][i] = 0.0;
        phis[l - 1][i] = 0.0;
        up[i] = 0.0;
        continue;
      }
      const double au = std::abs(u) == 0.0 ? 0.0 : std::arg(u);
      const double av = std::abs(v) == 0.0 ? 0.0 : std::arg(v);
      thetas[l - 1][i] = 2.0 * std::atan2(std::abs(v), std::abs(u));
      phis[l - 1][i] = av - au;
      up[i] = std::polar(r, 0.5 * (au + av));
    }
    level = std::move(up);
  }

  LoadPlan plan{n, Circuit(n), reference, input_norm};
  // Top-down: level l splits each of the 2^{l-1} branch amplitudes onto
  // fresh qubit l-1, selected by qubits 0..l-2.
  for (int l = 1; l <= n; ++l) {
    emit_multiplexed_rotation(plan.circuit, "ry", thetas[l - 1], l - 1);
    emit_multiplexed_rotation(plan.circuit, "rz", phis[l - 1], l - 1);
  }
  return plan;
}

LoadPlan state_load(const std::vector<int>& bits) {
  const std::uint64_t n_values = bits.size();
  if (n_values < 2 || !is_power_of_two(n_values)) {
    throw std::invalid_argument("bit count must be a power of two >= 2");
  }
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument("entries must be classical bits");
    }
  }
  const int address_qubits = log2_exact(n_values);
  const int n = address_qubits + 1;  // data qubit is the register LSB
  config::require_capacity(n);

  std::vector<std::complex<double>> amps(std::uint64_t{1} << n, 0.0);
  const double w = 1.0 / std::sqrt(static_cast<double>(n_values));
  for (std::uint64_t j = 0; j < n_values; ++j) {
    amps[(j << 1) | static_cast<std::uint64_t>(bits[j])] = w;
  }

  LoadPlan plan{n, Circuit(n), StateVector::from_amplitudes(std::move(amps)),
                1.0};
  for (int q = 0; q < address_qubits; ++q) {
    plan.circuit.gate("h", {q});
  }
  std::vector<int> controls(address_qubits);
  for (int q = 0; q < address_qubits; ++q) controls[q] = q;
  for (std::uint64_t j = 0; j < n_values; ++j) {
    if (bits[j] == 0) continue;
    // Controls fire on |1>, so addresses with 0-bits get an X sandwich.
    for (int q = 0; q < address_qubits; ++q) {
      if (((j >> (address_qubits - 1 - q)) & 1) == 0) {
        plan.circuit.gate("x", {q});
      }
    }
    plan.circuit.gate("x", {address_qubits}, {}, controls);
    for (int q = 0; q < address_qubits; ++q) {
      if (((j >> (address_qubits - 1 - q)) & 1) == 0) {
        plan.circuit.gate("x", {q});
      }
    }
  }
  return plan;
}

double readback_verify(const LoadPlan& plan) {
  const StateVector produced = run_statevector(
      plan.circuit, StateVector::zero_state(plan.circuit.num_qubits()));
  return max_deviation_up_to_phase(produced, plan.prepared_reference);
}

}  // namespace qflow
