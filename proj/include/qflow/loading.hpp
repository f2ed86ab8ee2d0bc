#pragma once

#include <complex>
#include <vector>

#include "qflow/circuit.hpp"
#include "qflow/state.hpp"

namespace qflow {

// A preparation circuit bundled with the state it is supposed to produce
// from |0...0>, so callers can always re-verify the construction.
struct LoadPlan {
  int target_qubits = 0;
  Circuit circuit;
  StateVector prepared_reference;
  // Norm of the raw input before internal normalization, kept so callers
  // can recover physical scale.
  double input_norm = 1.0;
};

// Builds the circuit mapping |0...0> to the normalized value vector (up to
// global phase) out of multiplexed Ry/Rz rotation layers, one layer per
// qubit. Gate count is bounded by 4 * 2^n.
LoadPlan amplitude_load(const std::vector<std::complex<double>>& values);

// Encodes N classical bits as (1/sqrt(N)) sum_j |j>|bits[j]> on
// ceil(log2 N) address qubits plus one data qubit (the register LSB):
// an H layer on the addresses, then a multi-controlled X per 1-bit.
LoadPlan state_load(const std::vector<int>& bits);

// Runs plan.circuit on the zero state; largest amplitude deviation from
// prepared_reference after global-phase alignment.
double readback_verify(const LoadPlan& plan);

}  // namespace qflow
