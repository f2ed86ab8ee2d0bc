#pragma once

#include <complex>
#include <vector>

#include "qflow/circuit.hpp"
#include "qflow/state.hpp"

namespace qflow {

struct QftSpec {
  int num_qubits = 1;
  // When set, a final SWAP layer undoes the bit reversal so the circuit's
  // dense unitary is literally the DFT matrix F[j][k] = w^{jk}/sqrt(N).
  bool include_final_swaps = true;
};

// H plus controlled-PHASE ladder, forward convention w = exp(+2*pi*i/N).
// Gate count: n(n+1)/2 + floor(n/2) with swaps enabled.
Circuit qft_circuit(const QftSpec& spec);
Circuit inverse_qft_circuit(const QftSpec& spec);

// out[k] = (1/sqrt(N)) sum_j in[j] w^{jk}, and its inverse.
StateVector apply_qft(const StateVector& state);
StateVector apply_inverse_qft(const StateVector& state);

// Spectral derivative of periodic samples f(x_j), x_j = j * (domain/N):
// transform, multiply each mode by (i * physical wavenumber), transform
// back. wavenumber_scale is 2*pi / domain_length. The unpaired highest
// mode is dropped (its derivative sign is ambiguous on a real grid).
std::vector<std::complex<double>> qft_derivative_demo(
    const std::vector<std::complex<double>>& samples, double wavenumber_scale);

}  // namespace qflow
