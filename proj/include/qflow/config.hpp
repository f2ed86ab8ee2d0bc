#pragma once

#include <cstdint>

namespace qflow::config {

// Analytic identities (unitarity, norms, closed-form values) are checked
// against this tolerance.
inline constexpr double kAnalyticTol = 1e-10;

// User-supplied data (amplitude vectors, probability lists) is validated
// against this looser tolerance before being normalized internally.
inline constexpr double kInputTol = 1e-8;

// Largest register the library will allocate, as a qubit count. The default
// (2^26 amplitudes, 1 GiB of doubles) is settable at runtime for machines
// with more or less memory.
int max_qubits();
void set_max_qubits(int n);

// Worker count used by the amplitude-partitioning helpers. Results are
// required to be bitwise identical for every value; see parallel.hpp.
int num_threads();
void set_num_threads(int n);

// Throws std::length_error if a register of `num_qubits` exceeds the budget.
void require_capacity(int num_qubits);

}  // namespace qflow::config
