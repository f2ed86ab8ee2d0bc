#pragma once

#include <string>

#include <Eigen/Dense>

#include "qflow/state.hpp"

namespace qflow {

// Tensor product of single-qubit Paulis, one letter per qubit, letter 0
// acting on qubit 0 (the basis-index MSB). The induced 2^n operator is
// Hermitian and unitary with eigenvalues +-1.
class PauliString {
 public:
  explicit PauliString(std::string letters);

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  char letter(int qubit) const { return letters_.at(qubit); }
  bool is_identity() const;

  // P|psi>. Permutation plus phases: O(2^n), no matrix is built.
  StateVector apply(const StateVector& state) const;

  // exp(i * angle * P)|psi> = cos(angle)|psi> + i sin(angle) P|psi>.
  StateVector apply_exp(const StateVector& state, double angle) const;

  Eigen::MatrixXcd to_dense() const;

 private:
  std::string letters_;
};

// <psi|P|psi>; the imaginary residue (exactly 0 in exact arithmetic) is
// checked against 1e-10 and dropped.
double pauli_expectation(const StateVector& state, const PauliString& p);

}  // namespace qflow
