#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qflow/pauli.hpp"
#include "qflow/state.hpp"

namespace qflow {

// One additive piece of a Hamiltonian: weight times either a Pauli string
// or a dense Hermitian matrix over the full register.
struct HamiltonianTerm {
  double coefficient = 1.0;
  std::optional<PauliString> pauli;
  Eigen::MatrixXcd dense;  // used only when pauli is empty

  static HamiltonianTerm pauli_term(double coefficient, std::string letters);
  // Validates Hermiticity within 1e-12 and power-of-two dimension.
  static HamiltonianTerm dense_term(double coefficient, Eigen::MatrixXcd m);

  int num_qubits() const;
  Eigen::MatrixXcd to_dense() const;  // coefficient folded in
};

struct TrotterPlan {
  std::vector<HamiltonianTerm> terms;
  double total_time = 0.0;
  int num_steps = 1;
  int order = 1;  // 1 or 2
  // Default evolution is exp(-iHt); flip for the +i convention.
  bool positive_exponent = false;
};

// exp(-i (sum terms) t) |state> by dense diagonalization; register capped
// at 10 qubits.
StateVector evolve_exact(const std::vector<HamiltonianTerm>& terms, double t,
                         const StateVector& state,
                         bool positive_exponent = false);

// num_steps repetitions of the per-term exponential product: order 1 is
// the terms in list order; order 2 is the symmetric half-step sandwich.
// Pauli terms exponentiate in closed form, so they scale past the dense
// capacity limit.
StateVector evolve_trotter(const TrotterPlan& plan, const StateVector& state);

// Strang-split evolution of i dpsi/dt = -(1/2m) psi_xx + V psi on a
// periodic grid: half potential phase, full kinetic phase in the Fourier
// basis, half potential phase, repeated num_steps times. The sample norm
// carries through unchanged.
std::vector<std::complex<double>> split_step_schrodinger(
    const std::vector<std::complex<double>>& initial,
    const std::vector<double>& potential, double mass, double t,
    int num_steps, double domain_length = 6.283185307179586);

}  // namespace qflow
