#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qflow/circuit.hpp"
#include "qflow/pauli.hpp"
#include "qflow/state.hpp"

namespace qflow {

// Hermitian observable, held as a dense matrix or a weighted Pauli sum.
class Hamiltonian {
 public:
  static Hamiltonian from_dense(Eigen::MatrixXcd m);
  static Hamiltonian from_pauli_terms(
      std::vector<std::pair<double, std::string>> terms);

  int num_qubits() const { return num_qubits_; }
  bool is_pauli_sum() const { return !terms_.empty(); }
  const std::vector<std::pair<double, PauliString>>& terms() const {
    return terms_;
  }

  double expectation(const StateVector& state) const;
  Eigen::MatrixXcd to_dense() const;
  // Dense diagonalization; the small-register oracle for bounds.
  double min_eigenvalue() const;

 private:
  int num_qubits_ = 0;
  Eigen::MatrixXcd dense_;
  std::vector<std::pair<double, PauliString>> terms_;
};

double expectation(const Hamiltonian& h, const StateVector& state);

// Hardware-efficient trial family: per layer, one U3 on every qubit then
// a CNOT chain q -> q+1. Three angles per qubit per layer.
struct Ansatz {
  int num_qubits = 1;
  int num_layers = 1;

  int parameter_count() const { return 3 * num_qubits * num_layers; }
};

Circuit ansatz_circuit(const Ansatz& ansatz,
                       const std::vector<double>& parameters);
StateVector ansatz_state(const Ansatz& ansatz,
                         const std::vector<double>& parameters);

struct VqeOptions {
  double tolerance = 1e-8;
  // Simplex iterations per restart.
  int max_iterations = 4000;
  std::uint64_t seed = 1;
  // Independent random restarts; the lowest energy wins, ties broken by
  // restart index.
  int restarts = 5;
  // 0 evaluates expectations exactly; a positive count samples them with
  // that many shots per Pauli term (Pauli-sum observables only).
  std::uint64_t shots = 0;
};

struct VqeResult {
  std::vector<double> optimal_parameters;
  double optimal_energy = 0.0;
  // (iteration, best energy so far) of the winning restart; non-increasing.
  std::vector<std::pair<int, double>> trace;
  bool converged = false;
  std::int64_t evaluations = 0;
};

// Minimizes expectation(h, ansatz_state(k)) with a derivative-free simplex
// search. Convergence means the best energy improved by less than
// tolerance over a full simplex sweep; hitting max_iterations instead
// reports converged = false with the best point found.
VqeResult vqe_solve(const Hamiltonian& h, const Ansatz& ansatz,
                    const VqeOptions& options = {});

// Dirichlet 3-point Laplacian (diag 2, off -1, scaled 1/h^2) plus the
// constant unit forcing vector: the smallest useful transport problem.
std::pair<Hamiltonian, std::vector<double>> build_poisson_operator(
    int grid_points, double spacing = 1.0);

struct StokesResult {
  std::vector<std::complex<double>> solution;
  double relative_residual = 0.0;
  VqeResult search;
};

// Solves A x = rhs variationally: the ansatz supplies the direction and a
// closed-form complex scale minimizes ||c A psi - rhs|| for each trial, so
// the search runs over angles only.
StokesResult solve_stokes_vqe(int grid_points, const std::vector<double>& rhs,
                              int num_layers, const VqeOptions& options = {});

}  // namespace qflow
