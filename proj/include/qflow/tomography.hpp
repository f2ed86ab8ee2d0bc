#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qflow/circuit.hpp"
#include "qflow/pauli.hpp"
#include "qflow/state.hpp"

namespace qflow {

// Measurement with positive elements summing to identity; outcome a has
// probability Tr(elements[a] * rho). Validated at construction.
class PovmSet {
 public:
  explicit PovmSet(std::vector<Eigen::MatrixXcd> elements);

  const std::vector<Eigen::MatrixXcd>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<Eigen::MatrixXcd> elements_;
};

std::vector<double> povm_probabilities(const DensityMatrix& rho,
                                       const PovmSet& povm);

// rho_f = A rho A^dag / Tr(A^dag A rho). Errors when the outcome
// probability is below 1e-12.
DensityMatrix post_measurement_state(const DensityMatrix& rho,
                                     const Eigen::MatrixXcd& a);

struct DensityEstimate {
  DensityMatrix rho;
  Eigen::MatrixXd entry_stderr;  // 1-sigma per entry magnitude
  std::uint64_t shots_per_basis = 0;
  std::uint64_t seed = 0;
};

struct TomographyOptions {
  // Registers above 3 qubits need 4^n bases; refuse unless forced.
  bool allow_large_registers = false;
  // Clip negative eigenvalues to zero and renormalize the trace.
  bool clip_to_physical = false;
};

// Runs the circuit, measures every non-identity Pauli string in its own
// rotated basis with shots_per_basis shots, and assembles
// rho = (1/2^n) sum_P <P> P with the identity coefficient fixed at 1,
// so the trace is exactly 1. Linear inversion: finite shots can leave
// small negative eigenvalues unless options.clip_to_physical is set.
DensityEstimate reconstruct_density(const Circuit& circuit,
                                    std::uint64_t shots_per_basis,
                                    std::uint64_t seed,
                                    const TomographyOptions& options = {});

// Infinite-shot bypass: same assembly fed with exact expectations.
DensityMatrix reconstruct_density_exact(const Circuit& circuit);

// Measurement-basis change for one Pauli string: per qubit, X appends H
// and Y appends PHASE(-pi/2) then H, mapping P eigenstates onto Z
// eigenstates so computational readout samples P.
Circuit basis_rotation(const PauliString& p);

// Sampled estimate of <P> from shots outcomes in the rotated basis.
double sampled_pauli_expectation(const StateVector& state,
                                 const PauliString& p, std::uint64_t shots,
                                 std::uint64_t seed);

DensityMatrix clip_to_physical(const DensityMatrix& rho);

}  // namespace qflow
