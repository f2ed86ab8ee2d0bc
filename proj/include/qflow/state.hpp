#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qflow {

using cplx = std::complex<double>;

// Full 2^n amplitude vector of an n-qubit register. Qubit 0 is the MOST
// significant bit of the basis index, so |q0 q1 ... q_{n-1}> reads
// left-to-right: basis index 2 of a 2-qubit register is |10>.
//
// Value semantics: every operation returns a fresh state and never mutates
// its inputs. Read access may be shared freely across threads.
class StateVector {
 public:
  static StateVector zero_state(int num_qubits);

  // Length must be a power of two and the norm within 1e-8 of 1; the stored
  // amplitudes are renormalized exactly.
  static StateVector from_amplitudes(std::vector<cplx> amplitudes);

  // Engine constructor: size check only, caller guarantees the norm (used
  // where an operation is norm-preserving by construction).
  static StateVector from_raw(int num_qubits, std::vector<cplx> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t size() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::uint64_t basis_index) const { return amps_.at(basis_index); }

  double norm() const;
  std::vector<double> probabilities() const;

  // Bit of qubit q in basis index i under the MSB-first convention.
  int bit(std::uint64_t basis_index, int qubit) const {
    return static_cast<int>((basis_index >> (num_qubits_ - 1 - qubit)) & 1ull);
  }

  // Engine access for gate application and friends.
  std::vector<cplx>& raw() { return amps_; }
  const std::vector<cplx>& raw() const { return amps_; }

 private:
  StateVector(int num_qubits, std::vector<cplx> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_ = 0;
  std::vector<cplx> amps_;
};

// amplitude[i * 2^m + j] = a[i] * b[j] with m = b.num_qubits(): a's qubits
// become the high (leading) qubits of the product register.
StateVector tensor(const StateVector& a, const StateVector& b);

std::complex<double> inner_product(const StateVector& a, const StateVector& b);

// Largest |amplitude| difference after rotating both states so that the
// amplitude at a's largest-magnitude index is real positive. This is the
// global-phase-insensitive distance used throughout the tests.
double max_deviation_up_to_phase(const StateVector& a, const StateVector& b);

// Single-qubit state as e^{i alpha} [cos(beta/2)|0> + e^{i gamma} sin(beta/2)|1>].
// alpha = arg(<0|psi>) so reconstruction is exact; it is 0 for states whose
// leading amplitude is real non-negative. beta in [0, pi], gamma in [0, 2pi).
struct BlochCoordinates {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

BlochCoordinates bloch_decompose(const StateVector& state);
StateVector bloch_reconstruct(const BlochCoordinates& c);

// Hermitian, unit-trace 2^n x 2^n matrix. Hermiticity and trace are enforced
// at construction; positivity is a property of physically constructed
// matrices (ensembles, post-measurement states) and is checked where those
// are produced, because finite-shot tomography legitimately yields small
// negative eigenvalues.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix from_state(const StateVector& state);

  int num_qubits() const { return num_qubits_; }
  const Eigen::MatrixXcd& entries() const { return m_; }
  std::uint64_t dim() const { return static_cast<std::uint64_t>(m_.rows()); }

  double min_eigenvalue() const;
  std::vector<double> diagonal() const;

 private:
  int num_qubits_ = 0;
  Eigen::MatrixXcd m_;
};

DensityMatrix density_from_ensemble(
    const std::vector<std::pair<double, StateVector>>& ensemble);

// JSON round-trip: {"num_qubits": n, "amplitudes": [[re, im], ...]}.
std::string state_to_json(const StateVector& state);
StateVector state_from_json(const std::string& text);

}  // namespace qflow
