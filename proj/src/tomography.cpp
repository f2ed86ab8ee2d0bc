#include "qflow/tomography.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qflow/config.hpp"
#include "qflow/rng.hpp"

namespace qflow {

namespace {

constexpr double kPsdTol = 1e-9;

void check_square_same_dim(const std::vector<Eigen::MatrixXcd>& elements) {
  if (elements.empty()) {
    throw std::invalid_argument("measurement needs at least one element");
  }
  const Eigen::Index d = elements.front().rows();
  for (const auto& e : elements) {
    if (e.rows() != d || e.cols() != d) {
      throw std::invalid_argument("measurement elements must share one square dimension");
    }
  }
}

// Letters of Pauli string `index` written base-4 (qubit 0 = leading digit).
PauliString pauli_from_index(std::uint64_t index, int num_qubits) {
  static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string letters(num_qubits, 'I');
  for (int q = 0; q < num_qubits; ++q) {
    letters[q] = kLetters[(index >> (2 * (num_qubits - 1 - q))) & 3];
  }
  return PauliString(letters);
}

}  // namespace

PovmSet::PovmSet(std::vector<Eigen::MatrixXcd> elements)
    : elements_(std::move(elements)) {
  check_square_same_dim(elements_);
  const Eigen::Index d = elements_.front().rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : elements_) {
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > config::kAnalyticTol) {
      throw std::invalid_argument("measurement element is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
      throw std::invalid_argument("measurement element is not positive");
    }
    sum += e;
  }
  if ((sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() >
      config::kAnalyticTol) {
    throw std::invalid_argument("measurement elements do not sum to identity");
  }
}

std::vector<double> povm_probabilities(const DensityMatrix& rho,
                                       const PovmSet& povm) {
  if (povm.elements().front().rows() != static_cast<Eigen::Index>(rho.dim())) {
    throw std::invalid_argument("measurement dimension does not match state");
  }
  std::vector<double> probs;
  probs.reserve(povm.size());
  for (const auto& e : povm.elements()) {
    double p = (e * rho.entries()).trace().real();
    if (p < 0.0) {
      if (p < -kPsdTol) {
        throw std::runtime_error("negative outcome probability");
      }
      p = 0.0;
    }
    probs.push_back(p);
  }
  return probs;
}

DensityMatrix post_measurement_state(const DensityMatrix& rho,
                                     const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() ||
      a.rows() != static_cast<Eigen::Index>(rho.dim())) {
    throw std::invalid_argument("operator dimension does not match state");
  }
  const Eigen::MatrixXcd numerator = a * rho.entries() * a.adjoint();
  const double probability = numerator.trace().real();
  if (probability <= 1e-12) {
    throw std::invalid_argument("outcome has (near-)zero probability");
  }
  return DensityMatrix(numerator / probability);
}

Circuit basis_rotation(const PauliString& p) {
  Circuit c(p.num_qubits());
  for (int q = 0; q < p.num_qubits(); ++q) {
    switch (p.letter(q)) {
      case 'X':
        c.gate("h", {q});
        break;
      case 'Y':
        c.gate("phase", {q}, {-std::numbers::pi / 2.0});
        c.gate("h", {q});
        break;
      default:
        break;
    }
  }
  return c;
}

double sampled_pauli_expectation(const StateVector& state,
                                 const PauliString& p, std::uint64_t shots,
                                 std::uint64_t seed) {
  if (state.num_qubits() != p.num_qubits()) {
    throw std::invalid_argument("pauli string length does not match state");
  }
  if (p.is_identity()) return 1.0;
  const ShotHistogram hist = sample(basis_rotation(p), state, shots, seed);
  std::int64_t balance = 0;
  for (const auto& [bits, count] : hist.counts) {
    int parity = 0;
    for (int q = 0; q < p.num_qubits(); ++q) {
      if (p.letter(q) != 'I' && bits[q] == '1') parity ^= 1;
    }
    balance += parity ? -static_cast<std::int64_t>(count)
                      : static_cast<std::int64_t>(count);
  }
  return static_cast<double>(balance) / static_cast<double>(shots);
}

DensityEstimate reconstruct_density(const Circuit& circuit,
                                    std::uint64_t shots_per_basis,
                                    std::uint64_t seed,
                                    const TomographyOptions& options) {
  if (circuit.has_measurements()) {
    throw std::invalid_argument("tomography expects a measurement-free circuit");
  }
  if (shots_per_basis < 100) {
    throw std::invalid_argument("tomography needs at least 100 shots per basis");
  }
  const int n = circuit.num_qubits();
  if (n > 3 && !options.allow_large_registers) {
    throw std::invalid_argument(
        "reconstruction over more than 3 qubits costs 4^n bases; "
        "set allow_large_registers to force");
  }
  const StateVector state =
      run_statevector(circuit, StateVector::zero_state(n));

  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t num_strings = std::uint64_t{1} << (2 * n);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) /
                         static_cast<double>(dim);
  Eigen::MatrixXd variance = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint64_t b = 1; b < num_strings; ++b) {
    const PauliString p = pauli_from_index(b, n);
    const double m = sampled_pauli_expectation(
        state, p, shots_per_basis, philox::derive_stream(seed, b));
    const Eigen::MatrixXcd dense = p.to_dense();
    rho += (m / static_cast<double>(dim)) * dense;
    // Each string touches entry (j,k) with |P_jk| in {0,1}; the +-1
    // outcome mean has variance (1 - m^2)/shots.
    const double var_m = std::max(0.0, 1.0 - m * m) /
                         static_cast<double>(shots_per_basis);
    variance += var_m * dense.cwiseAbs2();
  }

  DensityEstimate estimate{
      DensityMatrix(rho),
      variance.cwiseSqrt() / static_cast<double>(dim),
      shots_per_basis,
      seed,
  };
  if (options.clip_to_physical) {
    estimate.rho = clip_to_physical(estimate.rho);
  }
  return estimate;
}

DensityMatrix reconstruct_density_exact(const Circuit& circuit) {
  if (circuit.has_measurements()) {
    throw std::invalid_argument("tomography expects a measurement-free circuit");
  }
  const int n = circuit.num_qubits();
  config::require_capacity(2 * n);  // 4^n strings, dense assembly
  const StateVector state =
      run_statevector(circuit, StateVector::zero_state(n));
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) /
                         static_cast<double>(dim);
  const std::uint64_t num_strings = std::uint64_t{1} << (2 * n);
  for (std::uint64_t b = 1; b < num_strings; ++b) {
    const PauliString p = pauli_from_index(b, n);
    rho += (pauli_expectation(state, p) / static_cast<double>(dim)) *
           p.to_dense();
  }
  return DensityMatrix(rho);
}

DensityMatrix clip_to_physical(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
  Eigen::VectorXd values = es.eigenvalues().cwiseMax(0.0);
  const double total = values.sum();
  if (total <= 0.0) {
    throw std::runtime_error("clipping removed all spectral weight");
  }
  values /= total;
  return DensityMatrix(es.eigenvectors() * values.asDiagonal() *
                       es.eigenvectors().adjoint());
}

}  // namespace qflow
