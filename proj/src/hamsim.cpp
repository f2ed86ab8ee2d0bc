#include "qflow/hamsim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qflow/config.hpp"
#include "qflow/qft.hpp"

namespace qflow {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr int kDenseQubitLimit = 10;

bool is_power_of_two(Eigen::Index v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(Eigen::Index v) {
  int n = 0;
  while ((Eigen::Index(1) << n) < v) ++n;
  return n;
}

Eigen::MatrixXcd sum_dense(const std::vector<HamiltonianTerm>& terms) {
  if (terms.empty()) {
    throw std::invalid_argument("need at least one term");
  }
  const int n = terms.front().num_qubits();
  if (n > kDenseQubitLimit) {
    throw std::length_error("dense exponentiation capped at 10 qubits");
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : terms) {
    if (term.num_qubits() != n) {
      throw std::invalid_argument("terms act on different register sizes");
    }
    h += term.to_dense();
  }
  return h;
}

// exp(sign * i * H * t) |psi> for Hermitian dense H.
StateVector apply_dense_exponential(const Eigen::MatrixXcd& h, double t,
                                    double sign, const StateVector& state) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::Index dim = h.rows();
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = state.amplitude(i);
  Eigen::VectorXcd rotated = es.eigenvectors().adjoint() * psi;
  for (Eigen::Index i = 0; i < dim; ++i) {
    rotated(i) *= std::exp(kI * (sign * es.eigenvalues()(i) * t));
  }
  psi = es.eigenvectors() * rotated;
  std::vector<std::complex<double>> out(dim);
  for (Eigen::Index i = 0; i < dim; ++i) out[i] = psi(i);
  return StateVector::from_raw(state.num_qubits(), std::move(out));
}

// One factor exp(sign * i * coefficient * angle_scale * term) of the
// product formula.
StateVector apply_term_exponential(const HamiltonianTerm& term,
                                   double angle_scale, double sign,
                                   const StateVector& state) {
  if (term.pauli) {
    // exp(i a P) = cos(a) I + i sin(a) P in closed form.
    return term.pauli->apply_exp(state, sign * term.coefficient * angle_scale);
  }
  return apply_dense_exponential(term.dense, term.coefficient * angle_scale,
                                 sign, state);
}

}  // namespace

HamiltonianTerm HamiltonianTerm::pauli_term(double coefficient,
                                            std::string letters) {
  HamiltonianTerm term;
  term.coefficient = coefficient;
  term.pauli = PauliString(std::move(letters));
  return term;
}

HamiltonianTerm HamiltonianTerm::dense_term(double coefficient,
                                            Eigen::MatrixXcd m) {
  if (m.rows() != m.cols() || !is_power_of_two(m.rows())) {
    throw std::invalid_argument("operator must be square with 2^n dimension");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("operator must be Hermitian");
  }
  HamiltonianTerm term;
  term.coefficient = coefficient;
  term.dense = std::move(m);
  return term;
}

int HamiltonianTerm::num_qubits() const {
  return pauli ? pauli->num_qubits() : log2_exact(dense.rows());
}

Eigen::MatrixXcd HamiltonianTerm::to_dense() const {
  return coefficient * (pauli ? pauli->to_dense() : dense);
}

StateVector evolve_exact(const std::vector<HamiltonianTerm>& terms, double t,
                         const StateVector& state, bool positive_exponent) {
  const Eigen::MatrixXcd h = sum_dense(terms);
  if (h.rows() != static_cast<Eigen::Index>(state.size())) {
    throw std::invalid_argument("state size does not match the register");
  }
  return apply_dense_exponential(h, t, positive_exponent ? 1.0 : -1.0, state);
}

StateVector evolve_trotter(const TrotterPlan& plan, const StateVector& state) {
  if (plan.num_steps < 1) {
    throw std::invalid_argument("step count must be at least 1");
  }
  if (plan.order != 1 && plan.order != 2) {
    throw std::invalid_argument("product formula order must be 1 or 2");
  }
  if (plan.terms.empty()) {
    throw std::invalid_argument("need at least one term");
  }
  for (const auto& term : plan.terms) {
    if (term.num_qubits() != state.num_qubits()) {
      throw std::invalid_argument("term register does not match state");
    }
  }
  const double sign = plan.positive_exponent ? 1.0 : -1.0;
  const double dt = plan.total_time / plan.num_steps;
  const std::size_t m = plan.terms.size();
  StateVector psi = state;
  for (int s = 0; s < plan.num_steps; ++s) {
    if (plan.order == 1) {
      for (const auto& term : plan.terms) {
        psi = apply_term_exponential(term, dt, sign, psi);
      }
    } else {
      // Half steps forward, a full step on the last term, half steps back.
      for (std::size_t i = 0; i + 1 < m; ++i) {
        psi = apply_term_exponential(plan.terms[i], dt / 2.0, sign, psi);
      }
      psi = apply_term_exponential(plan.terms[m - 1], dt, sign, psi);
      for (std::size_t i = m - 1; i-- > 0;) {
        psi = apply_term_exponential(plan.terms[i], dt / 2.0, sign, psi);
      }
    }
  }
  return psi;
}

std::vector<std::complex<double>> split_step_schrodinger(
    const std::vector<std::complex<double>>& initial,
    const std::vector<double>& potential, double mass, double t,
    int num_steps, double domain_length) {
  const std::uint64_t n = initial.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid size must be a power of two >= 2");
  }
  if (potential.size() != n) {
    throw std::invalid_argument("potential grid does not match state grid");
  }
  if (mass <= 0.0 || domain_length <= 0.0) {
    throw std::invalid_argument("mass and domain length must be positive");
  }
  if (num_steps < 0) {
    throw std::invalid_argument("step count cannot be negative");
  }
  if (num_steps == 0) return initial;

  double norm2 = 0.0;
  for (const auto& a : initial) norm2 += std::norm(a);
  if (norm2 == 0.0) return initial;
  const double in_norm = std::sqrt(norm2);

  int qubits = 0;
  while ((std::uint64_t{1} << qubits) < n) ++qubits;
  const double dt = t / num_steps;
  const double dk = 2.0 * std::numbers::pi / domain_length;

  std::vector<std::complex<double>> half_v(n), kinetic(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    half_v[j] = std::exp(-kI * (potential[j] * dt / 2.0));
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    const double m_signed = k < n / 2
                                ? static_cast<double>(k)
                                : static_cast<double>(k) - static_cast<double>(n);
    const double kappa = dk * m_signed;  // sign is immaterial under kappa^2
    kinetic[k] = std::exp(-kI * (kappa * kappa / (2.0 * mass) * dt));
  }

  std::vector<std::complex<double>> amps(initial);
  for (auto& a : amps) a /= in_norm;
  StateVector psi = StateVector::from_raw(qubits, std::move(amps));
  for (int s = 0; s < num_steps; ++s) {
    std::vector<std::complex<double>> buf(psi.amplitudes());
    for (std::uint64_t j = 0; j < n; ++j) buf[j] *= half_v[j];
    psi = apply_qft(StateVector::from_raw(qubits, std::move(buf)));
    buf = psi.amplitudes();
    for (std::uint64_t k = 0; k < n; ++k) buf[k] *= kinetic[k];
    psi = apply_inverse_qft(StateVector::from_raw(qubits, std::move(buf)));
    buf = psi.amplitudes();
    for (std::uint64_t j = 0; j < n; ++j) buf[j] *= half_v[j];
    psi = StateVector::from_raw(qubits, std::move(buf));
  }
  std::vector<std::complex<double>> out(psi.amplitudes());
  for (auto& a : out) a *= in_norm;
  return out;
}

}  // namespace qflow
