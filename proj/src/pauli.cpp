#include "qflow/pauli.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "qflow/config.hpp"
#include "qflow/parallel.hpp"

namespace qflow {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Phase picked up by source amplitude i when letter acts on a bit of i.
inline std::complex<double> letter_phase(char letter, bool bit) {
  switch (letter) {
    case 'I':
    case 'X':
      return {1.0, 0.0};
    case 'Y':
      return bit ? -kI : kI;
    case 'Z':
      return bit ? std::complex<double>{-1.0, 0.0}
                 : std::complex<double>{1.0, 0.0};
    default:
      throw std::invalid_argument("pauli letter must be one of I X Y Z");
  }
}

Eigen::Matrix2cd letter_matrix(char letter) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (letter) {
    case 'I':
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 'X':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli letter must be one of I X Y Z");
  }
  return m;
}

}  // namespace

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) {
    throw std::invalid_argument("pauli string must have at least one letter");
  }
  for (char c : letters_) {
    letter_phase(c, false);  // validates
  }
}

bool PauliString::is_identity() const {
  for (char c : letters_) {
    if (c != 'I') return false;
  }
  return true;
}

StateVector PauliString::apply(const StateVector& state) const {
  const int n = state.num_qubits();
  if (n != num_qubits()) {
    throw std::invalid_argument("pauli string length does not match state");
  }
  const std::uint64_t size = state.size();
  std::uint64_t flip = 0;
  for (int q = 0; q < n; ++q) {
    if (letters_[q] == 'X' || letters_[q] == 'Y') {
      flip |= std::uint64_t{1} << (n - 1 - q);
    }
  }
  const auto& in = state.amplitudes();
  std::vector<std::complex<double>> out(size);
  parallel_for(size, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t j = begin; j < end; ++j) {
      const std::uint64_t i = j ^ flip;
      std::complex<double> phase{1.0, 0.0};
      for (int q = 0; q < n; ++q) {
        const char c = letters_[q];
        if (c == 'Y' || c == 'Z') {
          phase *= letter_phase(c, ((i >> (n - 1 - q)) & 1) != 0);
        }
      }
      out[j] = phase * in[i];
    }
  });
  return StateVector::from_raw(n, std::move(out));
}

StateVector PauliString::apply_exp(const StateVector& state,
                                   double angle) const {
  const int n = state.num_qubits();
  if (n != num_qubits()) {
    throw std::invalid_argument("pauli string length does not match state");
  }
  const std::uint64_t size = state.size();
  std::uint64_t flip = 0;
  for (int q = 0; q < n; ++q) {
    if (letters_[q] == 'X' || letters_[q] == 'Y') {
      flip |= std::uint64_t{1} << (n - 1 - q);
    }
  }
  const double c = std::cos(angle);
  const std::complex<double> is = kI * std::sin(angle);
  const auto& in = state.amplitudes();
  std::vector<std::complex<double>> out(size);
  parallel_for(size, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t j = begin; j < end; ++j) {
      const std::uint64_t i = j ^ flip;
      std::complex<double> phase{1.0, 0.0};
      for (int q = 0; q < n; ++q) {
        const char l = letters_[q];
        if (l == 'Y' || l == 'Z') {
          phase *= letter_phase(l, ((i >> (n - 1 - q)) & 1) != 0);
        }
      }
      out[j] = c * in[j] + is * phase * in[i];
    }
  });
  return StateVector::from_raw(n, std::move(out));
}

Eigen::MatrixXcd PauliString::to_dense() const {
  // Fold right-to-left so that letter 0 lands as the leftmost (most
  // significant) Kronecker factor.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    const Eigen::Matrix2cd p = letter_matrix(*it);
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    next.topLeftCorner(m.rows(), m.cols()) = p(0, 0) * m;
    next.topRightCorner(m.rows(), m.cols()) = p(0, 1) * m;
    next.bottomLeftCorner(m.rows(), m.cols()) = p(1, 0) * m;
    next.bottomRightCorner(m.rows(), m.cols()) = p(1, 1) * m;
    m = std::move(next);
  }
  return m;
}

double pauli_expectation(const StateVector& state, const PauliString& p) {
  const std::complex<double> v = inner_product(state, p.apply(state));
  if (std::abs(v.imag()) > config::kAnalyticTol) {
    throw std::runtime_error("pauli expectation has a nonreal residue");
  }
  return v.real();
}

}  // namespace qflow
