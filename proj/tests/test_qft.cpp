#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "qflow/circuit.hpp"
#include "qflow/qft.hpp"
#include "qflow/state.hpp"
#include "support/oracles.hpp"

using qflow::cplx;
using qflow::StateVector;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector four_value_state() {
  return StateVector::from_amplitudes({cplx(0.0, 1.0 / 3), cplx(2.0 / 3, 1.0 / 3),
                                       cplx(0.0, std::sqrt(2.0) / 3),
                                       cplx(1.0 / 3, 0.0)});
}

// Transform of an arbitrary (possibly unnormalized) vector by factoring the
// norm through the unit-state engine.
std::vector<cplx> qft_of_vector(const std::vector<cplx>& v) {
  double norm2 = 0.0;
  for (const auto& a : v) norm2 += std::norm(a);
  const double norm = std::sqrt(norm2);
  std::vector<cplx> unit(v);
  for (auto& a : unit) a /= norm;
  auto out = qflow::apply_qft(StateVector::from_amplitudes(std::move(unit)));
  std::vector<cplx> scaled(out.amplitudes());
  for (auto& a : scaled) a *= norm;
  return scaled;
}

}  // namespace

TEST_SUITE("qft") {
  TEST_CASE("one qubit reduces to a hadamard") {
    auto c = qflow::qft_circuit({.num_qubits = 1, .include_final_swaps = true});
    CHECK(c.gate_count() == 1);
    CHECK(c.instructions()[0].op == "h");
  }

  TEST_CASE("two-qubit dense unitary is the fourth-order transform matrix") {
    auto u = oracles::dense_unitary_of(
        qflow::qft_circuit({.num_qubits = 2, .include_final_swaps = true}));
    Eigen::MatrixXcd expected(4, 4);
    const cplx i(0.0, 1.0);
    expected << 1, 1, 1, 1,
                1, i, -1, -i,
                1, -1, 1, -1,
                1, -i, -1, i;
    expected *= 0.5;
    CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("dense unitaries match the classical transform up to six qubits") {
    for (int n : {3, 6}) {
      auto u = oracles::dense_unitary_of(
          qflow::qft_circuit({.num_qubits = n, .include_final_swaps = true}));
      CHECK((u - oracles::dft_matrix(1 << n)).cwiseAbs().maxCoeff() < 1e-12);
      const auto dim = u.rows();
      CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(dim, dim))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("gate count follows the ladder-plus-swaps formula") {
    for (int n = 1; n <= 6; ++n) {
      auto swapped = qflow::qft_circuit({.num_qubits = n, .include_final_swaps = true});
      CHECK(swapped.gate_count() == std::size_t(n * (n + 1) / 2 + n / 2));
      auto raw = qflow::qft_circuit({.num_qubits = n, .include_final_swaps = false});
      CHECK(raw.gate_count() == std::size_t(n * (n + 1) / 2));
    }
  }

  TEST_CASE("swap-free variant differs by exactly the bit reversal") {
    const int n = 3;
    auto with = oracles::dense_unitary_of(
        qflow::qft_circuit({.num_qubits = n, .include_final_swaps = true}));
    auto without = oracles::dense_unitary_of(
        qflow::qft_circuit({.num_qubits = n, .include_final_swaps = false}));
    for (int row = 0; row < 8; ++row) {
      int reversed = ((row & 1) << 2) | (row & 2) | ((row >> 2) & 1);
      CHECK((with.row(row) - without.row(reversed)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("four-value state lands on the analytic spectrum") {
    auto out = qflow::apply_qft(four_value_state());
    // Closed-form spectral weights of (i, 2+i, sqrt(2) i, 1)/3, confirmed
    // against the direct-summation oracle: (15+4*sqrt(2))/36,
    // (7-4*sqrt(2))/36, 11/36, 3/36. They sum to 1.
    const std::vector<double> expected = {
        (15.0 + 4.0 * std::sqrt(2.0)) / 36.0, (7.0 - 4.0 * std::sqrt(2.0)) / 36.0,
        11.0 / 36.0, 1.0 / 12.0};
    auto probs = out.probabilities();
    for (int k = 0; k < 4; ++k)
      CHECK(probs[std::size_t(k)] == doctest::Approx(expected[std::size_t(k)]).epsilon(1e-12));

    auto oracle = oracles::classical_dft(four_value_state().amplitudes());
    CHECK(oracles::max_abs_diff(out.amplitudes(), oracle) < 1e-12);
  }

  TEST_CASE("uniform input concentrates on the zero bin") {
    std::vector<cplx> uniform(16, 0.25);
    auto out = qflow::apply_qft(StateVector::from_amplitudes(uniform));
    CHECK(std::abs(out.amplitude(0) - 1.0) < 1e-12);
    for (std::uint64_t k = 1; k < 16; ++k) CHECK(std::abs(out.amplitude(k)) < 1e-12);
  }

  TEST_CASE("random states match the direct-summation oracle") {
    for (std::uint64_t key = 1; key <= 100; ++key) {
      auto s = oracles::random_state(4, key * 3 + 1);
      auto fast = qflow::apply_qft(s);
      auto oracle = oracles::classical_dft(s.amplitudes());
      CHECK(oracles::max_abs_diff(fast.amplitudes(), oracle) < 1e-10);
      CHECK(std::abs(fast.norm() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("inverse transform round-trips and matches the adjoint") {
    auto s = four_value_state();
    auto back = qflow::apply_inverse_qft(qflow::apply_qft(s));
    CHECK(oracles::max_abs_diff(back.amplitudes(), s.amplitudes()) < 1e-10);

    auto r = oracles::random_state(5, 808);
    auto round = qflow::apply_inverse_qft(qflow::apply_qft(r));
    CHECK(oracles::max_abs_diff(round.amplitudes(), r.amplitudes()) < 1e-10);

    auto forward = oracles::dense_unitary_of(
        qflow::qft_circuit({.num_qubits = 3, .include_final_swaps = true}));
    auto inverse = oracles::dense_unitary_of(
        qflow::inverse_qft_circuit({.num_qubits = 3, .include_final_swaps = true}));
    CHECK((inverse - forward.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("transform is linear on unnormalized vectors") {
    auto v1 = oracles::random_amplitudes(3, 41);
    auto v2 = oracles::random_amplitudes(3, 42);
    const cplx a(1.7, -0.4), b(-0.3, 0.9);
    std::vector<cplx> combo(8);
    for (int i = 0; i < 8; ++i)
      combo[std::size_t(i)] = a * v1[std::size_t(i)] + b * v2[std::size_t(i)];
    auto lhs = qft_of_vector(combo);
    auto t1 = qft_of_vector(v1);
    auto t2 = qft_of_vector(v2);
    for (int i = 0; i < 8; ++i)
      CHECK(std::abs(lhs[std::size_t(i)] -
                     (a * t1[std::size_t(i)] + b * t2[std::size_t(i)])) < 1e-12);
  }

  TEST_CASE("spectral derivative reproduces analytic derivatives") {
    const int n = 16;
    std::vector<cplx> sine(n), expected(n);
    for (int j = 0; j < n; ++j) {
      const double x = 2.0 * kPi * j / n;
      sine[std::size_t(j)] = std::sin(x);
      expected[std::size_t(j)] = std::cos(x);
    }
    auto derivative = qflow::qft_derivative_demo(sine, 1.0);
    CHECK(oracles::max_abs_diff(derivative, expected) < 1e-8);

    std::vector<cplx> third(n), third_expected(n);
    for (int j = 0; j < n; ++j) {
      const double x = 2.0 * kPi * j / n;
      third[std::size_t(j)] = std::sin(3.0 * x);
      third_expected[std::size_t(j)] = 3.0 * std::cos(3.0 * x);
    }
    auto d3 = qflow::qft_derivative_demo(third, 1.0);
    CHECK(oracles::max_abs_diff(d3, third_expected) < 1e-8);

    std::vector<cplx> constant(n, cplx(0.7, -0.2));
    auto flat = qflow::qft_derivative_demo(constant, 1.0);
    for (const auto& value : flat) CHECK(std::abs(value) < 1e-12);
  }

  TEST_CASE("spectral derivative handles complex modes and rescaled domains") {
    const int n = 32;
    std::vector<cplx> wave(n), expected(n);
    for (int j = 0; j < n; ++j) {
      const double x = 2.0 * kPi * j / n;
      wave[std::size_t(j)] = std::polar(1.0, -2.0 * x);  // exp(-2ix)
      expected[std::size_t(j)] = cplx(0.0, -2.0) * wave[std::size_t(j)];
    }
    auto d = qflow::qft_derivative_demo(wave, 1.0);
    CHECK(oracles::max_abs_diff(d, expected) < 1e-8);

    // Domain of length 4*pi: sin(x) occupies mode 2 and the scale is 1/2.
    std::vector<cplx> stretched(n), dstretched(n);
    for (int j = 0; j < n; ++j) {
      const double x = 4.0 * kPi * j / n;
      stretched[std::size_t(j)] = std::sin(x);
      dstretched[std::size_t(j)] = std::cos(x);
    }
    auto ds = qflow::qft_derivative_demo(stretched, 0.5);
    CHECK(oracles::max_abs_diff(ds, dstretched) < 1e-8);
  }
}
