#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qflow/gates.hpp"
#include "qflow/state.hpp"
#include "support/oracles.hpp"

using qflow::cplx;
using qflow::Gate;
using qflow::StateVector;

namespace {

constexpr double kPi = std::numbers::pi;

double max_entry_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Entrywise distance after rotating b so its largest entry matches a's phase.
double matrix_diff_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  cplx ratio = a(r, c) / b(r, c);
  return max_entry_diff(a, b * ratio);
}

StateVector apply_dense(const StateVector& s, const Eigen::MatrixXcd& u) {
  Eigen::VectorXcd v(s.size());
  for (std::uint64_t i = 0; i < s.size(); ++i) v(Eigen::Index(i)) = s.amplitude(i);
  Eigen::VectorXcd w = u * v;
  std::vector<cplx> out(s.size());
  for (std::uint64_t i = 0; i < s.size(); ++i) out[i] = w(Eigen::Index(i));
  return StateVector::from_amplitudes(std::move(out));
}

double state_diff(const StateVector& a, const StateVector& b) {
  return oracles::max_abs_diff(a.amplitudes(), b.amplitudes());
}

}  // namespace

TEST_SUITE("gates") {
  TEST_CASE("builtin matrices match their definitions") {
    auto x = qflow::builtin("X").matrix();
    CHECK(std::abs(x(0, 0)) == 0.0);
    CHECK(x(0, 1) == cplx(1.0, 0.0));
    CHECK(x(1, 0) == cplx(1.0, 0.0));
    CHECK(std::abs(x(1, 1)) == 0.0);

    auto h_on_zero = qflow::apply(StateVector::zero_state(1), qflow::builtin("h"), {0});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h_on_zero.amplitude(0) - r) < 1e-15);
    CHECK(std::abs(h_on_zero.amplitude(1) - r) < 1e-15);

    auto phase0 = qflow::builtin("phase", {0.0}).matrix();
    CHECK(max_entry_diff(phase0, Eigen::MatrixXcd::Identity(2, 2)) == 0.0);

    CHECK(qflow::builtin("cnot").arity() == 2);
    CHECK(qflow::builtin("swap").arity() == 2);
    CHECK(qflow::builtin("toffoli").arity() == 3);
  }

  TEST_CASE("builtin rejects unknown names and bad parameter counts") {
    CHECK_THROWS_AS(qflow::builtin("frobnicate"), std::invalid_argument);
    CHECK_THROWS_AS(qflow::builtin("phase"), std::invalid_argument);
    CHECK_THROWS_AS(qflow::builtin("x", {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(qflow::builtin("u3", {0.1}), std::invalid_argument);
  }

  TEST_CASE("u3 specializations recover fixed gates") {
    CHECK(matrix_diff_up_to_phase(qflow::builtin("x").matrix(),
                                  qflow::u3(kPi, 0.0, kPi).matrix()) < 1e-12);
    CHECK(matrix_diff_up_to_phase(qflow::builtin("h").matrix(),
                                  qflow::u3(kPi / 2, 0.0, kPi).matrix()) < 1e-12);
    CHECK(max_entry_diff(qflow::u3(0.0, 0.0, 0.0).matrix(),
                         Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);
    // Angles reduce mod 2pi.
    CHECK(max_entry_diff(qflow::u3(0.3, 0.4, 0.5).matrix(),
                         qflow::u3(0.3 + 2 * kPi, 0.4 - 2 * kPi, 0.5).matrix()) < 1e-12);
  }

  TEST_CASE("ry and rz act as expected on basis states") {
    const double theta = 0.83;
    auto rotated = qflow::apply(StateVector::zero_state(1), qflow::ry(theta), {0});
    CHECK(std::abs(rotated.amplitude(0) - std::cos(theta / 2)) < 1e-14);
    CHECK(std::abs(rotated.amplitude(1) - std::sin(theta / 2)) < 1e-14);

    auto z = qflow::rz(theta).matrix();
    CHECK(std::abs(z(0, 0) - std::polar(1.0, -theta / 2)) < 1e-14);
    CHECK(std::abs(z(1, 1) - std::polar(1.0, theta / 2)) < 1e-14);
    CHECK(std::abs(z(0, 1)) == 0.0);
  }

  TEST_CASE("gate construction rejects non-unitary matrices") {
    Eigen::MatrixXcd bad(2, 2);
    bad << 1.0, 0.0, 0.0, 0.5;
    CHECK_THROWS_AS(Gate("bad", bad), std::invalid_argument);
  }

  TEST_CASE("x flips the basis weights") {
    auto psi = StateVector::from_amplitudes({std::sqrt(0.6), std::sqrt(0.4)});
    auto flipped = qflow::apply(psi, qflow::builtin("x"), {0});
    auto probs = flipped.probabilities();
    CHECK(probs[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(probs[1] == doctest::Approx(0.6).epsilon(1e-12));
  }

  TEST_CASE("cnot control convention: targets[0] is the control") {
    auto cnot = qflow::builtin("cnot");
    // |00> fixed, |10> -> |11>.
    auto s00 = qflow::apply(StateVector::zero_state(2), cnot, {0, 1});
    CHECK(std::abs(s00.amplitude(0) - 1.0) < 1e-15);
    auto s10 = qflow::apply(StateVector::from_amplitudes({0.0, 0.0, 1.0, 0.0}),
                            cnot, {0, 1});
    CHECK(std::abs(s10.amplitude(3) - 1.0) < 1e-15);
  }

  TEST_CASE("strided apply agrees with the dense embedded oracle") {
    auto state = oracles::random_state(4, 4242);
    struct Case {
      const char* name;
      std::vector<double> params;
      std::vector<int> targets;
    };
    const std::vector<Case> cases = {
        {"x", {}, {2}},          {"y", {}, {0}},       {"z", {}, {3}},
        {"h", {}, {1}},          {"phase", {0.7}, {2}}, {"cnot", {}, {3, 1}},
        {"swap", {}, {0, 2}},    {"toffoli", {}, {1, 3, 0}},
    };
    for (const auto& c : cases) {
      auto gate = qflow::builtin(c.name, c.params);
      auto fast = qflow::apply(state, gate, c.targets);
      auto dense = apply_dense(state, qflow::embed_unitary(gate, c.targets, 4));
      CHECK_MESSAGE(state_diff(fast, dense) < 1e-12, c.name);
      CHECK(std::abs(fast.norm() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("apply validates targets") {
    auto s = StateVector::zero_state(2);
    CHECK_THROWS_AS(qflow::apply(s, qflow::builtin("cnot"), {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qflow::apply(s, qflow::builtin("x"), {2}), std::out_of_range);
    CHECK_THROWS_AS(qflow::apply(s, qflow::builtin("cnot"), {0}),
                    std::invalid_argument);
  }

  TEST_CASE("controlled application reproduces cnot and toffoli") {
    auto x = qflow::builtin("x");
    for (std::uint64_t basis = 0; basis < 4; ++basis) {
      std::vector<cplx> amps(4, 0.0);
      amps[basis] = 1.0;
      auto in = StateVector::from_amplitudes(amps);
      auto via_control = qflow::apply_controlled(in, x, {0}, {1});
      auto via_builtin = qflow::apply(in, qflow::builtin("cnot"), {0, 1});
      CHECK(state_diff(via_control, via_builtin) == 0.0);
    }
    for (std::uint64_t basis = 0; basis < 8; ++basis) {
      std::vector<cplx> amps(8, 0.0);
      amps[basis] = 1.0;
      auto in = StateVector::from_amplitudes(amps);
      auto via_control = qflow::apply_controlled(in, x, {0, 1}, {2});
      auto via_builtin = qflow::apply(in, qflow::builtin("toffoli"), {0, 1, 2});
      CHECK(state_diff(via_control, via_builtin) == 0.0);
    }
  }

  TEST_CASE("zero controls reduce to plain application") {
    auto s = oracles::random_state(3, 777);
    auto h = qflow::builtin("h");
    CHECK(state_diff(qflow::apply_controlled(s, h, {}, {1}),
                     qflow::apply(s, h, {1})) == 0.0);
  }

  TEST_CASE("controlled application rejects overlap") {
    auto s = StateVector::zero_state(3);
    CHECK_THROWS_AS(qflow::apply_controlled(s, qflow::builtin("x"), {1}, {1}),
                    std::invalid_argument);
  }

  TEST_CASE("involutions undo themselves") {
    auto s = oracles::random_state(4, 31337);
    for (const char* name : {"x", "h", "swap", "cnot"}) {
      auto g = qflow::builtin(name);
      std::vector<int> targets = (g.arity() == 1) ? std::vector<int>{2}
                                                  : std::vector<int>{1, 3};
      auto twice = qflow::apply(qflow::apply(s, g, targets), g, targets);
      CHECK_MESSAGE(state_diff(twice, s) < 1e-12, name);
    }
    auto t = qflow::builtin("toffoli");
    auto twice = qflow::apply(qflow::apply(s, t, {0, 2, 3}), t, {0, 2, 3});
    CHECK(state_diff(twice, s) < 1e-12);
  }

  TEST_CASE("controlled_matrix builds the block unitary") {
    auto cx = qflow::controlled_matrix(qflow::builtin("x"), 1);
    CHECK(max_entry_diff(cx, qflow::builtin("cnot").matrix()) == 0.0);
    auto ccx = qflow::controlled_matrix(qflow::builtin("x"), 2);
    CHECK(max_entry_diff(ccx, qflow::builtin("toffoli").matrix()) == 0.0);
  }
}
