#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qflow/state.hpp"
#include "qflow/vqe.hpp"
#include "support/oracles.hpp"

using qflow::Ansatz;
using qflow::cplx;
using qflow::Hamiltonian;
using qflow::StateVector;
using qflow::VqeOptions;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd to_eigen(const StateVector& s) {
  Eigen::VectorXcd v(s.size());
  for (std::uint64_t i = 0; i < s.size(); ++i) v(Eigen::Index(i)) = s.amplitude(i);
  return v;
}

}  // namespace

TEST_SUITE("vqe") {
  TEST_CASE("expectation values match hand-computed cases") {
    Eigen::MatrixXcd z(2, 2);
    z << 1, 0, 0, -1;
    CHECK(Hamiltonian::from_dense(z).expectation(StateVector::zero_state(1)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXcd diag(2, 2);
    diag << 2, 0, 0, 5;
    const double r = 1.0 / std::sqrt(2.0);
    auto plus = StateVector::from_amplitudes({r, r});
    CHECK(Hamiltonian::from_dense(diag).expectation(plus) ==
          doctest::Approx(3.5).epsilon(1e-12));
  }

  TEST_CASE("dense expectation matches the direct quadratic form") {
    auto h = oracles::random_hermitian(8, 71);
    auto s = oracles::random_state(3, 72);
    auto v = to_eigen(s);
    const double direct = (v.adjoint() * h * v)(0, 0).real();
    CHECK(Hamiltonian::from_dense(h).expectation(s) ==
          doctest::Approx(direct).epsilon(1e-12));
  }

  TEST_CASE("pauli sums agree with their dense assembly") {
    auto h = Hamiltonian::from_pauli_terms({{0.5, "XZ"}, {-1.2, "YI"}, {0.3, "ZZ"}});
    auto dense = Hamiltonian::from_dense(h.to_dense());
    for (std::uint64_t key = 1; key <= 5; ++key) {
      auto s = oracles::random_state(2, key + 200);
      CHECK(h.expectation(s) == doctest::Approx(dense.expectation(s)).epsilon(1e-12));
    }
    CHECK(h.min_eigenvalue() == doctest::Approx(dense.min_eigenvalue()).epsilon(1e-12));
  }

  TEST_CASE("hamiltonian construction validates shape and symmetry") {
    Eigen::MatrixXcd skew(2, 2);
    skew << 0.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 0.0;
    CHECK_THROWS_AS(Hamiltonian::from_dense(skew), std::invalid_argument);
    CHECK_THROWS_AS(Hamiltonian::from_dense(Eigen::MatrixXcd::Identity(3, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(Hamiltonian::from_pauli_terms({{1.0, "X"}, {1.0, "XX"}}),
                    std::invalid_argument);
  }

  TEST_CASE("ansatz states are normalized and reachable") {
    Ansatz a{.num_qubits = 2, .num_layers = 1};
    CHECK(a.parameter_count() == 6);
    auto zero = qflow::ansatz_state(a, std::vector<double>(6, 0.0));
    CHECK(std::abs(zero.amplitude(0) - 1.0) < 1e-12);

    Ansatz single{.num_qubits = 1, .num_layers = 1};
    auto plus = qflow::ansatz_state(single, {kPi / 2, 0.0, kPi});
    const double r = 1.0 / std::sqrt(2.0);
    auto target = StateVector::from_amplitudes({r, r});
    CHECK(qflow::max_deviation_up_to_phase(plus, target) < 1e-12);

    qflow::CounterRng rng(9);
    Ansatz wide{.num_qubits = 3, .num_layers = 2};
    std::vector<double> params(std::size_t(wide.parameter_count()));
    for (auto& p : params) p = rng.uniform(0.0, 2.0 * kPi);
    CHECK(std::abs(qflow::ansatz_state(wide, params).norm() - 1.0) < 1e-12);

    CHECK_THROWS_AS(qflow::ansatz_state(a, std::vector<double>(5, 0.0)),
                    std::invalid_argument);
  }

  TEST_CASE("single-qubit ground states are found to high accuracy") {
    auto h = Hamiltonian::from_pauli_terms({{1.0, "Z"}});
    auto result = qflow::vqe_solve(h, {.num_qubits = 1, .num_layers = 1});
    CHECK(result.optimal_energy == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(result.converged);
    CHECK(result.evaluations > 0);
    CHECK(result.optimal_energy >= -1.0 - 1e-9);
  }

  TEST_CASE("flat landscapes converge immediately") {
    auto h = Hamiltonian::from_pauli_terms({{1.0, "I"}});
    auto result = qflow::vqe_solve(h, {.num_qubits = 1, .num_layers = 1});
    CHECK(result.optimal_energy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.converged);
  }

  TEST_CASE("poisson operator is the scaled second-difference stencil") {
    auto [h, rhs] = qflow::build_poisson_operator(4);
    Eigen::MatrixXcd expected(4, 4);
    expected << 2, -1, 0, 0,
                -1, 2, -1, 0,
                0, -1, 2, -1,
                0, 0, -1, 2;
    CHECK((h.to_dense() - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((h.to_dense() - h.to_dense().transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(rhs == std::vector<double>(4, 1.0));

    const double analytic = 4.0 * std::pow(std::sin(kPi / 10.0), 2);
    CHECK(h.min_eigenvalue() == doctest::Approx(analytic).epsilon(1e-10));

    auto [scaled, rhs2] = qflow::build_poisson_operator(8, 0.5);
    CHECK(std::abs(scaled.to_dense()(0, 0).real() - 8.0) < 1e-14);
    CHECK(rhs2.size() == 8);

    CHECK_THROWS_AS(qflow::build_poisson_operator(6), std::invalid_argument);
    CHECK_THROWS_AS(qflow::build_poisson_operator(4, 0.0), std::invalid_argument);
  }

  TEST_CASE("vqe reaches the poisson ground energy") {
    auto [h, rhs] = qflow::build_poisson_operator(4);
    const double exact = h.min_eigenvalue();
    VqeOptions options;
    options.seed = 11;
    auto result = qflow::vqe_solve(h, {.num_qubits = 2, .num_layers = 2}, options);
    CHECK(std::abs(result.optimal_energy - exact) < 1e-3);
    CHECK(result.optimal_energy >= exact - 1e-9);

    // The running best is non-increasing and never dips below the bound.
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
      CHECK(result.trace[i].second <= result.trace[i - 1].second + 1e-15);
      CHECK(result.trace[i].second >= exact - 1e-9);
    }
    (void)rhs;
  }

  TEST_CASE("solves are deterministic in the seed") {
    auto h = Hamiltonian::from_pauli_terms({{0.7, "ZZ"}, {0.3, "XI"}});
    VqeOptions options;
    options.seed = 21;
    options.restarts = 3;
    auto a = qflow::vqe_solve(h, {.num_qubits = 2, .num_layers = 1}, options);
    auto b = qflow::vqe_solve(h, {.num_qubits = 2, .num_layers = 1}, options);
    CHECK(a.optimal_energy == b.optimal_energy);
    CHECK(a.optimal_parameters == b.optimal_parameters);
    CHECK(a.evaluations == b.evaluations);
  }

  TEST_CASE("sampled expectations stay deterministic and near the target") {
    auto h = Hamiltonian::from_pauli_terms({{1.0, "Z"}});
    VqeOptions options;
    options.seed = 5;
    options.shots = 4096;
    options.restarts = 2;
    auto a = qflow::vqe_solve(h, {.num_qubits = 1, .num_layers = 1}, options);
    auto b = qflow::vqe_solve(h, {.num_qubits = 1, .num_layers = 1}, options);
    CHECK(a.optimal_energy == b.optimal_energy);
    CHECK(std::abs(a.optimal_energy + 1.0) < 0.05);

    Eigen::MatrixXcd z(2, 2);
    z << 1, 0, 0, -1;
    CHECK_THROWS_AS(qflow::vqe_solve(Hamiltonian::from_dense(z),
                                     {.num_qubits = 1, .num_layers = 1}, options),
                    std::invalid_argument);
  }

  TEST_CASE("stokes solve recovers the direct solution on a constant load") {
    auto [h, rhs] = qflow::build_poisson_operator(4);
    VqeOptions options;
    options.seed = 31;
    auto result = qflow::solve_stokes_vqe(4, rhs, 2, options);

    Eigen::MatrixXd a = h.to_dense().real();
    Eigen::VectorXd b(4);
    for (int i = 0; i < 4; ++i) b(i) = rhs[std::size_t(i)];
    Eigen::VectorXd direct = a.ldlt().solve(b);

    double num = 0.0, den = 0.0;
    for (int i = 0; i < 4; ++i) {
      num += std::norm(result.solution[std::size_t(i)] - cplx(direct(i), 0.0));
      den += direct(i) * direct(i);
    }
    CHECK(std::sqrt(num / den) < 5e-2);
    CHECK(result.relative_residual < 0.05);
  }

  TEST_CASE("zero load produces the zero field") {
    auto result = qflow::solve_stokes_vqe(4, std::vector<double>(4, 0.0), 1);
    for (const auto& v : result.solution) CHECK(std::abs(v) == 0.0);
    CHECK(result.relative_residual == 0.0);
  }

  TEST_CASE("sinusoidal load meets the residual target on eight points") {
    std::vector<double> rhs(8);
    for (int i = 0; i < 8; ++i) rhs[std::size_t(i)] = std::sin(kPi * (i + 1) / 9.0);
    VqeOptions options;
    options.seed = 13;
    auto result = qflow::solve_stokes_vqe(8, rhs, 3, options);
    CHECK(result.relative_residual < 0.1);
  }
}
