#include "qflow/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qflow/config.hpp"
#include "qflow/rng.hpp"
#include "qflow/tomography.hpp"

namespace qflow {

namespace {

constexpr int kDenseQubitLimit = 14;

int log2_exact(Eigen::Index v) {
  int n = 0;
  while ((Eigen::Index(1) << n) < v) ++n;
  return n;
}

Eigen::VectorXcd to_eigen(const StateVector& state) {
  Eigen::VectorXcd v(state.size());
  for (std::uint64_t i = 0; i < state.size(); ++i) v(i) = state.amplitude(i);
  return v;
}

struct SimplexOutcome {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::vector<std::pair<int, double>> trace;
  bool converged = false;
  std::int64_t evaluations = 0;
};

// Nelder-Mead with standard coefficients. Convergence checks happen every
// dim+1 iterations (one full sweep): done when the best value improved by
// less than tolerance over the sweep.
SimplexOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> start, double tolerance,
                           int max_iterations) {
  const std::size_t dim = start.size();
  SimplexOutcome out;
  std::vector<std::vector<double>> pts(dim + 1, start);
  std::vector<double> vals(dim + 1);
  for (std::size_t i = 1; i <= dim; ++i) pts[i][i - 1] += 0.5;
  for (std::size_t i = 0; i <= dim; ++i) {
    vals[i] = f(pts[i]);
    ++out.evaluations;
  }

  std::vector<std::size_t> order(dim + 1);
  double checkpoint_best = *std::min_element(vals.begin(), vals.end());
  const int sweep = static_cast<int>(dim) + 1;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coeff) {
      std::vector<double> p(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        p[d] = centroid[d] + coeff * (pts[worst][d] - centroid[d]);
      }
      return p;
    };

    const std::vector<double> reflected = blend(-1.0);
    const double fr = f(reflected);
    ++out.evaluations;
    if (fr < vals[best]) {
      const std::vector<double> expanded = blend(-2.0);
      const double fe = f(expanded);
      ++out.evaluations;
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
    } else if (fr < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
      const double fc = f(contracted);
      ++out.evaluations;
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = contracted;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
          }
          vals[i] = f(pts[i]);
          ++out.evaluations;
        }
      }
    }

    const double current_best = *std::min_element(vals.begin(), vals.end());
    out.trace.emplace_back(iter, current_best);
    if (iter % sweep == 0) {
      if (checkpoint_best - current_best < tolerance) {
        out.converged = true;
        break;
      }
      checkpoint_best = current_best;
    }
  }

  const std::size_t winner = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.best_point = pts[winner];
  out.best_value = vals[winner];
  return out;
}

// Restart loop shared by the eigensolver and the linear-solve search.
SimplexOutcome multistart_minimize(
    const std::function<double(const std::vector<double>&)>& f, int dim,
    const VqeOptions& options) {
  if (options.restarts < 1 || options.max_iterations < 1) {
    throw std::invalid_argument("need at least one restart and one iteration");
  }
  if (options.tolerance <= 0.0) {
    throw std::invalid_argument("tolerance must be positive");
  }
  SimplexOutcome best;
  bool have = false;
  for (int r = 0; r < options.restarts; ++r) {
    CounterRng rng(philox::derive_stream(options.seed, r));
    std::vector<double> start(dim);
    for (double& v : start) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    SimplexOutcome attempt =
        nelder_mead(f, std::move(start), options.tolerance,
                    options.max_iterations);
    const std::int64_t total =
        (have ? best.evaluations : 0) + attempt.evaluations;
    if (!have || attempt.best_value < best.best_value) {
      best = std::move(attempt);
      have = true;
    }
    best.evaluations = total;
  }
  return best;
}

}  // namespace

Hamiltonian Hamiltonian::from_dense(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols() || m.rows() < 2 ||
      (m.rows() & (m.rows() - 1)) != 0) {
    throw std::invalid_argument("matrix must be square with 2^n dimension");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  Hamiltonian h;
  h.num_qubits_ = log2_exact(m.rows());
  h.dense_ = std::move(m);
  return h;
}

Hamiltonian Hamiltonian::from_pauli_terms(
    std::vector<std::pair<double, std::string>> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("need at least one term");
  }
  Hamiltonian h;
  h.num_qubits_ = static_cast<int>(terms.front().second.size());
  for (auto& [weight, letters] : terms) {
    if (static_cast<int>(letters.size()) != h.num_qubits_) {
      throw std::invalid_argument("terms act on different register sizes");
    }
    h.terms_.emplace_back(weight, PauliString(std::move(letters)));
  }
  return h;
}

double Hamiltonian::expectation(const StateVector& state) const {
  if (state.num_qubits() != num_qubits_) {
    throw std::invalid_argument("state register does not match observable");
  }
  if (is_pauli_sum()) {
    double sum = 0.0;
    for (const auto& [weight, p] : terms_) {
      sum += weight * pauli_expectation(state, p);
    }
    return sum;
  }
  const Eigen::VectorXcd psi = to_eigen(state);
  const std::complex<double> value = psi.dot(dense_ * psi);
  if (std::abs(value.imag()) > config::kAnalyticTol) {
    throw std::runtime_error("expectation has a nonreal residue");
  }
  return value.real();
}

Eigen::MatrixXcd Hamiltonian::to_dense() const {
  if (!is_pauli_sum()) return dense_;
  if (num_qubits_ > kDenseQubitLimit) {
    throw std::length_error("dense form capped at 14 qubits");
  }
  const Eigen::Index dim = Eigen::Index(1) << num_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [weight, p] : terms_) {
    m += weight * p.to_dense();
  }
  return m;
}

double Hamiltonian::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double expectation(const Hamiltonian& h, const StateVector& state) {
  return h.expectation(state);
}

Circuit ansatz_circuit(const Ansatz& ansatz,
                       const std::vector<double>& parameters) {
  if (ansatz.num_qubits < 1 || ansatz.num_layers < 1) {
    throw std::invalid_argument("ansatz needs at least one qubit and layer");
  }
  if (static_cast<int>(parameters.size()) != ansatz.parameter_count()) {
    throw std::invalid_argument("expected 3 * qubits * layers parameters");
  }
  Circuit c(ansatz.num_qubits);
  std::size_t k = 0;
  for (int layer = 0; layer < ansatz.num_layers; ++layer) {
    for (int q = 0; q < ansatz.num_qubits; ++q, k += 3) {
      c.gate("u3", {q}, {parameters[k], parameters[k + 1], parameters[k + 2]});
    }
    for (int q = 0; q + 1 < ansatz.num_qubits; ++q) {
      c.gate("cnot", {q, q + 1});
    }
  }
  return c;
}

StateVector ansatz_state(const Ansatz& ansatz,
                         const std::vector<double>& parameters) {
  return run_statevector(ansatz_circuit(ansatz, parameters),
                         StateVector::zero_state(ansatz.num_qubits));
}

VqeResult vqe_solve(const Hamiltonian& h, const Ansatz& ansatz,
                    const VqeOptions& options) {
  if (h.num_qubits() != ansatz.num_qubits) {
    throw std::invalid_argument("ansatz register does not match observable");
  }
  if (options.shots > 0 && !h.is_pauli_sum()) {
    throw std::invalid_argument(
        "sampled expectations need a Pauli-sum observable");
  }

  std::int64_t eval_index = 0;
  auto energy = [&](const std::vector<double>& k) {
    const StateVector state = ansatz_state(ansatz, k);
    if (options.shots == 0) return h.expectation(state);
    // Every sampled evaluation gets its own derived stream, keyed by the
    // call index, so the whole solve is replayable.
    const std::uint64_t eval_key =
        philox::derive_stream(options.seed, 0x100000000ull +
                                               static_cast<std::uint64_t>(eval_index++));
    double sum = 0.0;
    std::uint64_t term_index = 0;
    for (const auto& [weight, p] : h.terms()) {
      sum += weight * sampled_pauli_expectation(
                          state, p, options.shots,
                          philox::derive_stream(eval_key, term_index++));
    }
    return sum;
  };

  const SimplexOutcome outcome =
      multistart_minimize(energy, ansatz.parameter_count(), options);
  VqeResult result;
  result.optimal_parameters = outcome.best_point;
  result.optimal_energy = outcome.best_value;
  result.trace = outcome.trace;
  result.converged = outcome.converged;
  result.evaluations = outcome.evaluations;
  return result;
}

std::pair<Hamiltonian, std::vector<double>> build_poisson_operator(
    int grid_points, double spacing) {
  if (grid_points < 2 || (grid_points & (grid_points - 1)) != 0) {
    throw std::invalid_argument("grid size must be a power of two >= 2");
  }
  if (spacing <= 0.0) {
    throw std::invalid_argument("spacing must be positive");
  }
  const double scale = 1.0 / (spacing * spacing);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(grid_points, grid_points);
  for (int i = 0; i < grid_points; ++i) {
    a(i, i) = 2.0 * scale;
    if (i + 1 < grid_points) {
      a(i, i + 1) = -scale;
      a(i + 1, i) = -scale;
    }
  }
  return {Hamiltonian::from_dense(std::move(a)),
          std::vector<double>(grid_points, 1.0)};
}

StokesResult solve_stokes_vqe(int grid_points, const std::vector<double>& rhs,
                              int num_layers, const VqeOptions& options) {
  if (static_cast<int>(rhs.size()) != grid_points) {
    throw std::invalid_argument("right-hand side does not match the grid");
  }
  auto [h, unused_rhs] = build_poisson_operator(grid_points);
  (void)unused_rhs;
  const Eigen::MatrixXcd a = h.to_dense();
  Eigen::VectorXcd b(grid_points);
  for (int i = 0; i < grid_points; ++i) b(i) = rhs[i];
  const double b_norm2 = b.squaredNorm();

  const Ansatz ansatz{log2_exact(grid_points), num_layers};
  // ||c A psi - b||^2 at the optimal complex scale c* = <A psi, b>/||A psi||^2
  // collapses to ||b||^2 - |<A psi, b>|^2 / ||A psi||^2: search angles only.
  auto residual2 = [&](const std::vector<double>& k) {
    const Eigen::VectorXcd apsi = a * to_eigen(ansatz_state(ansatz, k));
    const double denom = apsi.squaredNorm();
    return b_norm2 - std::norm(apsi.dot(b)) / denom;
  };

  StokesResult result;
  if (b_norm2 == 0.0) {
    result.solution.assign(grid_points, {0.0, 0.0});
    result.relative_residual = 0.0;
    result.search.converged = true;
    return result;
  }

  const SimplexOutcome outcome =
      multistart_minimize(residual2, ansatz.parameter_count(), options);
  const Eigen::VectorXcd psi = to_eigen(ansatz_state(ansatz, outcome.best_point));
  const Eigen::VectorXcd apsi = a * psi;
  const std::complex<double> scale = apsi.dot(b) / apsi.squaredNorm();
  const Eigen::VectorXcd x = scale * psi;

  result.solution.assign(grid_points, {0.0, 0.0});
  for (int i = 0; i < grid_points; ++i) result.solution[i] = x(i);
  result.relative_residual = (a * x - b).norm() / std::sqrt(b_norm2);
  result.search.optimal_parameters = outcome.best_point;
  result.search.optimal_energy = outcome.best_value;
  result.search.trace = outcome.trace;
  result.search.converged = outcome.converged;
  result.search.evaluations = outcome.evaluations;
  return result;
}

}  // namespace qflow
