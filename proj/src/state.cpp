#include "qflow/state.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "qflow/config.hpp"
#include "qflow/parallel.hpp"

namespace qflow {

namespace {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::uint64_t v) {
  int n = 0;
  while ((1ull << n) < v) ++n;
  return n;
}

}  // namespace

StateVector StateVector::zero_state(int num_qubits) {
  config::require_capacity(num_qubits);
  std::vector<cplx> amps(1ull << num_qubits, cplx(0.0, 0.0));
  amps[0] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
  if (!is_power_of_two(amplitudes.size())) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  const int n = log2_exact(amplitudes.size());
  config::require_capacity(n);
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  const double norm = std::sqrt(norm2);
  if (std::abs(norm - 1.0) > config::kInputTol) {
    throw std::invalid_argument("amplitude vector norm deviates from 1 by more than 1e-8");
  }
  for (auto& a : amplitudes) a /= norm;
  return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::from_raw(int num_qubits, std::vector<cplx> amplitudes) {
  if (amplitudes.size() != (std::uint64_t{1} << num_qubits)) {
    throw std::invalid_argument("amplitude count does not match qubit count");
  }
  return StateVector(num_qubits, std::move(amplitudes));
}

double StateVector::norm() const {
  const double n2 =
      reduce_sum(amps_.size(), [&](std::uint64_t i) { return std::norm(amps_[i]); });
  return std::sqrt(n2);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  parallel_for(amps_.size(), [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) p[i] = std::norm(amps_[i]);
  });
  return p;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.num_qubits() + b.num_qubits();
  config::require_capacity(n);
  std::vector<cplx> out(1ull << n);
  const auto& av = a.raw();
  const auto& bv = b.raw();
  parallel_for(out.size(), [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      out[i] = av[i >> b.num_qubits()] * bv[i & (b.size() - 1)];
    }
  });
  return StateVector::from_amplitudes(std::move(out));
}

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner product of mismatched registers");
  }
  return reduce_sum_complex(a.size(), [&](std::uint64_t i) {
    return std::conj(a.raw()[i]) * b.raw()[i];
  });
}

double max_deviation_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("comparing states of different size");
  }
  std::uint64_t ref = 0;
  double best = -1.0;
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    const double m = std::abs(a.raw()[i]);
    if (m > best) {
      best = m;
      ref = i;
    }
  }
  auto phase_of = [](cplx v) {
    const double m = std::abs(v);
    return m < 1e-300 ? cplx(1.0, 0.0) : v / m;
  };
  const cplx pa = phase_of(a.raw()[ref]);
  const cplx pb = phase_of(b.raw()[ref]);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.raw()[i] / pa - b.raw()[i] / pb));
  }
  return worst;
}

BlochCoordinates bloch_decompose(const StateVector& state) {
  if (state.num_qubits() != 1) {
    throw std::invalid_argument("bloch_decompose expects a single qubit");
  }
  if (std::abs(state.norm() - 1.0) > config::kInputTol) {
    throw std::invalid_argument("bloch_decompose expects a normalized state");
  }
  const cplx c0 = state.amplitude(0);
  const cplx c1 = state.amplitude(1);
  BlochCoordinates out;
  out.beta = 2.0 * std::atan2(std::abs(c1), std::abs(c0));
  if (std::abs(c0) < 1e-15) {
    out.alpha = 0.0;
    out.gamma = std::arg(c1);
  } else {
    out.alpha = std::arg(c0);
    out.gamma = std::abs(c1) < 1e-15 ? 0.0 : std::arg(c1) - out.alpha;
  }
  if (out.gamma < 0) out.gamma += 2.0 * M_PI;
  if (out.gamma >= 2.0 * M_PI) out.gamma -= 2.0 * M_PI;
  return out;
}

StateVector bloch_reconstruct(const BlochCoordinates& c) {
  const cplx phase = std::exp(cplx(0.0, c.alpha));
  return StateVector::from_amplitudes(
      {phase * std::cos(c.beta / 2.0),
       phase * std::exp(cplx(0.0, c.gamma)) * std::sin(c.beta / 2.0)});
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || !is_power_of_two(static_cast<std::uint64_t>(m_.rows()))) {
    throw std::invalid_argument("density matrix must be square with power-of-two dimension");
  }
  num_qubits_ = log2_exact(static_cast<std::uint64_t>(m_.rows()));
  config::require_capacity(num_qubits_);
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > config::kAnalyticTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > config::kAnalyticTol ||
      std::abs(m_.trace().imag()) > config::kAnalyticTol) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
}

DensityMatrix DensityMatrix::from_state(const StateVector& state) {
  const auto& v = state.raw();
  const Eigen::Index d = static_cast<Eigen::Index>(v.size());
  Eigen::VectorXcd vec(d);
  for (Eigen::Index i = 0; i < d; ++i) vec(i) = v[static_cast<std::uint64_t>(i)];
  Eigen::MatrixXcd m = vec * vec.adjoint();
  // Exact unit trace regardless of rounding in the squared magnitudes.
  m /= m.trace().real();
  return DensityMatrix(std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(dim());
  for (std::uint64_t i = 0; i < dim(); ++i) {
    d[i] = m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return d;
}

DensityMatrix density_from_ensemble(
    const std::vector<std::pair<double, StateVector>>& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  const int n = ensemble.front().second.num_qubits();
  double psum = 0.0;
  for (const auto& [p, s] : ensemble) {
    if (p < 0.0) throw std::invalid_argument("negative ensemble probability");
    if (s.num_qubits() != n) throw std::invalid_argument("mixed qubit counts in ensemble");
    psum += p;
  }
  if (std::abs(psum - 1.0) > config::kAnalyticTol) {
    throw std::invalid_argument("ensemble probabilities must sum to 1");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(1ull << n);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [p, s] : ensemble) {
    Eigen::VectorXcd vec(d);
    for (Eigen::Index i = 0; i < d; ++i) vec(i) = s.raw()[static_cast<std::uint64_t>(i)];
    acc += p * (vec * vec.adjoint());
  }
  acc /= acc.trace().real();
  return DensityMatrix(std::move(acc));
}

std::string state_to_json(const StateVector& state) {
  nlohmann::json j;
  j["num_qubits"] = state.num_qubits();
  auto& arr = j["amplitudes"] = nlohmann::json::array();
  for (const auto& a : state.raw()) arr.push_back({a.real(), a.imag()});
  return j.dump(2);
}

StateVector state_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("num_qubits").get<int>();
  std::vector<cplx> amps;
  for (const auto& pair : j.at("amplitudes")) {
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  if (amps.size() != (1ull << n)) {
    throw std::invalid_argument("amplitude count does not match num_qubits");
  }
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace qflow
