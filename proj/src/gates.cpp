#include "qflow/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qflow/config.hpp"
#include "qflow/parallel.hpp"

namespace qflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

double mod_2pi(double x) {
  const double twopi = 2.0 * kPi;
  double r = std::fmod(x, twopi);
  if (r < 0) r += twopi;
  return r;
}

void check_unitary(const Eigen::MatrixXcd& m, const std::string& name) {
  const Eigen::Index d = m.rows();
  if (d != m.cols() || d == 0 || (d & (d - 1)) != 0) {
    throw std::invalid_argument("gate '" + name + "': matrix must be square, dim 2^k");
  }
  const Eigen::MatrixXcd delta =
      m * m.adjoint() - Eigen::MatrixXcd::Identity(d, d);
  if (delta.cwiseAbs().maxCoeff() > config::kAnalyticTol) {
    throw std::invalid_argument("gate '" + name + "': matrix is not unitary");
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Validates target/control indices and returns the sorted bit positions
// (position = n-1-qubit) that the iteration must skip.
std::vector<int> gather_positions(const StateVector& state,
                                  const std::vector<int>& controls,
                                  const std::vector<int>& targets) {
  const int n = state.num_qubits();
  std::vector<int> seen;
  for (const auto& list : {controls, targets}) {
    for (int q : list) {
      if (q < 0 || q >= n) throw std::out_of_range("qubit index out of range");
      if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
        throw std::invalid_argument("duplicate qubit across targets/controls");
      }
      seen.push_back(q);
    }
  }
  std::vector<int> positions;
  positions.reserve(seen.size());
  for (int q : seen) positions.push_back(n - 1 - q);
  std::sort(positions.begin(), positions.end());
  return positions;
}

// Spreads the bits of r into the index positions not occupied by
// `sorted_positions` (ascending bit positions).
inline std::uint64_t expand_index(std::uint64_t r, const std::vector<int>& sorted_positions) {
  std::uint64_t x = r;
  for (int p : sorted_positions) {
    const std::uint64_t low = x & ((1ull << p) - 1);
    x = ((x >> p) << (p + 1)) | low;
  }
  return x;
}

void apply_core(StateVector& state, const Gate& gate,
                const std::vector<int>& controls, const std::vector<int>& targets) {
  const int n = state.num_qubits();
  const int k = gate.arity();
  if (static_cast<int>(targets.size()) != k) {
    throw std::invalid_argument("target count does not match gate arity");
  }
  if (k > 20) throw std::invalid_argument("gate arity too large");
  const std::vector<int> skip = gather_positions(state, controls, targets);

  std::uint64_t control_mask = 0;
  for (int q : controls) control_mask |= 1ull << (n - 1 - q);

  // offsets[l]: bit pattern of gate-local index l placed at the target
  // positions; targets[0] is the local MSB.
  const std::uint64_t dim = 1ull << k;
  std::vector<std::uint64_t> offsets(dim, 0);
  for (std::uint64_t l = 0; l < dim; ++l) {
    for (int j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1ull) offsets[l] |= 1ull << (n - 1 - targets[j]);
    }
  }

  const Eigen::MatrixXcd& m = gate.matrix();
  auto& amps = state.raw();
  const int free_bits = n - k - static_cast<int>(controls.size());
  const std::uint64_t groups = 1ull << free_bits;

  parallel_for(groups, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<cplx> in(dim), out(dim);
    for (std::uint64_t r = lo; r < hi; ++r) {
      const std::uint64_t base = expand_index(r, skip) | control_mask;
      for (std::uint64_t l = 0; l < dim; ++l) in[l] = amps[base | offsets[l]];
      for (std::uint64_t row = 0; row < dim; ++row) {
        cplx acc = 0.0;
        for (std::uint64_t col = 0; col < dim; ++col) {
          acc += m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * in[col];
        }
        out[row] = acc;
      }
      for (std::uint64_t l = 0; l < dim; ++l) amps[base | offsets[l]] = out[l];
    }
  });
}

}  // namespace

Gate::Gate(std::string name, Eigen::MatrixXcd matrix, std::vector<double> parameters)
    : name_(std::move(name)), params_(std::move(parameters)), m_(std::move(matrix)) {
  check_unitary(m_, name_);
  Eigen::Index d = m_.rows();
  arity_ = 0;
  while ((Eigen::Index(1) << arity_) < d) ++arity_;
}

Gate builtin(const std::string& name, const std::vector<double>& params) {
  const std::string id = lower(name);
  auto expect_params = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument("gate '" + name + "' expects " +
                                  std::to_string(count) + " parameter(s)");
    }
  };
  const cplx i01(0.0, 1.0);
  if (id == "x") {
    expect_params(0);
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return Gate("x", m);
  }
  if (id == "y") {
    expect_params(0);
    Eigen::MatrixXcd m(2, 2);
    m << 0, -i01, i01, 0;
    return Gate("y", m);
  }
  if (id == "z") {
    expect_params(0);
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return Gate("z", m);
  }
  if (id == "h") {
    expect_params(0);
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m(2, 2);
    m << s, s, s, -s;
    return Gate("h", m);
  }
  if (id == "phase") {
    expect_params(1);
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, std::exp(cplx(0.0, params[0]));
    return Gate("phase", m, params);
  }
  if (id == "cnot") {
    expect_params(0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return Gate("cnot", m);
  }
  if (id == "swap") {
    expect_params(0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return Gate("swap", m);
  }
  if (id == "toffoli") {
    expect_params(0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(8, 8);
    m(6, 6) = 0;
    m(7, 7) = 0;
    m(6, 7) = 1;
    m(7, 6) = 1;
    return Gate("toffoli", m);
  }
  if (id == "u3") {
    expect_params(3);
    return u3(params[0], params[1], params[2]);
  }
  if (id == "ry") {
    expect_params(1);
    return ry(params[0]);
  }
  if (id == "rz") {
    expect_params(1);
    return rz(params[0]);
  }
  throw std::invalid_argument("unknown gate name '" + name + "'");
}

Gate u3(double theta, double phi, double lam) {
  const double t = mod_2pi(theta), p = mod_2pi(phi), l = mod_2pi(lam);
  const double c = std::cos(t / 2.0), s = std::sin(t / 2.0);
  Eigen::MatrixXcd m(2, 2);
  m(0, 0) = c;
  m(0, 1) = -std::exp(cplx(0.0, l)) * s;
  m(1, 0) = std::exp(cplx(0.0, p)) * s;
  m(1, 1) = std::exp(cplx(0.0, p + l)) * c;
  return Gate("u3", m, {t, p, l});
}

Gate ry(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Eigen::MatrixXcd m(2, 2);
  m << c, -s, s, c;
  return Gate("ry", m, {theta});
}

Gate rz(double theta) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = std::exp(cplx(0.0, -theta / 2.0));
  m(1, 1) = std::exp(cplx(0.0, theta / 2.0));
  return Gate("rz", m, {theta});
}

Gate phase_gate(double phi) { return builtin("phase", {phi}); }

StateVector apply(const StateVector& state, const Gate& gate,
                  const std::vector<int>& targets) {
  StateVector out = state;
  apply_inplace(out, gate, targets);
  return out;
}

StateVector apply_controlled(const StateVector& state, const Gate& gate,
                             const std::vector<int>& controls,
                             const std::vector<int>& targets) {
  StateVector out = state;
  apply_controlled_inplace(out, gate, controls, targets);
  return out;
}

void apply_inplace(StateVector& state, const Gate& gate, const std::vector<int>& targets) {
  apply_core(state, gate, {}, targets);
}

void apply_controlled_inplace(StateVector& state, const Gate& gate,
                              const std::vector<int>& controls,
                              const std::vector<int>& targets) {
  apply_core(state, gate, controls, targets);
}

Eigen::MatrixXcd embed_unitary(const Gate& gate, const std::vector<int>& targets,
                               int num_qubits) {
  if (num_qubits > 14) throw std::length_error("dense embedding beyond 14 qubits");
  const std::uint64_t dim = 1ull << num_qubits;
  const int k = gate.arity();
  if (static_cast<int>(targets.size()) != k) {
    throw std::invalid_argument("target count does not match gate arity");
  }
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::MatrixXcd& m = gate.matrix();
  for (std::uint64_t col = 0; col < dim; ++col) {
    // Local index of this column on the target qubits.
    std::uint64_t lcol = 0;
    for (int j = 0; j < k; ++j) {
      lcol |= static_cast<std::uint64_t>((col >> (num_qubits - 1 - targets[j])) & 1ull)
              << (k - 1 - j);
    }
    for (std::uint64_t lrow = 0; lrow < (1ull << k); ++lrow) {
      std::uint64_t row = col;
      for (int j = 0; j < k; ++j) {
        const std::uint64_t bit = (lrow >> (k - 1 - j)) & 1ull;
        const int pos = num_qubits - 1 - targets[j];
        row = (row & ~(1ull << pos)) | (bit << pos);
      }
      full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          m(static_cast<Eigen::Index>(lrow), static_cast<Eigen::Index>(lcol));
    }
  }
  return full;
}

Eigen::MatrixXcd controlled_matrix(const Gate& gate, int num_controls) {
  const Eigen::Index gd = gate.matrix().rows();
  const Eigen::Index dim = gd << num_controls;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  m.bottomRightCorner(gd, gd) = gate.matrix();
  return m;
}

}  // namespace qflow
