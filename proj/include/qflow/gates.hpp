#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qflow/state.hpp"

namespace qflow {

// Unitary on `arity` qubits. Unitarity (U U^dag = I within 1e-10) is checked
// at construction, so a Gate in hand is always applicable.
class Gate {
 public:
  Gate(std::string name, Eigen::MatrixXcd matrix, std::vector<double> parameters = {});

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  const std::vector<double>& parameters() const { return params_; }

 private:
  std::string name_;
  std::vector<double> params_;
  Eigen::MatrixXcd m_;
  int arity_ = 0;
};

// Named gate set: X, Y, Z, H, PHASE (one angle), CNOT, SWAP, TOFFOLI.
// Names are case-insensitive. PHASE requires exactly one parameter; the
// others take none.
Gate builtin(const std::string& name, const std::vector<double>& params = {});

// Euler-angle gate
//   [[cos(t/2),            -e^{i lam} sin(t/2)],
//    [e^{i phi} sin(t/2),   e^{i(phi+lam)} cos(t/2)]]
// u3(pi,0,pi) = X, u3(pi/2,0,pi) = H, u3(0,0,0) = I. Angles are reduced
// mod 2pi.
Gate u3(double theta, double phi, double lam);

Gate ry(double theta);
Gate rz(double theta);
Gate phase_gate(double phi);

// Applies the gate to the listed qubits: targets[0] is the most significant
// bit of the gate's local index (so apply(state, CNOT, {c, t}) treats c as
// the control). Strided amplitude updates; never materializes the 2^n
// matrix. Returns a new state.
StateVector apply(const StateVector& state, const Gate& gate,
                  const std::vector<int>& targets);

// Gate applied on the subspace where every control qubit is |1>, identity
// elsewhere. Zero controls reduces to apply().
StateVector apply_controlled(const StateVector& state, const Gate& gate,
                             const std::vector<int>& controls,
                             const std::vector<int>& targets);

// In-place variants used by the execution loops; observable behavior of the
// public functions above stays value-semantic.
void apply_inplace(StateVector& state, const Gate& gate, const std::vector<int>& targets);
void apply_controlled_inplace(StateVector& state, const Gate& gate,
                              const std::vector<int>& controls,
                              const std::vector<int>& targets);

// Dense 2^n x 2^n embedding of the gate on the given targets (identity on
// the rest). Test oracle only: exponential in n.
Eigen::MatrixXcd embed_unitary(const Gate& gate, const std::vector<int>& targets,
                               int num_qubits);

// Block matrix of the controlled gate (controls listed first, most
// significant), for feeding embed_unitary in oracle checks.
Eigen::MatrixXcd controlled_matrix(const Gate& gate, int num_controls);

}  // namespace qflow
