#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qflow/gates.hpp"
#include "qflow/state.hpp"

namespace qflow {

// One circuit step: either a (possibly controlled) gate application, or a
// terminal measurement routing one qubit into one classical bit.
struct Instruction {
  std::string op;              // gate name, or "measure"
  std::vector<double> params;  // gate parameters
  std::vector<int> targets;    // gate target qubits, MSB of the gate first
  std::vector<int> controls;   // control qubits (|1> activates)
  int qubit = -1;              // measure source
  int clbit = -1;              // measure destination

  static Instruction gate(std::string op, std::vector<int> targets,
                          std::vector<double> params = {},
                          std::vector<int> controls = {});
  static Instruction measure(int qubit, int clbit);

  bool is_measure() const { return op == "measure"; }
};

// Ordered instruction list over a fixed register. Validation happens at
// append time, so a Circuit in hand always runs.
class Circuit {
 public:
  Circuit(int num_qubits, int num_clbits = 0);

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  std::size_t gate_count() const;
  bool has_measurements() const { return !measure_map_.empty(); }
  // (qubit, clbit) pairs in append order.
  const std::vector<std::pair<int, int>>& measure_map() const {
    return measure_map_;
  }

  Circuit& append(Instruction instruction);
  Circuit& gate(const std::string& op, std::vector<int> targets,
                std::vector<double> params = {}, std::vector<int> controls = {});
  Circuit& measure(int qubit, int clbit);
  // Measures qubit i into clbit i for the full register.
  Circuit& measure_all();

  // The circuit with gates inverted and reversed (measurements rejected).
  Circuit inverted() const;

 private:
  int num_qubits_;
  int num_clbits_;
  std::vector<std::pair<int, int>> measure_map_;
  std::vector<bool> clbit_written_;  // write-once guard per execution pass
  std::vector<Instruction> instructions_;
};

struct ShotHistogram {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  // Classical bitstring (clbit 0 leftmost) -> occurrence count.
  std::map<std::string, std::uint64_t> counts;
};

// Applies every gate in order. Measurement-free circuits only.
StateVector run_statevector(const Circuit& circuit, const StateVector& initial);

// Runs the circuit once, then draws `shots` outcomes from the exact Born
// distribution of the final state. A shot's value depends only on (seed,
// shot index), so histograms are bit-identical across runs and worker
// counts. Circuits without measure instructions read the whole register.
ShotHistogram sample(const Circuit& circuit, const StateVector& initial,
                     std::uint64_t shots, std::uint64_t seed);

// probability[i] = |amplitude[i]|^2.
std::vector<double> born_probabilities(const StateVector& state);

// Two-qubit register holding (|0, f(0)> + |1, f(1)>)/sqrt(2): H on the top
// qubit, then the oracle permutation |a,b> -> |a, b xor f(a)>. Both values
// of f ride in one state.
StateVector deutsch_parallelism(const std::function<int(int)>& f);

std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);

std::string histogram_to_json(const ShotHistogram& histogram);
std::string histogram_to_csv(const ShotHistogram& histogram);

}  // namespace qflow
