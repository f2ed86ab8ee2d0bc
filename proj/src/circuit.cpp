#include "qflow/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qflow/config.hpp"
#include "qflow/parallel.hpp"
#include "qflow/rng.hpp"

namespace qflow {

namespace {

void check_index(int value, int limit, const char* what) {
  if (value < 0 || value >= limit) {
    throw std::out_of_range(std::string(what) + " index " +
                            std::to_string(value) + " out of range [0, " +
                            std::to_string(limit) + ")");
  }
}

// Parameters of the gate whose matrix is the adjoint of `op(params)`.
// Every supported gate family is closed under inversion.
std::pair<std::string, std::vector<double>> inverse_gate(
    const std::string& op, const std::vector<double>& params) {
  if (op == "phase") return {op, {-params.at(0)}};
  if (op == "ry" || op == "rz") return {op, {-params.at(0)}};
  if (op == "u3") return {op, {-params.at(0), -params.at(2), -params.at(1)}};
  return {op, params};  // x y z h cnot swap toffoli are involutions
}

}  // namespace

Instruction Instruction::gate(std::string op, std::vector<int> targets,
                              std::vector<double> params,
                              std::vector<int> controls) {
  Instruction ins;
  ins.op = std::move(op);
  ins.params = std::move(params);
  ins.targets = std::move(targets);
  ins.controls = std::move(controls);
  return ins;
}

Instruction Instruction::measure(int qubit, int clbit) {
  Instruction ins;
  ins.op = "measure";
  ins.qubit = qubit;
  ins.clbit = clbit;
  return ins;
}

Circuit::Circuit(int num_qubits, int num_clbits)
    : num_qubits_(num_qubits),
      num_clbits_(num_clbits),
      clbit_written_(static_cast<std::size_t>(std::max(num_clbits, 0))) {
  if (num_qubits < 1) {
    throw std::invalid_argument("circuit needs at least one qubit");
  }
  if (num_clbits < 0) {
    throw std::invalid_argument("classical register size cannot be negative");
  }
  config::require_capacity(num_qubits);
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& ins : instructions_) {
    if (!ins.is_measure()) ++n;
  }
  return n;
}

Circuit& Circuit::append(Instruction instruction) {
  if (instruction.is_measure()) {
    check_index(instruction.qubit, num_qubits_, "measured qubit");
    check_index(instruction.clbit, num_clbits_, "classical bit");
    if (clbit_written_[instruction.clbit]) {
      throw std::invalid_argument("classical bit " +
                                  std::to_string(instruction.clbit) +
                                  " written twice in one pass");
    }
    clbit_written_[instruction.clbit] = true;
    measure_map_.emplace_back(instruction.qubit, instruction.clbit);
  } else {
    if (has_measurements()) {
      throw std::invalid_argument(
          "gates after measurement are not supported; measurement is terminal");
    }
    const Gate g = builtin(instruction.op, instruction.params);  // validates
    if (static_cast<int>(instruction.targets.size()) != g.arity()) {
      throw std::invalid_argument("gate '" + instruction.op + "' acts on " +
                                  std::to_string(g.arity()) + " qubit(s), got " +
                                  std::to_string(instruction.targets.size()));
    }
    std::set<int> seen;
    for (int q : instruction.targets) {
      check_index(q, num_qubits_, "target qubit");
      if (!seen.insert(q).second) {
        throw std::invalid_argument("duplicate qubit in gate operands");
      }
    }
    for (int q : instruction.controls) {
      check_index(q, num_qubits_, "control qubit");
      if (!seen.insert(q).second) {
        throw std::invalid_argument("duplicate qubit in gate operands");
      }
    }
  }
  instructions_.push_back(std::move(instruction));
  return *this;
}

Circuit& Circuit::gate(const std::string& op, std::vector<int> targets,
                       std::vector<double> params, std::vector<int> controls) {
  return append(Instruction::gate(op, std::move(targets), std::move(params),
                                  std::move(controls)));
}

Circuit& Circuit::measure(int qubit, int clbit) {
  return append(Instruction::measure(qubit, clbit));
}

Circuit& Circuit::measure_all() {
  if (num_clbits_ < num_qubits_) {
    throw std::invalid_argument("measure_all needs one clbit per qubit");
  }
  for (int q = 0; q < num_qubits_; ++q) measure(q, q);
  return *this;
}

Circuit Circuit::inverted() const {
  if (has_measurements()) {
    throw std::invalid_argument("cannot invert a circuit with measurements");
  }
  Circuit inv(num_qubits_, num_clbits_);
  for (auto it = instructions_.rbegin(); it != instructions_.rend(); ++it) {
    auto [op, params] = inverse_gate(it->op, it->params);
    inv.gate(op, it->targets, params, it->controls);
  }
  return inv;
}

StateVector run_statevector(const Circuit& circuit, const StateVector& initial) {
  if (initial.num_qubits() != circuit.num_qubits()) {
    throw std::invalid_argument("initial state size does not match circuit");
  }
  if (circuit.has_measurements()) {
    throw std::invalid_argument(
        "run_statevector cannot execute measurements; use sample");
  }
  StateVector state = initial;
  for (const auto& ins : circuit.instructions()) {
    const Gate g = builtin(ins.op, ins.params);
    if (ins.controls.empty()) {
      apply_inplace(state, g, ins.targets);
    } else {
      apply_controlled_inplace(state, g, ins.controls, ins.targets);
    }
  }
  return state;
}

ShotHistogram sample(const Circuit& circuit, const StateVector& initial,
                     std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("shots must be at least 1");
  }
  // Gate instructions all precede measurements, so the measurement-free
  // prefix is the whole unitary part.
  Circuit gates_only(circuit.num_qubits(), 0);
  for (const auto& ins : circuit.instructions()) {
    if (!ins.is_measure()) gates_only.append(ins);
  }
  const StateVector final_state = run_statevector(gates_only, initial);
  const std::vector<double> probs = final_state.probabilities();

  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  std::uint64_t last_support = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_support = i;
  }

  // Readout map: explicit measure instructions, or the whole register.
  const int n = circuit.num_qubits();
  std::vector<std::pair<int, int>> readout = circuit.measure_map();
  int width = circuit.num_clbits();
  if (readout.empty()) {
    width = n;
    for (int q = 0; q < n; ++q) readout.emplace_back(q, q);
  }

  // Each shot is keyed by its own index, so any partition of the shot range
  // across workers yields the same histogram; count merging commutes.
  std::unordered_map<std::uint64_t, std::uint64_t> outcome_counts;
  std::mutex merge_mutex;
  parallel_for(shots, [&](std::uint64_t begin, std::uint64_t end) {
    std::unordered_map<std::uint64_t, std::uint64_t> mine;
    for (std::uint64_t s = begin; s < end; ++s) {
      const double u = philox::uniform(seed, s);
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
      if (idx > last_support) idx = last_support;
      ++mine[idx];
    }
    const std::lock_guard<std::mutex> lock(merge_mutex);
    for (const auto& [idx, c] : mine) outcome_counts[idx] += c;
  });

  ShotHistogram hist;
  hist.shots = shots;
  hist.seed = seed;
  for (const auto& [idx, count] : outcome_counts) {
    std::string bits(width, '0');
    for (const auto& [q, c] : readout) {
      bits[c] = static_cast<char>('0' + final_state.bit(idx, q));
    }
    hist.counts[bits] += count;
  }
  return hist;
}

std::vector<double> born_probabilities(const StateVector& state) {
  return state.probabilities();
}

StateVector deutsch_parallelism(const std::function<int(int)>& f) {
  const int f0 = f(0), f1 = f(1);
  if ((f0 & ~1) || (f1 & ~1)) {
    throw std::invalid_argument("oracle must return 0 or 1");
  }
  Circuit prep(2);
  prep.gate("h", {0});
  StateVector plus = run_statevector(prep, StateVector::zero_state(2));
  // Oracle as a basis permutation |a,b> -> |a, b xor f(a)>.
  const auto& in = plus.amplitudes();
  std::vector<std::complex<double>> out(4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out[(a << 1) | (b ^ f(a))] = in[(a << 1) | b];
    }
  }
  return StateVector::from_raw(2, std::move(out));
}

std::string circuit_to_json(const Circuit& circuit) {
  nlohmann::json j;
  j["num_qubits"] = circuit.num_qubits();
  j["num_clbits"] = circuit.num_clbits();
  j["instructions"] = nlohmann::json::array();
  for (const auto& ins : circuit.instructions()) {
    nlohmann::json node;
    node["op"] = ins.op;
    if (ins.is_measure()) {
      node["qubit"] = ins.qubit;
      node["clbit"] = ins.clbit;
    } else {
      node["params"] = ins.params;
      node["targets"] = ins.targets;
      node["controls"] = ins.controls;
    }
    j["instructions"].push_back(std::move(node));
  }
  return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Circuit circuit(j.at("num_qubits").get<int>(),
                  j.value("num_clbits", 0));
  for (const auto& node : j.value("instructions", nlohmann::json::array())) {
    const std::string op = node.at("op").get<std::string>();
    if (op == "measure") {
      circuit.measure(node.at("qubit").get<int>(), node.at("clbit").get<int>());
    } else {
      circuit.gate(op, node.value("targets", std::vector<int>{}),
                   node.value("params", std::vector<double>{}),
                   node.value("controls", std::vector<int>{}));
    }
  }
  return circuit;
}

std::string histogram_to_json(const ShotHistogram& histogram) {
  nlohmann::json j;
  j["shots"] = histogram.shots;
  j["seed"] = histogram.seed;
  j["counts"] = nlohmann::json::object();
  for (const auto& [bits, count] : histogram.counts) {
    j["counts"][bits] = count;
  }
  return j.dump(2);
}

std::string histogram_to_csv(const ShotHistogram& histogram) {
  std::ostringstream out;
  out << "bitstring,count,empirical_probability\n";
  out.setf(std::ios::fixed);
  out.precision(10);
  for (const auto& [bits, count] : histogram.counts) {
    out << bits << ',' << count << ','
        << static_cast<double>(count) / static_cast<double>(histogram.shots)
        << '\n';
  }
  return out.str();
}

}  // namespace qflow
