#include "qflow/config.hpp"

#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

namespace qflow::config {

namespace {

std::atomic<int> g_max_qubits{26};

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (hw > 8) hw = 8;
  return static_cast<int>(hw);
}

std::atomic<int> g_num_threads{default_threads()};

}  // namespace

int max_qubits() { return g_max_qubits.load(); }

void set_max_qubits(int n) {
  if (n < 0 || n > 40) throw std::invalid_argument("max_qubits must be in [0, 40]");
  g_max_qubits.store(n);
}

int num_threads() { return g_num_threads.load(); }

void set_num_threads(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("num_threads must be in [1, 256]");
  g_num_threads.store(n);
}

void require_capacity(int num_qubits) {
  if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
  if (num_qubits > max_qubits()) {
    throw std::length_error("register of " + std::to_string(num_qubits) +
                            " qubits exceeds the configured budget of " +
                            std::to_string(max_qubits()));
  }
}

}  // namespace qflow::config
