// Python bindings for the core operations: states, circuits, sampling,
// loading, tomography, the Fourier transform, lattice evolution, product
// formulas, and the variational solvers.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qflow/circuit.hpp"
#include "qflow/config.hpp"
#include "qflow/gates.hpp"
#include "qflow/hamsim.hpp"
#include "qflow/loading.hpp"
#include "qflow/pauli.hpp"
#include "qflow/qft.hpp"
#include "qflow/qlga.hpp"
#include "qflow/state.hpp"
#include "qflow/tomography.hpp"
#include "qflow/vqe.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_qflow, m) {
  m.doc() = "statevector quantum circuit simulator";

  py::class_<qflow::StateVector>(m, "StateVector")
      .def_static("zero_state", &qflow::StateVector::zero_state,
                  py::arg("num_qubits"))
      .def_static("from_amplitudes", &qflow::StateVector::from_amplitudes,
                  py::arg("amplitudes"))
      .def_property_readonly("num_qubits", &qflow::StateVector::num_qubits)
      .def("__len__", &qflow::StateVector::size)
      .def("amplitudes", [](const qflow::StateVector& s) { return s.amplitudes(); })
      .def("amplitude", &qflow::StateVector::amplitude, py::arg("basis_index"))
      .def("probabilities", &qflow::StateVector::probabilities)
      .def("norm", &qflow::StateVector::norm)
      .def("to_json", [](const qflow::StateVector& s) { return qflow::state_to_json(s); })
      .def_static("from_json", &qflow::state_from_json, py::arg("text"));

  m.def("tensor", &qflow::tensor, py::arg("a"), py::arg("b"));
  m.def("inner_product", &qflow::inner_product, py::arg("a"), py::arg("b"));
  m.def("max_deviation_up_to_phase", &qflow::max_deviation_up_to_phase,
        py::arg("a"), py::arg("b"));

  py::class_<qflow::BlochCoordinates>(m, "BlochCoordinates")
      .def_readonly("alpha", &qflow::BlochCoordinates::alpha)
      .def_readonly("beta", &qflow::BlochCoordinates::beta)
      .def_readonly("gamma", &qflow::BlochCoordinates::gamma);
  m.def("bloch_decompose", &qflow::bloch_decompose, py::arg("state"));
  m.def("bloch_reconstruct", &qflow::bloch_reconstruct, py::arg("coordinates"));

  py::class_<qflow::DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("entries"))
      .def_static("from_state", &qflow::DensityMatrix::from_state, py::arg("state"))
      .def_property_readonly("num_qubits", &qflow::DensityMatrix::num_qubits)
      .def("entries", &qflow::DensityMatrix::entries,
           py::return_value_policy::copy)
      .def("diagonal", &qflow::DensityMatrix::diagonal)
      .def("min_eigenvalue", &qflow::DensityMatrix::min_eigenvalue);
  m.def("density_from_ensemble", &qflow::density_from_ensemble, py::arg("ensemble"));

  py::class_<qflow::Circuit>(m, "Circuit")
      .def(py::init<int, int>(), py::arg("num_qubits"), py::arg("num_clbits") = 0)
      .def_property_readonly("num_qubits", &qflow::Circuit::num_qubits)
      .def_property_readonly("num_clbits", &qflow::Circuit::num_clbits)
      .def("gate",
           [](qflow::Circuit& c, const std::string& op, std::vector<int> targets,
              std::vector<double> params, std::vector<int> controls)
               -> qflow::Circuit& {
             return c.gate(op, std::move(targets), std::move(params),
                           std::move(controls));
           },
           py::arg("op"), py::arg("targets"), py::arg("params") = std::vector<double>{},
           py::arg("controls") = std::vector<int>{}, py::return_value_policy::reference)
      .def("measure", &qflow::Circuit::measure, py::arg("qubit"), py::arg("clbit"),
           py::return_value_policy::reference)
      .def("measure_all", &qflow::Circuit::measure_all,
           py::return_value_policy::reference)
      .def("gate_count", &qflow::Circuit::gate_count)
      .def("inverted", &qflow::Circuit::inverted)
      .def("to_json", [](const qflow::Circuit& c) { return qflow::circuit_to_json(c); })
      .def_static("from_json", &qflow::circuit_from_json, py::arg("text"));

  py::class_<qflow::ShotHistogram>(m, "ShotHistogram")
      .def_readonly("shots", &qflow::ShotHistogram::shots)
      .def_readonly("seed", &qflow::ShotHistogram::seed)
      .def_readonly("counts", &qflow::ShotHistogram::counts)
      .def("to_json",
           [](const qflow::ShotHistogram& h) { return qflow::histogram_to_json(h); })
      .def("to_csv",
           [](const qflow::ShotHistogram& h) { return qflow::histogram_to_csv(h); });

  m.def("run_statevector", &qflow::run_statevector, py::arg("circuit"),
        py::arg("initial"));
  m.def("sample", &qflow::sample, py::arg("circuit"), py::arg("initial"),
        py::arg("shots"), py::arg("seed"));
  m.def("born_probabilities", &qflow::born_probabilities, py::arg("state"));
  m.def("deutsch_parallelism", &qflow::deutsch_parallelism, py::arg("f"));

  py::class_<qflow::LoadPlan>(m, "LoadPlan")
      .def_readonly("target_qubits", &qflow::LoadPlan::target_qubits)
      .def_readonly("circuit", &qflow::LoadPlan::circuit)
      .def_readonly("prepared_reference", &qflow::LoadPlan::prepared_reference)
      .def_readonly("input_norm", &qflow::LoadPlan::input_norm);
  m.def("amplitude_load", &qflow::amplitude_load, py::arg("values"));
  m.def("state_load", &qflow::state_load, py::arg("bits"));
  m.def("readback_verify", &qflow::readback_verify, py::arg("plan"));

  py::class_<qflow::PauliString>(m, "PauliString")
      .def(py::init<std::string>(), py::arg("letters"))
      .def_property_readonly("num_qubits", &qflow::PauliString::num_qubits)
      .def("letters", &qflow::PauliString::letters)
      .def("apply", &qflow::PauliString::apply, py::arg("state"))
      .def("to_dense", &qflow::PauliString::to_dense);
  m.def("pauli_expectation", &qflow::pauli_expectation, py::arg("state"),
        py::arg("pauli"));

  py::class_<qflow::DensityEstimate>(m, "DensityEstimate")
      .def_readonly("rho", &qflow::DensityEstimate::rho)
      .def_readonly("entry_stderr", &qflow::DensityEstimate::entry_stderr)
      .def_readonly("shots_per_basis", &qflow::DensityEstimate::shots_per_basis)
      .def_readonly("seed", &qflow::DensityEstimate::seed);
  m.def("reconstruct_density",
        [](const qflow::Circuit& circuit, std::uint64_t shots_per_basis,
           std::uint64_t seed, bool allow_large_registers, bool clip_to_physical) {
          qflow::TomographyOptions options;
          options.allow_large_registers = allow_large_registers;
          options.clip_to_physical = clip_to_physical;
          return qflow::reconstruct_density(circuit, shots_per_basis, seed, options);
        },
        py::arg("circuit"), py::arg("shots_per_basis"), py::arg("seed"),
        py::arg("allow_large_registers") = false, py::arg("clip_to_physical") = false);
  m.def("reconstruct_density_exact", &qflow::reconstruct_density_exact,
        py::arg("circuit"));

  m.def("qft_circuit",
        [](int num_qubits, bool include_final_swaps) {
          return qflow::qft_circuit({num_qubits, include_final_swaps});
        },
        py::arg("num_qubits"), py::arg("include_final_swaps") = true);
  m.def("inverse_qft_circuit",
        [](int num_qubits, bool include_final_swaps) {
          return qflow::inverse_qft_circuit({num_qubits, include_final_swaps});
        },
        py::arg("num_qubits"), py::arg("include_final_swaps") = true);
  m.def("apply_qft", &qflow::apply_qft, py::arg("state"));
  m.def("apply_inverse_qft", &qflow::apply_inverse_qft, py::arg("state"));
  m.def("qft_derivative_demo", &qflow::qft_derivative_demo, py::arg("samples"),
        py::arg("wavenumber_scale"));

  py::class_<qflow::ScatteringParams>(m, "ScatteringParams")
      .def(py::init([](double p, std::complex<double> theta) {
             return qflow::ScatteringParams{p, theta};
           }),
           py::arg("p"), py::arg("theta") = std::complex<double>(1.0, 0.0))
      .def_readonly("p", &qflow::ScatteringParams::p)
      .def_readonly("theta", &qflow::ScatteringParams::theta);

  py::class_<qflow::Lattice1D>(m, "Lattice1D")
      .def_static("from_channels", &qflow::Lattice1D::from_channels,
                  py::arg("left"), py::arg("right"), py::arg("spacing") = 1.0,
                  py::arg("time_step") = 1.0)
      .def_static("from_profile", &qflow::Lattice1D::from_profile,
                  py::arg("profile"), py::arg("spacing") = 1.0,
                  py::arg("time_step") = 1.0)
      .def_static("single_mover", &qflow::Lattice1D::single_mover,
                  py::arg("num_sites"), py::arg("site"), py::arg("rightward"),
                  py::arg("spacing") = 1.0, py::arg("time_step") = 1.0)
      .def_property_readonly("num_sites", &qflow::Lattice1D::num_sites)
      .def("left", [](const qflow::Lattice1D& l) { return l.left(); })
      .def("right", [](const qflow::Lattice1D& l) { return l.right(); })
      .def("norm", &qflow::Lattice1D::norm);

  py::class_<qflow::ContinuumReport>(m, "ContinuumReport")
      .def_readonly("num_sites", &qflow::ContinuumReport::num_sites)
      .def_readonly("num_steps", &qflow::ContinuumReport::num_steps)
      .def_readonly("l2_density_error", &qflow::ContinuumReport::l2_density_error)
      .def_readonly("norm_drift", &qflow::ContinuumReport::norm_drift);

  m.def("qlga_step", &qflow::step, py::arg("lattice"), py::arg("params"));
  m.def("occupancy", &qflow::occupancy, py::arg("lattice"));
  m.def("mass_momentum", &qflow::mass_momentum, py::arg("lattice"),
        py::arg("particle_mass"), py::arg("speed"));
  m.def("transport_residual",
        [](const qflow::Lattice1D& lattice, const qflow::ScatteringParams& params) {
          return qflow::transport_residual(lattice, params);
        },
        py::arg("lattice"), py::arg("params"));
  m.def("continuum_compare", &qflow::continuum_compare, py::arg("initial_profile"),
        py::arg("params"), py::arg("num_steps"));
  m.def("gaussian_profile", &qflow::gaussian_profile, py::arg("num_sites"),
        py::arg("center"), py::arg("width"));

  py::class_<qflow::HamiltonianTerm>(m, "HamiltonianTerm")
      .def_static("pauli_term", &qflow::HamiltonianTerm::pauli_term,
                  py::arg("coefficient"), py::arg("letters"))
      .def_static("dense_term", &qflow::HamiltonianTerm::dense_term,
                  py::arg("coefficient"), py::arg("matrix"))
      .def_property_readonly("num_qubits", &qflow::HamiltonianTerm::num_qubits)
      .def("to_dense", &qflow::HamiltonianTerm::to_dense);

  m.def("evolve_exact", &qflow::evolve_exact, py::arg("terms"), py::arg("t"),
        py::arg("state"), py::arg("positive_exponent") = false);
  m.def("evolve_trotter",
        [](const std::vector<qflow::HamiltonianTerm>& terms, double total_time,
           int num_steps, int order, bool positive_exponent,
           const qflow::StateVector& state) {
          const qflow::TrotterPlan plan{terms, total_time, num_steps, order,
                                        positive_exponent};
          return qflow::evolve_trotter(plan, state);
        },
        py::arg("terms"), py::arg("total_time"), py::arg("num_steps"),
        py::arg("order"), py::arg("positive_exponent"), py::arg("state"));
  m.def("split_step_schrodinger", &qflow::split_step_schrodinger,
        py::arg("initial"), py::arg("potential"), py::arg("mass"), py::arg("t"),
        py::arg("num_steps"), py::arg("domain_length") = 6.283185307179586);

  py::class_<qflow::Hamiltonian>(m, "Hamiltonian")
      .def_static("from_dense", &qflow::Hamiltonian::from_dense, py::arg("matrix"))
      .def_static("from_pauli_terms", &qflow::Hamiltonian::from_pauli_terms,
                  py::arg("terms"))
      .def_property_readonly("num_qubits", &qflow::Hamiltonian::num_qubits)
      .def("expectation", &qflow::Hamiltonian::expectation, py::arg("state"))
      .def("to_dense", &qflow::Hamiltonian::to_dense)
      .def("min_eigenvalue", &qflow::Hamiltonian::min_eigenvalue);

  py::class_<qflow::Ansatz>(m, "Ansatz")
      .def(py::init([](int num_qubits, int num_layers) {
             return qflow::Ansatz{num_qubits, num_layers};
           }),
           py::arg("num_qubits"), py::arg("num_layers"))
      .def_readonly("num_qubits", &qflow::Ansatz::num_qubits)
      .def_readonly("num_layers", &qflow::Ansatz::num_layers)
      .def("parameter_count", &qflow::Ansatz::parameter_count);
  m.def("ansatz_circuit", &qflow::ansatz_circuit, py::arg("ansatz"),
        py::arg("parameters"));
  m.def("ansatz_state", &qflow::ansatz_state, py::arg("ansatz"),
        py::arg("parameters"));

  py::class_<qflow::VqeOptions>(m, "VqeOptions")
      .def(py::init<>())
      .def_readwrite("tolerance", &qflow::VqeOptions::tolerance)
      .def_readwrite("max_iterations", &qflow::VqeOptions::max_iterations)
      .def_readwrite("seed", &qflow::VqeOptions::seed)
      .def_readwrite("restarts", &qflow::VqeOptions::restarts)
      .def_readwrite("shots", &qflow::VqeOptions::shots);

  py::class_<qflow::VqeResult>(m, "VqeResult")
      .def_readonly("optimal_parameters", &qflow::VqeResult::optimal_parameters)
      .def_readonly("optimal_energy", &qflow::VqeResult::optimal_energy)
      .def_readonly("trace", &qflow::VqeResult::trace)
      .def_readonly("converged", &qflow::VqeResult::converged)
      .def_readonly("evaluations", &qflow::VqeResult::evaluations);

  m.def("vqe_solve", &qflow::vqe_solve, py::arg("hamiltonian"), py::arg("ansatz"),
        py::arg("options") = qflow::VqeOptions{});
  m.def("build_poisson_operator", &qflow::build_poisson_operator,
        py::arg("grid_points"), py::arg("spacing") = 1.0);

  py::class_<qflow::StokesResult>(m, "StokesResult")
      .def_readonly("solution", &qflow::StokesResult::solution)
      .def_readonly("relative_residual", &qflow::StokesResult::relative_residual)
      .def_readonly("search", &qflow::StokesResult::search);
  m.def("solve_stokes_vqe", &qflow::solve_stokes_vqe, py::arg("grid_points"),
        py::arg("rhs"), py::arg("num_layers"),
        py::arg("options") = qflow::VqeOptions{});

  auto config = m.def_submodule("config");
  config.def("max_qubits", &qflow::config::max_qubits);
  config.def("set_max_qubits", &qflow::config::set_max_qubits, py::arg("n"));
  config.def("num_threads", &qflow::config::num_threads);
  config.def("set_num_threads", &qflow::config::set_num_threads, py::arg("n"));
}
