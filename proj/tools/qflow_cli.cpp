// Command-line front end. Subcommands mirror the library modules; every
// command reads/writes the JSON schemas defined next to the corresponding
// library serializers, prints its primary JSON result on stdout, and writes
// bulk tables (CSV) to files.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include "qflow/circuit.hpp"
#include "qflow/gates.hpp"
#include "qflow/hamsim.hpp"
#include "qflow/loading.hpp"
#include "qflow/qft.hpp"
#include "qflow/qlga.hpp"
#include "qflow/state.hpp"
#include "qflow/tomography.hpp"
#include "qflow/vqe.hpp"

using json = nlohmann::json;
using qflow::cplx;
using qflow::StateVector;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json complex_pair(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx parse_complex(const json& value) {
  if (value.is_number()) return cplx(value.get<double>(), 0.0);
  if (value.is_array() && value.size() == 2)
    return cplx(value[0].get<double>(), value[1].get<double>());
  throw std::runtime_error("expected a number or an [re, im] pair");
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXcd parse_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw std::runtime_error("matrix must be a non-empty array of rows");
  const auto nrows = static_cast<Eigen::Index>(rows.size());
  const auto ncols = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXcd m(nrows, ncols);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != ncols)
      throw std::runtime_error("matrix rows have uneven lengths");
    for (Eigen::Index c = 0; c < ncols; ++c)
      m(r, c) = parse_complex(rows[std::size_t(r)][std::size_t(c)]);
  }
  return m;
}

// Shared file schema for Hamiltonians:
//   {"num_qubits": n, "terms": [{"weight": w, "pauli": "XZ"} |
//                               {"weight": w, "matrix": [[[re,im],...],...]}]}
// num_qubits is optional when every term pins the register size itself.
std::vector<qflow::HamiltonianTerm> parse_terms(const json& doc) {
  if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty())
    throw std::runtime_error("hamiltonian file needs a non-empty terms array");
  std::vector<qflow::HamiltonianTerm> terms;
  for (const auto& entry : doc["terms"]) {
    const double weight = entry.value("weight", 1.0);
    if (entry.contains("pauli")) {
      terms.push_back(qflow::HamiltonianTerm::pauli_term(
          weight, entry["pauli"].get<std::string>()));
    } else if (entry.contains("matrix")) {
      terms.push_back(
          qflow::HamiltonianTerm::dense_term(weight, parse_matrix(entry["matrix"])));
    } else {
      throw std::runtime_error("each term needs a pauli string or a matrix");
    }
  }
  if (doc.contains("num_qubits")) {
    const int declared = doc["num_qubits"].get<int>();
    for (const auto& t : terms)
      if (t.num_qubits() != declared)
        throw std::runtime_error("term size disagrees with declared num_qubits");
  }
  return terms;
}

struct GaussianInit {
  double center = 0.5;
  double width = 0.1;
};

GaussianInit parse_gaussian(const std::string& text) {
  const std::string prefix = "gaussian:";
  if (text.rfind(prefix, 0) != 0)
    throw std::runtime_error("expected init of the form gaussian:<center>,<width>");
  const auto comma = text.find(',', prefix.size());
  if (comma == std::string::npos)
    throw std::runtime_error("expected init of the form gaussian:<center>,<width>");
  GaussianInit g;
  g.center = std::stod(text.substr(prefix.size(), comma - prefix.size()));
  g.width = std::stod(text.substr(comma + 1));
  return g;
}

std::string default_sibling(const std::string& input, const std::string& suffix) {
  const auto dot = input.rfind('.');
  const auto base = dot == std::string::npos ? input : input.substr(0, dot);
  return base + suffix;
}

int run_circuit_cmd(const std::string& path, std::uint64_t shots,
                    std::uint64_t seed, bool statevector,
                    const std::string& csv_path) {
  auto circuit = qflow::circuit_from_json(read_file(path));
  auto initial = StateVector::zero_state(circuit.num_qubits());
  if (statevector) {
    std::cout << qflow::state_to_json(qflow::run_statevector(circuit, initial))
              << "\n";
    return 0;
  }
  auto histogram = qflow::sample(circuit, initial, shots, seed);
  std::cout << qflow::histogram_to_json(histogram) << "\n";
  if (!csv_path.empty()) write_file(csv_path, qflow::histogram_to_csv(histogram));
  return 0;
}

int load_amplitudes_cmd(const std::string& values_path,
                        std::string circuit_path) {
  const auto doc = json::parse(read_file(values_path));
  if (!doc.is_array() || doc.empty())
    throw std::runtime_error("values file must be a JSON array of amplitudes");
  std::vector<cplx> values;
  for (const auto& v : doc) values.push_back(parse_complex(v));

  auto plan = qflow::amplitude_load(values);
  if (circuit_path.empty())
    circuit_path = default_sibling(values_path, ".circuit.json");
  write_file(circuit_path, qflow::circuit_to_json(plan.circuit));

  json report;
  report["max_deviation"] = qflow::readback_verify(plan);
  report["probabilities"] = plan.prepared_reference.probabilities();
  report["circuit_file"] = circuit_path;
  report["input_norm"] = plan.input_norm;
  std::cout << report.dump(2) << "\n";
  return 0;
}

int tomography_cmd(const std::string& circuit_path, std::uint64_t shots,
                   std::uint64_t seed, bool allow_large, bool clip) {
  auto circuit = qflow::circuit_from_json(read_file(circuit_path));
  qflow::TomographyOptions options;
  options.allow_large_registers = allow_large;
  options.clip_to_physical = clip;
  auto estimate = qflow::reconstruct_density(circuit, shots, seed, options);

  json out;
  out["method"] = "linear_inversion";
  out["shots_per_basis"] = estimate.shots_per_basis;
  out["seed"] = estimate.seed;
  out["rho"] = matrix_json(estimate.rho.entries());
  json err = json::array();
  for (Eigen::Index r = 0; r < estimate.entry_stderr.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < estimate.entry_stderr.cols(); ++c)
      row.push_back(estimate.entry_stderr(r, c));
    err.push_back(row);
  }
  out["stderr"] = err;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int qft_cmd(const std::string& input_path, bool inverse, bool no_swaps,
            std::string csv_path) {
  auto state = qflow::state_from_json(read_file(input_path));
  const qflow::QftSpec spec{.num_qubits = state.num_qubits(),
                            .include_final_swaps = !no_swaps};
  auto circuit = inverse ? qflow::inverse_qft_circuit(spec) : qflow::qft_circuit(spec);
  auto out = qflow::run_statevector(circuit, state);

  std::cout << qflow::state_to_json(out) << "\n";
  if (csv_path.empty()) csv_path = default_sibling(input_path, ".magnitudes.csv");
  std::ostringstream csv;
  csv << "basis_index,magnitude,probability\n";
  for (std::uint64_t i = 0; i < out.size(); ++i) {
    const double mag = std::abs(out.amplitude(i));
    csv << i << "," << mag << "," << mag * mag << "\n";
  }
  write_file(csv_path, csv.str());
  return 0;
}

int qlga_cmd(int sites, int steps, double p, const std::string& init,
             double mass, double speed, std::string csv_path) {
  const auto g = parse_gaussian(init);
  auto lattice =
      qflow::Lattice1D::from_profile(qflow::gaussian_profile(sites, g.center, g.width));
  const qflow::ScatteringParams params{.p = p};

  std::ostringstream csv;
  csv << "step,site,occupancy,mass_density,momentum_density\n";
  double max_residual = 0.0;
  auto current = lattice;
  for (int t = 0; t <= steps; ++t) {
    auto occ = qflow::occupancy(current);
    auto [mass_density, momentum_density] = qflow::mass_momentum(current, mass, speed);
    for (int site = 0; site < sites; ++site)
      csv << t << "," << site << "," << occ[std::size_t(site)] << ","
          << mass_density[std::size_t(site)] << ","
          << momentum_density[std::size_t(site)] << "\n";
    if (t == steps) break;
    for (double r : qflow::transport_residual(current, params))
      max_residual = std::max(max_residual, std::abs(r));
    current = qflow::step(current, params);
  }
  if (csv_path.empty()) csv_path = "qlga_series.csv";
  write_file(csv_path, csv.str());

  json summary;
  summary["num_sites"] = sites;
  summary["num_steps"] = steps;
  summary["norm_drift"] = current.norm() - 1.0;
  summary["transport_residual_max"] = max_residual;
  summary["series_file"] = csv_path;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int trotter_cmd(const std::string& terms_path, double time, int steps, int order,
                const std::string& initial_path) {
  const auto terms = parse_terms(json::parse(read_file(terms_path)));
  const int num_qubits = terms.front().num_qubits();
  auto initial = initial_path.empty()
                     ? StateVector::zero_state(num_qubits)
                     : qflow::state_from_json(read_file(initial_path));
  const qflow::TrotterPlan plan{.terms = terms, .total_time = time,
                                .num_steps = steps, .order = order};
  auto final_state = qflow::evolve_trotter(plan, initial);

  json out;
  out["final_state"] = json::parse(qflow::state_to_json(final_state));
  if (num_qubits <= 10) {
    auto exact = qflow::evolve_exact(terms, time, initial);
    double err2 = 0.0;
    for (std::uint64_t i = 0; i < exact.size(); ++i)
      err2 += std::norm(final_state.amplitude(i) - exact.amplitude(i));
    out["error_vs_exact"] = std::sqrt(err2);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int schrodinger_cmd(int grid, const std::string& potential_path, double time,
                    int steps, const std::string& init, double mass,
                    double domain, int frames, std::string csv_path) {
  const auto doc = json::parse(read_file(potential_path));
  if (!doc.is_array() || static_cast<int>(doc.size()) != grid)
    throw std::runtime_error("potential file must hold exactly --grid samples");
  std::vector<double> potential;
  for (const auto& v : doc) potential.push_back(v.get<double>());

  const auto g = parse_gaussian(init);
  std::vector<cplx> psi(static_cast<std::size_t>(grid));
  double norm2 = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double x = domain * double(j) / double(grid);
    const double d = x - g.center;
    psi[std::size_t(j)] = std::exp(-d * d / (4.0 * g.width * g.width));
    norm2 += std::norm(psi[std::size_t(j)]);
  }
  for (auto& a : psi) a /= std::sqrt(norm2);

  if (frames < 1) frames = 1;
  if (frames > steps) frames = steps;
  std::ostringstream csv;
  csv << "frame,time,site,x,density\n";
  auto emit = [&](int frame, double t) {
    for (int j = 0; j < grid; ++j)
      csv << frame << "," << t << "," << j << ","
          << domain * double(j) / double(grid) << "," << std::norm(psi[std::size_t(j)])
          << "\n";
  };
  emit(0, 0.0);
  int done = 0;
  for (int f = 1; f <= frames; ++f) {
    const int target = int(std::int64_t(steps) * f / frames);
    const int chunk = target - done;
    if (chunk > 0) {
      const double dt = time * double(chunk) / double(steps);
      psi = qflow::split_step_schrodinger(psi, potential, mass, dt, chunk, domain);
      done = target;
    }
    emit(f, time * double(done) / double(steps));
  }
  if (csv_path.empty()) csv_path = "schrodinger_density.csv";
  write_file(csv_path, csv.str());

  json summary;
  summary["grid"] = grid;
  summary["frames"] = frames;
  summary["density_file"] = csv_path;
  double norm_after = 0.0;
  for (const auto& a : psi) norm_after += std::norm(a);
  summary["norm_drift"] = std::sqrt(norm_after) - 1.0;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

qflow::Hamiltonian hamiltonian_from_terms(
    const std::vector<qflow::HamiltonianTerm>& terms) {
  bool all_pauli = true;
  for (const auto& t : terms)
    if (!t.pauli.has_value()) all_pauli = false;
  if (all_pauli) {
    std::vector<std::pair<double, std::string>> pairs;
    for (const auto& t : terms) pairs.emplace_back(t.coefficient, t.pauli->letters());
    return qflow::Hamiltonian::from_pauli_terms(std::move(pairs));
  }
  Eigen::MatrixXcd sum = terms.front().to_dense();
  for (std::size_t i = 1; i < terms.size(); ++i) sum += terms[i].to_dense();
  return qflow::Hamiltonian::from_dense(std::move(sum));
}

int vqe_cmd(const std::string& hamiltonian_path, int layers, double tol,
            int restarts, std::uint64_t seed, std::uint64_t shots) {
  const auto terms = parse_terms(json::parse(read_file(hamiltonian_path)));
  auto h = hamiltonian_from_terms(terms);

  qflow::VqeOptions options;
  options.tolerance = tol;
  options.restarts = restarts;
  options.seed = seed;
  options.shots = shots;
  const qflow::Ansatz ansatz{.num_qubits = h.num_qubits(), .num_layers = layers};
  auto result = qflow::vqe_solve(h, ansatz, options);

  json out;
  out["E_opt"] = result.optimal_energy;
  out["params"] = result.optimal_parameters;
  json trace = json::array();
  for (const auto& [iteration, energy] : result.trace)
    trace.push_back(json::array({iteration, energy}));
  out["trace"] = trace;
  out["converged"] = result.converged;
  out["evaluations"] = result.evaluations;
  if (h.num_qubits() <= 6) out["exact_reference"] = h.min_eigenvalue();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int stokes_cmd(int grid, int layers, const std::string& rhs_path,
               std::uint64_t seed, std::string csv_path) {
  std::vector<double> rhs(std::size_t(grid), 1.0);
  if (!rhs_path.empty()) {
    const auto doc = json::parse(read_file(rhs_path));
    if (!doc.is_array() || static_cast<int>(doc.size()) != grid)
      throw std::runtime_error("rhs file must hold exactly --grid samples");
    rhs.clear();
    for (const auto& v : doc) rhs.push_back(v.get<double>());
  }

  qflow::VqeOptions options;
  options.seed = seed;
  auto result = qflow::solve_stokes_vqe(grid, rhs, layers, options);

  std::ostringstream csv;
  csv << "site,re,im,magnitude\n";
  for (int j = 0; j < grid; ++j) {
    const cplx v = result.solution[std::size_t(j)];
    csv << j << "," << v.real() << "," << v.imag() << "," << std::abs(v) << "\n";
  }
  if (csv_path.empty()) csv_path = "stokes_solution.csv";
  write_file(csv_path, csv.str());

  json out;
  out["relative_residual"] = result.relative_residual;
  out["solution_file"] = csv_path;
  out["converged"] = result.search.converged;
  out["evaluations"] = result.search.evaluations;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statevector quantum circuit toolkit"};
  app.require_subcommand(1);

  // run-circuit
  std::string circuit_path;
  std::uint64_t shots = 1024, seed = 1;
  bool statevector = false;
  std::string csv_path;
  auto* run = app.add_subcommand("run-circuit", "simulate a circuit file");
  run->add_option("file", circuit_path, "circuit JSON")->required();
  run->add_option("--shots", shots, "shot count");
  run->add_option("--seed", seed, "sampling seed");
  run->add_flag("--statevector", statevector, "print the exact state instead");
  run->add_option("--csv", csv_path, "also write the histogram as CSV");

  // load-amplitudes
  std::string values_path, circuit_out;
  auto* load = app.add_subcommand("load-amplitudes",
                                  "build a preparation circuit for a value list");
  load->add_option("--values", values_path, "JSON array of amplitudes")->required();
  load->add_option("--circuit-out", circuit_out, "where to write the circuit");

  // tomography
  std::string tomo_circuit;
  std::uint64_t shots_per_basis = 8192, tomo_seed = 1;
  bool allow_large = false, clip = false;
  auto* tomo = app.add_subcommand("tomography",
                                  "reconstruct the output density matrix");
  tomo->add_option("circuit", tomo_circuit, "circuit JSON")->required();
  tomo->add_option("--shots-per-basis", shots_per_basis, "shots per Pauli basis");
  tomo->add_option("--seed", tomo_seed, "sampling seed");
  tomo->add_flag("--allow-large-registers", allow_large, "permit more than 3 qubits");
  tomo->add_flag("--clip", clip, "clip to the physical cone");

  // qft
  std::string qft_input, qft_csv;
  bool inverse = false, no_swaps = false;
  auto* qft = app.add_subcommand("qft", "apply the Fourier transform circuit");
  qft->add_option("--input", qft_input, "state JSON")->required();
  qft->add_flag("--inverse", inverse, "apply the inverse transform");
  qft->add_flag("--no-swaps", no_swaps, "skip the final bit-reversal swaps");
  qft->add_option("--csv", qft_csv, "magnitude table destination");

  // qlga
  int sites = 64, qlga_steps = 64;
  double p = std::numbers::pi / 4;
  std::string init = "gaussian:0.5,0.1", qlga_csv;
  double mass = 1.0, speed = 1.0;
  auto* qlga = app.add_subcommand("qlga", "run the 1D lattice automaton");
  qlga->add_option("--sites", sites, "site count")->required();
  qlga->add_option("--steps", qlga_steps, "time steps")->required();
  qlga->add_option("--p", p, "scattering angle in radians")->required();
  qlga->add_option("--init", init, "initial profile, gaussian:<center>,<width>");
  qlga->add_option("--mass", mass, "particle mass for the density fields");
  qlga->add_option("--speed", speed, "lattice speed for the density fields");
  qlga->add_option("--csv", qlga_csv, "time series destination");

  // trotter
  std::string terms_path, initial_path;
  double time = 1.0;
  int trotter_steps = 100, order = 1;
  auto* trotter = app.add_subcommand("trotter", "product-formula evolution");
  trotter->add_option("--terms", terms_path, "Hamiltonian terms JSON")->required();
  trotter->add_option("--time", time, "total evolution time")->required();
  trotter->add_option("--steps", trotter_steps, "Trotter steps")->required();
  trotter->add_option("--order", order, "1 or 2")->check(CLI::IsMember({1, 2}));
  trotter->add_option("--initial", initial_path, "initial state JSON");

  // schrodinger
  int grid = 256, schro_steps = 100, frames = 8;
  std::string potential_path, schro_init = "gaussian:3.141592653589793,0.3";
  double schro_time = 1.0, schro_mass = 1.0,
         domain = 2.0 * std::numbers::pi;
  std::string schro_csv;
  auto* schro = app.add_subcommand("schrodinger", "split-step grid evolution");
  schro->add_option("--grid", grid, "grid points (power of two)")->required();
  schro->add_option("--potential", potential_path, "JSON array of samples")->required();
  schro->add_option("--time", schro_time, "total evolution time")->required();
  schro->add_option("--steps", schro_steps, "split steps")->required();
  schro->add_option("--init", schro_init, "gaussian:<center>,<width> in domain units");
  schro->add_option("--mass", schro_mass, "particle mass");
  schro->add_option("--domain", domain, "domain length");
  schro->add_option("--frames", frames, "output frames");
  schro->add_option("--csv", schro_csv, "density table destination");

  // vqe
  std::string hamiltonian_path;
  int layers = 2, restarts = 5;
  double tol = 1e-8;
  std::uint64_t vqe_seed = 1, vqe_shots = 0;
  auto* vqe = app.add_subcommand("vqe", "variational ground-state search");
  vqe->add_option("--hamiltonian", hamiltonian_path, "Hamiltonian JSON")->required();
  vqe->add_option("--layers", layers, "ansatz layers");
  vqe->add_option("--tol", tol, "convergence tolerance");
  vqe->add_option("--restarts", restarts, "random restarts");
  vqe->add_option("--seed", vqe_seed, "restart seed");
  vqe->add_option("--shots", vqe_shots, "sampled expectations when positive");

  // stokes
  int stokes_grid = 4, stokes_layers = 2;
  std::string rhs_path, stokes_csv;
  std::uint64_t stokes_seed = 1;
  auto* stokes = app.add_subcommand("stokes", "variational linear solve");
  stokes->add_option("--grid", stokes_grid, "interior grid points")->required();
  stokes->add_option("--layers", stokes_layers, "ansatz layers");
  stokes->add_option("--rhs", rhs_path, "JSON array forcing vector");
  stokes->add_option("--seed", stokes_seed, "restart seed");
  stokes->add_option("--csv", stokes_csv, "solution field destination");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return run_circuit_cmd(circuit_path, shots, seed, statevector, csv_path);
    if (load->parsed()) return load_amplitudes_cmd(values_path, circuit_out);
    if (tomo->parsed())
      return tomography_cmd(tomo_circuit, shots_per_basis, tomo_seed, allow_large,
                            clip);
    if (qft->parsed()) return qft_cmd(qft_input, inverse, no_swaps, qft_csv);
    if (qlga->parsed())
      return qlga_cmd(sites, qlga_steps, p, init, mass, speed, qlga_csv);
    if (trotter->parsed())
      return trotter_cmd(terms_path, time, trotter_steps, order, initial_path);
    if (schro->parsed())
      return schrodinger_cmd(grid, potential_path, schro_time, schro_steps,
                             schro_init, schro_mass, domain, frames, schro_csv);
    if (vqe->parsed())
      return vqe_cmd(hamiltonian_path, layers, tol, restarts, vqe_seed, vqe_shots);
    if (stokes->parsed())
      return stokes_cmd(stokes_grid, stokes_layers, rhs_path, stokes_seed,
                        stokes_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
