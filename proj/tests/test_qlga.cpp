#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qflow/qlga.hpp"
#include "qflow/rng.hpp"
#include "support/oracles.hpp"

using qflow::cplx;
using qflow::Lattice1D;
using qflow::ScatteringParams;

namespace {

constexpr double kPi = std::numbers::pi;

Lattice1D random_lattice(int sites, std::uint64_t key) {
  qflow::CounterRng rng(key);
  const auto count = static_cast<std::size_t>(sites);
  std::vector<cplx> left(count), right(count);
  for (auto& a : left) a = cplx(rng.normal(), rng.normal());
  for (auto& a : right) a = cplx(rng.normal(), rng.normal());
  double norm2 = 0.0;
  for (const auto& a : left) norm2 += std::norm(a);
  for (const auto& a : right) norm2 += std::norm(a);
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : left) a *= scale;
  for (auto& a : right) a *= scale;
  return Lattice1D::from_channels(std::move(left), std::move(right));
}

// Flattened dense one-step operator: channel layout (left_0..left_{N-1},
// right_0..right_{N-1}), advection after site-local scattering.
Eigen::MatrixXcd dense_step_operator(int n, const ScatteringParams& params) {
  const cplx c(std::cos(params.p), 0.0);
  const cplx is(0.0, std::sin(params.p));
  Eigen::MatrixXcd scatter = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int site = 0; site < n; ++site) {
    scatter(site, site) = c;
    scatter(site, n + site) = is;
    scatter(n + site, site) = is;
    scatter(n + site, n + site) = c;
  }
  Eigen::MatrixXcd advect = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int site = 0; site < n; ++site) {
    advect((site - 1 + n) % n, site) = 1.0;              // left movers shift -1
    advect(n + (site + 1) % n, n + site) = 1.0;          // right movers shift +1
  }
  return advect * scatter;
}

Eigen::VectorXcd flatten(const Lattice1D& lattice) {
  const int n = lattice.num_sites();
  Eigen::VectorXcd v(2 * n);
  for (int site = 0; site < n; ++site) {
    v(site) = lattice.left()[std::size_t(site)];
    v(n + site) = lattice.right()[std::size_t(site)];
  }
  return v;
}

}  // namespace

TEST_SUITE("qlga") {
  TEST_CASE("single-particle scattering matrix matches its closed form") {
    auto identity = qflow::scattering_matrix_1({.p = 0.0});
    CHECK((identity - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);

    auto reflect = qflow::scattering_matrix_1({.p = kPi / 2});
    Eigen::Matrix2cd ix;
    ix << 0.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 0.0;
    CHECK((reflect - ix).cwiseAbs().maxCoeff() < 1e-15);

    auto half = qflow::scattering_matrix_1({.p = kPi / 4});
    const double r = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(half(0, 0) - r) < 1e-15);
    CHECK(std::abs(half(0, 1) - cplx(0.0, r)) < 1e-15);
    CHECK(std::abs(half(1, 0) - cplx(0.0, r)) < 1e-15);
    CHECK(std::abs(half(1, 1) - r) < 1e-15);

    qflow::CounterRng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      auto s = qflow::scattering_matrix_1({.p = rng.uniform(0.0, 2.0 * kPi)});
      CHECK((s * s.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }

  TEST_CASE("two-particle scattering matrix keeps the block structure") {
    auto identity = qflow::scattering_matrix_2({.p = 0.0, .theta = 1.0});
    CHECK((identity - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() == 0.0);

    auto blocked = qflow::scattering_matrix_2({.p = kPi / 4, .theta = -1.0});
    auto core = qflow::scattering_matrix_1({.p = kPi / 4});
    CHECK(blocked(0, 0) == cplx(1.0, 0.0));
    CHECK(blocked(3, 3) == cplx(-1.0, 0.0));
    CHECK(std::abs(blocked(1, 1) - core(0, 0)) == 0.0);
    CHECK(std::abs(blocked(1, 2) - core(0, 1)) == 0.0);
    CHECK(std::abs(blocked(2, 1) - core(1, 0)) == 0.0);
    CHECK(std::abs(blocked(2, 2) - core(1, 1)) == 0.0);
    for (int row : {0, 3})
      for (int col = 0; col < 4; ++col)
        if (row != col) CHECK(std::abs(blocked(row, col)) == 0.0);

    qflow::CounterRng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
      ScatteringParams params{.p = rng.uniform(0.0, 2.0 * kPi),
                              .theta = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi))};
      auto s = qflow::scattering_matrix_2(params);
      CHECK((s * s.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <
            1e-12);
    }

    CHECK_THROWS_AS(qflow::scattering_matrix_2({.p = 0.1, .theta = cplx(0.5, 0.0)}),
                    std::invalid_argument);
  }

  TEST_CASE("free streaming advects movers without mixing") {
    auto lattice = Lattice1D::single_mover(8, 3, true);
    auto stepped = qflow::step(lattice, {.p = 0.0});
    CHECK(std::abs(stepped.right()[4] - 1.0) == 0.0);
    CHECK(qflow::occupancy(stepped)[4] == 1.0);

    auto leftward = qflow::step(Lattice1D::single_mover(8, 0, false), {.p = 0.0});
    CHECK(std::abs(leftward.left()[7] - 1.0) == 0.0);
  }

  TEST_CASE("full scattering turns a right mover into a left mover behind it") {
    auto lattice = Lattice1D::single_mover(8, 3, true);
    auto stepped = qflow::step(lattice, {.p = kPi / 2});
    CHECK(std::abs(stepped.left()[2] - cplx(0.0, 1.0)) < 1e-15);
    for (int site = 0; site < 8; ++site) {
      CHECK(std::abs(stepped.right()[std::size_t(site)]) < 1e-15);
      if (site != 2) CHECK(std::abs(stepped.left()[std::size_t(site)]) < 1e-15);
    }
  }

  TEST_CASE("step equals the dense scatter-then-advect operator") {
    for (std::uint64_t key = 1; key <= 5; ++key) {
      auto lattice = random_lattice(4, key * 11);
      const ScatteringParams params{.p = 0.3 + 0.2 * double(key)};
      auto fast = qflow::step(lattice, params);
      Eigen::VectorXcd dense = dense_step_operator(4, params) * flatten(lattice);
      CHECK((flatten(fast) - dense).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("occupancy matches the density-matrix trace oracle") {
    auto lattice = random_lattice(6, 77);
    auto occ = qflow::occupancy(lattice);
    Eigen::VectorXcd psi = flatten(lattice);
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    double total = 0.0;
    for (int site = 0; site < 6; ++site) {
      // Number operator for site: projector onto its two channel slots.
      double traced = rho(site, site).real() + rho(6 + site, 6 + site).real();
      CHECK(std::abs(occ[std::size_t(site)] - traced) < 1e-14);
      total += occ[std::size_t(site)];
    }
    CHECK(std::abs(total - 1.0) < 1e-10);

    auto mover = qflow::occupancy(Lattice1D::single_mover(5, 2, true));
    CHECK(mover[2] == 1.0);
    std::vector<cplx> channel(5, std::sqrt(0.1));
    auto flat = qflow::occupancy(Lattice1D::from_channels(channel, channel));
    for (double value : flat) CHECK(value == doctest::Approx(0.2).epsilon(1e-12));
  }

  TEST_CASE("mass and momentum densities carry the channel imbalance") {
    const int n = 4;
    std::vector<cplx> right(std::size_t(n), 0.5), none(std::size_t(n), 0.0);
    auto all_right = Lattice1D::from_channels(none, right, 0.25);
    auto [mass, momentum] = qflow::mass_momentum(all_right, 2.0, 3.0);
    for (int site = 0; site < n; ++site) {
      CHECK(mass[std::size_t(site)] ==
            doctest::Approx(2.0 * 0.25 / 0.25).epsilon(1e-12));
      CHECK(momentum[std::size_t(site)] ==
            doctest::Approx(3.0 * mass[std::size_t(site)]).epsilon(1e-12));
    }

    std::vector<cplx> balanced(std::size_t(n), 0.5 / std::sqrt(2.0));
    auto symmetric = Lattice1D::from_channels(balanced, balanced);
    auto [mass_s, momentum_s] = qflow::mass_momentum(symmetric, 1.5, 2.0);
    double mass_total = 0.0;
    for (int site = 0; site < n; ++site) {
      CHECK(std::abs(momentum_s[std::size_t(site)]) < 1e-14);
      mass_total += mass_s[std::size_t(site)] * symmetric.spacing();
    }
    CHECK(mass_total == doctest::Approx(1.5).epsilon(1e-12));
  }

  TEST_CASE("transport balance closes for the true evolution") {
    auto free_res = qflow::transport_residual(random_lattice(8, 3), {.p = 0.0});
    for (double r : free_res) CHECK(std::abs(r) < 1e-12);

    auto res = qflow::transport_residual(random_lattice(8, 4), {.p = kPi / 8});
    for (double r : res) CHECK(std::abs(r) < 1e-10);
  }

  TEST_CASE("breaking the advection direction breaks the balance") {
    auto lattice = random_lattice(8, 9);
    const ScatteringParams params{.p = kPi / 8};
    // Scatter correctly, then advect the wrong way (right movers -1).
    const cplx c(std::cos(params.p), 0.0);
    const cplx is(0.0, std::sin(params.p));
    std::vector<cplx> left(8), right(8);
    for (int site = 0; site < 8; ++site) {
      const cplx l = lattice.left()[std::size_t(site)];
      const cplx r = lattice.right()[std::size_t(site)];
      left[std::size_t((site + 1) % 8)] = c * l + is * r;
      right[std::size_t((site - 1 + 8) % 8)] = is * l + c * r;
    }
    auto broken = Lattice1D::from_channels(std::move(left), std::move(right));
    auto res = qflow::transport_residual(lattice, params, broken);
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, std::abs(r));
    CHECK(worst > 1e-3);
  }

  TEST_CASE("norm survives long evolutions") {
    auto lattice = random_lattice(64, 21);
    const ScatteringParams params{.p = 0.37};
    auto current = lattice;
    for (int i = 0; i < 1000; ++i) {
      auto next = qflow::step(current, params);
      current = next;
    }
    CHECK(std::abs(current.norm() - 1.0) < 1e-10);
  }

  TEST_CASE("zero scattering angle translates profiles rigidly") {
    auto profile = qflow::gaussian_profile(32, 0.5, 0.1);
    std::vector<cplx> none(32, 0.0);
    std::vector<cplx> right(profile);
    auto lattice = Lattice1D::from_channels(none, right);
    auto initial = qflow::occupancy(lattice);
    auto current = lattice;
    const int steps = 7;
    for (int i = 0; i < steps; ++i) current = qflow::step(current, {.p = 0.0});
    auto moved = qflow::occupancy(current);
    for (int site = 0; site < 32; ++site)
      CHECK(moved[std::size_t((site + steps) % 32)] == initial[std::size_t(site)]);
  }

  TEST_CASE("gaussian profiles are normalized and centered") {
    auto profile = qflow::gaussian_profile(64, 0.25, 0.05);
    double norm2 = 0.0;
    std::size_t peak = 0;
    for (std::size_t j = 0; j < 64; ++j) {
      norm2 += std::norm(profile[j]);
      if (std::abs(profile[j]) > std::abs(profile[peak])) peak = j;
    }
    CHECK(std::abs(norm2 - 1.0) < 1e-12);
    CHECK(peak == 16);  // 0.25 * 64
  }

  TEST_CASE("lattice construction validates norms") {
    std::vector<cplx> big(4, 1.0);
    CHECK_THROWS_AS(Lattice1D::from_channels(big, big), std::invalid_argument);
    CHECK_THROWS_AS(Lattice1D::from_channels({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Lattice1D::from_channels({0.5, 0.5}, {0.5}), std::invalid_argument);
  }

  TEST_CASE("continuum comparison error falls with resolution") {
    const ScatteringParams params{.p = kPi / 4};
    std::vector<double> errors;
    for (int n : {64, 128, 256}) {
      auto profile = qflow::gaussian_profile(n, 0.5, 0.09);
      const int steps = n * n / 64;  // fixed physical time in diffusive units
      auto report = qflow::continuum_compare(profile, params, steps);
      CHECK(report.num_sites == n);
      CHECK(std::abs(report.norm_drift) < 1e-9);
      errors.push_back(report.l2_density_error);
    }
    CHECK(errors[1] < errors[0]);
    CHECK(errors[2] < errors[1]);
  }

  TEST_CASE("zero steps reports only the sampling discrepancy") {
    auto profile = qflow::gaussian_profile(128, 0.5, 0.08);
    auto report = qflow::continuum_compare(profile, {.p = kPi / 4}, 0);
    CHECK(report.l2_density_error < 1e-10);
    CHECK(report.num_steps == 0);
  }

  TEST_CASE("continuum comparison rejects the free-streaming pole") {
    auto profile = qflow::gaussian_profile(64, 0.5, 0.1);
    CHECK_THROWS_AS(qflow::continuum_compare(profile, {.p = 1e-5}, 10),
                    std::invalid_argument);
  }
}
