#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dirac_noise/dirac_model.hpp"
#include "dirac_noise/errors.hpp"
#include "test_support.hpp"

using namespace dirac_noise;
using namespace dirac_noise::testing;
using Catch::Approx;

namespace {

DiracParams make(double m, double p, double kappa, double mu, double e,
                 double theta = std::numbers::pi / 4) {
  DiracParams params;
  params.m = m;
  params.p = p;
  params.kappa = kappa;
  params.mu = mu;
  params.E_field = e;
  params.theta = theta;
  return params;
}

// Independent closed forms at theta = pi/4.
double g2_oracle(const DiracParams& q) {
  return q.E_field * q.E_field *
         (q.m * q.m * q.kappa * q.kappa + 0.5 * (q.mu * q.mu + q.kappa * q.kappa) * q.p * q.p);
}

double lambda_oracle(const DiracParams& q, int n, int s) {
  const double base = q.p * q.p + q.m * q.m + (q.kappa * q.kappa + q.mu * q.mu) * q.E_field * q.E_field;
  const double sign_s = s == 0 ? 1.0 : -1.0;
  const double sign_n = n == 0 ? 1.0 : -1.0;
  return sign_n * std::sqrt(base + 2 * sign_s * std::sqrt(g2_oracle(q)));
}

DiracParams random_params(bool quarter_pi) {
  return make(uniform(0, 5), uniform(0, 5), uniform(-2, 2), uniform(-2, 2), uniform(0, 3),
              quarter_pi ? std::numbers::pi / 4 : uniform(-4, 4));
}

}  // namespace

TEST_CASE("Dirac matrices obey the Clifford relations", "[dirac]") {
  using namespace dirac_matrices;
  const ComplexMatrix id = ComplexMatrix::identity(4);
  CHECK(beta() * beta() == id);
  for (int i = 0; i < 3; ++i) {
    CHECK(max_abs_diff(beta() * alpha(i) + alpha(i) * beta(), ComplexMatrix(4)) == 0.0);
    for (int j = 0; j < 3; ++j) {
      const ComplexMatrix anti = alpha(i) * alpha(j) + alpha(j) * alpha(i);
      CHECK(max_abs_diff(anti, i == j ? 2.0 * id : ComplexMatrix(4)) == 0.0);
    }
    CHECK(hermiticity_defect(alpha(i)) == 0.0);
    CHECK(hermiticity_defect(sigma(i)) == 0.0);
  }
  CHECK_THROWS_AS(alpha(3), InvalidInput);
}

TEST_CASE("build_dirac_hamiltonian examples", "[dirac]") {
  CHECK(build_dirac_hamiltonian(make(1, 0, 0, 0, 0)) ==
        ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}));
  CHECK(build_dirac_hamiltonian(make(0, 1, 0, 0, 0)) == tensor_product(pauli::X(), pauli::X()));

  const auto h = build_dirac_hamiltonian(make(0, 1, 1, 1, 1));
  CHECK(hermiticity_defect(h) <= 1e-12);
  const auto ev = hermitian_eigenvalues(h);
  CHECK(ev[0] == Approx(-std::sqrt(5.0)).epsilon(1e-12));
  CHECK(ev[1] == Approx(-1.0).epsilon(1e-12));
  CHECK(ev[2] == Approx(1.0).epsilon(1e-12));
  CHECK(ev[3] == Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("invalid parameters are rejected", "[dirac]") {
  CHECK_THROWS_AS(build_dirac_hamiltonian(make(-1, 1, 1, 1, 1)), InvalidInput);
  CHECK_THROWS_AS(build_dirac_hamiltonian(make(1, -1, 1, 1, 1)), InvalidInput);
  CHECK_THROWS_AS(build_dirac_hamiltonian(make(1, 1, 1, 1, -1)), InvalidInput);
  CHECK_THROWS_AS(build_invariant_operator(make(std::nan(""), 1, 1, 1, 1)), InvalidInput);
  CHECK_THROWS_AS(compute_g2(make(1, 1, INFINITY, 1, 1)), InvalidInput);
}

TEST_CASE("Hamiltonian trace identities", "[dirac][property]") {
  for (int trial = 0; trial < 100; ++trial) {
    const DiracParams q = random_params(false);
    const ComplexMatrix h = build_dirac_hamiltonian(q);
    const double scale = std::max(1.0, h.max_norm());
    CHECK(hermiticity_defect(h) <= 1e-12 * scale);
    CHECK(std::abs(h.trace()) <= 1e-12 * scale);
    const double expect =
        4 * (q.p * q.p + q.m * q.m + (q.kappa * q.kappa + q.mu * q.mu) * q.E_field * q.E_field);
    CHECK((h * h).trace().real() == Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("invariant operator examples", "[dirac]") {
  CHECK(build_invariant_operator(make(2, 3, 0, 0, 1)) == ComplexMatrix(4));

  const auto ev = hermitian_eigenvalues(build_invariant_operator(make(0, 1, 1, 1, 1)));
  CHECK(ev[0] == Approx(-1.0));
  CHECK(ev[1] == Approx(-1.0));
  CHECK(ev[2] == Approx(1.0));
  CHECK(ev[3] == Approx(1.0));
}

TEST_CASE("invariant operator commutes with H and is its traceless square", "[dirac][property]") {
  for (int trial = 0; trial < 200; ++trial) {
    const DiracParams q = random_params(false);
    const ComplexMatrix h = build_dirac_hamiltonian(q);
    const ComplexMatrix o = build_invariant_operator(q);
    const double scale = std::max(1.0, (h * h).max_norm());
    CHECK(hermiticity_defect(o) <= 1e-12 * scale);
    CHECK(max_abs_diff(o * h, h * o) <= 1e-10 * scale);
    const ComplexMatrix h2 = h * h;
    const ComplexMatrix traceless = 0.5 * (h2 - (0.25 * h2.trace()) * ComplexMatrix::identity(4));
    CHECK(max_abs_diff(o, traceless) <= 1e-10 * scale);
  }
}

TEST_CASE("compute_g2 examples and closed form", "[dirac]") {
  CHECK(compute_g2(make(1, 1, 1, 1, 0)) == 0.0);
  CHECK(compute_g2(make(0, 1, 1, 1, 1)) == Approx(1.0).epsilon(1e-12));
  CHECK(compute_g2(make(1, 1, 1, 1, 1)) == Approx(2.0).epsilon(1e-12));
  for (int trial = 0; trial < 200; ++trial) {
    const DiracParams q = random_params(true);
    CHECK(compute_g2(q) == Approx(g2_oracle(q)).epsilon(1e-10).margin(1e-12));
  }
}

TEST_CASE("closed-form eigenvalues", "[dirac]") {
  const DiracParams massless = make(0, 1, 1, 1, 1);
  CHECK(eigenvalue_closed_form(massless, 0, 0) == Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(eigenvalue_closed_form(massless, 0, 1) == Approx(1.0).epsilon(1e-12));
  CHECK(eigenvalue_closed_form(massless, 1, 0) == Approx(-std::sqrt(5.0)).epsilon(1e-12));
  CHECK(eigenvalue_closed_form(massless, 1, 1) == Approx(-1.0).epsilon(1e-12));

  const DiracParams massive = make(1, 1, 1, 1, 1);
  CHECK(eigenvalue_closed_form(massive, 0, 0) ==
        Approx(std::sqrt(4 + 2 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(eigenvalue_closed_form(massive, 0, 1) ==
        Approx(std::sqrt(4 - 2 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(eigenvalue_closed_form(massive, 0, 0) == Approx(2.6131259).epsilon(1e-7));
  CHECK(eigenvalue_closed_form(massive, 0, 1) == Approx(1.0823922).epsilon(1e-7));

  const DiracParams free_particle = make(3, 4, 1, 1, 0);
  for (int n = 0; n < 2; ++n)
    for (int s = 0; s < 2; ++s)
      CHECK(std::abs(eigenvalue_closed_form(free_particle, n, s)) == Approx(5.0));

  CHECK_THROWS_AS(eigenvalue_closed_form(make(1, 1, 1, 1, 1, 0.3), 0, 0), UnsupportedConfiguration);
  CHECK_THROWS_AS(eigenvalue_closed_form(massive, 2, 0), InvalidInput);
}

TEST_CASE("closed-form eigenvalues match numeric diagonalization", "[dirac][property]") {
  for (int trial = 0; trial < 300; ++trial) {
    const DiracParams q = random_params(true);
    std::array<double, 4> closed{};
    for (int n = 0; n < 2; ++n)
      for (int s = 0; s < 2; ++s) {
        closed[2 * n + s] = eigenvalue_closed_form(q, n, s);
        CHECK(closed[2 * n + s] == Approx(lambda_oracle(q, n, s)).epsilon(1e-12).margin(1e-12));
      }
    CHECK(eigenvalue_closed_form(q, 1, 0) == -eigenvalue_closed_form(q, 0, 0));
    std::sort(closed.begin(), closed.end());
    const auto numeric = hermitian_eigenvalues(build_dirac_hamiltonian(q));
    const double scale = std::max(1.0, std::abs(numeric[3]));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(closed[k] - numeric[k]) <= 1e-10 * scale);
  }
}

TEST_CASE("eigenprojectors", "[dirac]") {
  const DiracParams q = make(0, 1, 1, 1, 1);
  const SpectralData sd = eigenprojectors(q);
  CHECK(sd.g2 == Approx(1.0));

  ComplexMatrix total(4);
  for (const auto& proj : sd.projectors) total += proj;
  CHECK(max_abs_diff(total, ComplexMatrix::identity(4)) <= 1e-10);
  CHECK(max_abs_diff(sd.projector(0, 0) * sd.projector(1, 1), ComplexMatrix(4)) <= 1e-10);

  CHECK_THROWS_AS(eigenprojectors(make(1, 1, 1, 1, 0)), DegenerateSpectrum);
  CHECK_THROWS_AS(eigenprojectors(make(0, 0, 0, 0, 0)), DegenerateSpectrum);
}

TEST_CASE("eigenprojector invariants over random parameters", "[dirac][property]") {
  for (int trial = 0; trial < 100; ++trial) {
    const DiracParams q = random_params(trial % 2 == 0);
    const SpectralData sd = eigenprojectors(q);
    const ComplexMatrix h = build_dirac_hamiltonian(q);
    for (int n = 0; n < 2; ++n) {
      for (int s = 0; s < 2; ++s) {
        const ComplexMatrix& rho = sd.projector(n, s);
        CHECK(sd.lambda(1, s) == -sd.lambda(0, s));
        CHECK(std::abs(rho.trace() - 1.0) <= 1e-10);
        CHECK(hermiticity_defect(rho) <= 1e-10);
        CHECK(max_abs_diff(h * rho, sd.lambda(n, s) * rho) <= 1e-10 * std::max(1.0, h.max_norm()));
        CHECK((h * rho).trace().real() == Approx(sd.lambda(n, s)).epsilon(1e-10));
        for (int m = 0; m < 2; ++m)
          for (int l = 0; l < 2; ++l) {
            const ComplexMatrix expect = (n == m && s == l) ? rho : ComplexMatrix(4);
            CHECK(max_abs_diff(rho * sd.projector(m, l), expect) <= 1e-10);
          }
      }
    }
  }
}
