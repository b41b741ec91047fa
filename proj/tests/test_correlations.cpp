#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dirac_noise/correlations.hpp"
#include "dirac_noise/errors.hpp"
#include "test_support.hpp"

using namespace dirac_noise;
using namespace dirac_noise::testing;
using Catch::Approx;

namespace {

DensityMatrix bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure({r, 0.0, 0.0, r});
}

DensityMatrix isotropic(double q) {
  return DensityMatrix(q * bell().matrix() + (0.25 * (1 - q)) * ComplexMatrix::identity(4));
}

DensityMatrix schmidt(double chi) {
  return DensityMatrix::pure({std::cos(chi), 0.0, 0.0, std::sin(chi)});
}

DensityMatrix conjugate_local(const DensityMatrix& rho, const ComplexMatrix& u, const ComplexMatrix& v) {
  const ComplexMatrix w = tensor_product(u, v);
  const ComplexMatrix out = w * rho.matrix() * w.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

}  // namespace

TEST_CASE("fano_decompose examples", "[correlations]") {
  const FanoData mixed = fano_decompose(DensityMatrix(0.25 * ComplexMatrix::identity(4)));
  for (int i = 0; i < 3; ++i) {
    CHECK(mixed.a1[i] == 0.0);
    CHECK(mixed.a2[i] == 0.0);
    for (int j = 0; j < 3; ++j) CHECK(mixed.T[i][j] == 0.0);
  }

  const FanoData ground = fano_decompose(basis_projector(0));
  CHECK(ground.a1 == Vec3{0.0, 0.0, 1.0});
  CHECK(ground.a2 == Vec3{0.0, 0.0, 1.0});
  CHECK(ground.T[2][2] == 1.0);
  CHECK(ground.T[0][0] == 0.0);

  const FanoData b = fano_decompose(bell());
  CHECK(std::abs(b.a1[2]) < 1e-15);
  CHECK(b.T[0][0] == Approx(1.0));
  CHECK(b.T[1][1] == Approx(-1.0));
  CHECK(b.T[2][2] == Approx(1.0));
  CHECK(std::abs(b.T[0][1]) < 1e-15);
}

TEST_CASE("Fano reconstruction round-trips random states", "[correlations][property]") {
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = random_state(1 + trial % 4);
    const FanoData f = fano_decompose(rho);
    CHECK(max_abs_diff(fano_reconstruct(f), rho.matrix()) <= 1e-10);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(f.a1[i]) <= 1 + 1e-9);
      CHECK(std::abs(f.a2[i]) <= 1 + 1e-9);
      for (int j = 0; j < 3; ++j) CHECK(std::abs(f.T[i][j]) <= 1 + 1e-9);
    }
  }
}

TEST_CASE("negativity examples", "[correlations]") {
  CHECK(negativity(bell()) == Approx(1.0).epsilon(1e-10));
  CHECK(negativity(isotropic(0.5)) == Approx(0.25).epsilon(1e-10));
  CHECK(negativity(isotropic(0.2)) == 0.0);
  CHECK(negativity(DensityMatrix(0.25 * ComplexMatrix::identity(4))) == 0.0);
  CHECK(negativity(basis_projector(2)) == 0.0);
  CHECK_THROWS_AS(negativity(bell(), 3), InvalidInput);
}

TEST_CASE("negativity of the isotropic family", "[correlations][property]") {
  for (int k = 0; k <= 20; ++k) {
    const double q = k / 20.0;
    const double expect = q > 1.0 / 3 ? (3 * q - 1) / 2 : 0.0;
    CHECK(negativity(isotropic(q)) == Approx(expect).margin(1e-10));
  }
}

TEST_CASE("geometric discord examples", "[correlations]") {
  CHECK(geometric_discord(DensityMatrix(0.25 * ComplexMatrix::identity(4)), 1) == 0.0);
  CHECK(geometric_discord(basis_projector(0), 1) == 0.0);
  CHECK(geometric_discord(basis_projector(0), 2) == 0.0);
  CHECK(geometric_discord(bell(), 1) == Approx(0.5).epsilon(1e-10));
  CHECK(geometric_discord(bell(), 2) == Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(geometric_discord(bell(), 0), InvalidInput);
}

TEST_CASE("Schmidt states match the pure-state formulas", "[correlations][property]") {
  for (int k = 0; k <= 4; ++k) {
    const double chi = k * std::numbers::pi / 16;
    const DensityMatrix rho = schmidt(chi);
    const double s = std::sin(2 * chi);
    CHECK(std::abs(negativity(rho) - std::abs(s)) <= 1e-10);
    CHECK(std::abs(geometric_discord(rho, 1) - s * s / 2) <= 1e-10);
    CHECK(std::abs(geometric_discord(rho, 2) - s * s / 2) <= 1e-10);
  }
}

TEST_CASE("measures are invariant under local unitaries", "[correlations][property]") {
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_state(1 + trial % 4);
    const DensityMatrix moved = conjugate_local(rho, random_unitary(2), random_unitary(2));
    CHECK(std::abs(negativity(moved) - negativity(rho)) <= 1e-10);
    CHECK(std::abs(geometric_discord(moved, 1) - geometric_discord(rho, 1)) <= 1e-10);
    CHECK(std::abs(geometric_discord(moved, 2) - geometric_discord(rho, 2)) <= 1e-10);
    CHECK(std::abs(negativity(rho, 1) - negativity(rho, 2)) <= 1e-12);
  }
}

TEST_CASE("separable mixtures have zero negativity", "[correlations][property]") {
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix mix(4);
    double total = 0.0;
    const int terms = 1 + trial % 5;
    for (int k = 0; k < terms; ++k) {
      const double w = uniform(0.1, 1.0);
      mix += w * random_product_state().matrix();
      total += w;
    }
    mix *= 1.0 / total;
    const DensityMatrix rho(0.5 * (mix + mix.adjoint()));
    CHECK(negativity(rho) == 0.0);
    if (terms == 1) {
      CHECK(geometric_discord(rho, 1) == 0.0);
      CHECK(geometric_discord(rho, 2) == 0.0);
    }
  }
}

TEST_CASE("classical-quantum states have zero discord on the classical side", "[correlations]") {
  // p |0><0| (x) r0 + (1-p) |1><1| (x) r1
  for (int trial = 0; trial < 50; ++trial) {
    const double p = uniform(0, 1);
    const ComplexMatrix r0 = random_product_state().matrix();
    const ComplexMatrix zero_proj = ComplexMatrix::diagonal({1.0, 0.0});
    const ComplexMatrix one_proj = ComplexMatrix::diagonal({0.0, 1.0});
    auto reduced = [](const ComplexMatrix& full) {
      ComplexMatrix r(2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = full(i, j) + full(i + 2, j + 2);
      return r;
    };
    const ComplexMatrix a = reduced(r0);
    const ComplexMatrix b = reduced(random_product_state().matrix());
    const ComplexMatrix rho = p * tensor_product(zero_proj, a) + (1 - p) * tensor_product(one_proj, b);
    CHECK(geometric_discord(DensityMatrix(0.5 * (rho + rho.adjoint())), 1) <= 1e-10);
  }
}

TEST_CASE("hierarchy and ranges on random states", "[correlations][property]") {
  for (int trial = 0; trial < 300; ++trial) {
    const DensityMatrix rho = random_state(1 + trial % 4);
    const double n = negativity(rho);
    const double d1 = geometric_discord(rho, 1);
    const double d2 = geometric_discord(rho, 2);
    CHECK(n >= 0.0);
    CHECK(n <= 1 + 1e-9);
    CHECK(d1 >= 0.0);
    CHECK(d1 <= 0.5 + 1e-9);
    CHECK(d2 <= 0.5 + 1e-9);
    CHECK((n / 2) * (n / 2) <= d1 + 1e-9);
  }
}

TEST_CASE("purity and measure sample", "[correlations]") {
  CHECK(purity(bell()) == Approx(1.0));
  CHECK(purity(DensityMatrix(0.25 * ComplexMatrix::identity(4))) == Approx(0.25));
  CHECK(purity(DensityMatrix(ComplexMatrix::diagonal({0.5, 0.0, 0.0, 0.5}))) == Approx(0.5));

  const CorrelationSample s = measure(bell(), 1.5);
  CHECK(s.t == 1.5);
  CHECK(s.negativity == Approx(1.0));
  CHECK(s.discord_1 == Approx(0.5));
  CHECK(s.discord_2 == Approx(0.5));
  CHECK(s.purity == Approx(1.0));
  CHECK(std::abs(s.min_eigenvalue) < 1e-12);
  CHECK(std::abs(s.trace_deviation) < 1e-15);
}
