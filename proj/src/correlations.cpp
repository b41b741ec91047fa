#include "dirac_noise/correlations.hpp"

#include <cmath>

#include "dirac_noise/errors.hpp"

namespace dirac_noise {

namespace {

const std::array<ComplexMatrix, 3>& paulis() {
  static const std::array<ComplexMatrix, 3> p = {pauli::X(), pauli::Y(), pauli::Z()};
  return p;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double clamp_small(double x) { return std::abs(x) <= kMeasureClampThreshold ? 0.0 : x; }

// Tr[rho (a (x) b)], with the imaginary part discarded.
double expectation(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex value = (rho * tensor_product(a, b)).trace();
  if (std::abs(value.imag()) > 1e-10) {
    throw InvalidInput("Pauli expectation has an imaginary part; input is not Hermitian");
  }
  return value.real();
}

double sq_norm(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

}  // namespace

FanoData fano_decompose(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  if (!(hermiticity_defect(m) <= kHermiticityTol)) {
    throw InvalidInput("fano_decompose: input is not Hermitian");
  }
  const ComplexMatrix id = pauli::I();
  FanoData f;
  for (int i = 0; i < 3; ++i) {
    f.a1[i] = expectation(m, paulis()[i], id);
    f.a2[i] = expectation(m, id, paulis()[i]);
    for (int j = 0; j < 3; ++j) f.T[i][j] = expectation(m, paulis()[i], paulis()[j]);
  }
  return f;
}

ComplexMatrix fano_reconstruct(const FanoData& fano) {
  const ComplexMatrix id = pauli::I();
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (int i = 0; i < 3; ++i) {
    m += fano.a1[i] * tensor_product(paulis()[i], id);
    m += fano.a2[i] * tensor_product(id, paulis()[i]);
    for (int j = 0; j < 3; ++j) m += fano.T[i][j] * tensor_product(paulis()[i], paulis()[j]);
  }
  return 0.25 * m;
}

double negativity(const DensityMatrix& rho, int subsystem) {
  const ComplexMatrix pt = partial_transpose(hermitian_part(rho.matrix()), subsystem);
  return clamp_small(trace_norm_hermitian(pt) - 1.0);
}

double geometric_discord(const DensityMatrix& rho, int side) {
  if (side != 1 && side != 2) throw InvalidInput("discord side must be 1 or 2");
  const FanoData f = fano_decompose(rho);
  const Vec3& a = side == 1 ? f.a1 : f.a2;

  // Side 2 measures the second qubit, so its correlation matrix is T^T.
  Mat3 t = f.T;
  if (side == 2) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t[i][j] = f.T[j][i];
  }

  ComplexMatrix k(3);
  double t_norm2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double ttt = 0.0;
      for (int l = 0; l < 3; ++l) ttt += t[i][l] * t[j][l];
      k(i, j) = a[i] * a[j] + ttt;
    }
    for (int l = 0; l < 3; ++l) t_norm2 += t[i][l] * t[i][l];
  }
  const double k_max = hermitian_eigenvalues(k).back();
  return clamp_small(0.25 * (sq_norm(a) + t_norm2 - k_max));
}

double purity(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  return (m * m).trace().real();
}

CorrelationSample measure(const DensityMatrix& rho, double t) {
  const StateDiagnostics diag = diagnose_state(rho.matrix());
  CorrelationSample s;
  s.t = t;
  s.negativity = negativity(rho);
  s.discord_1 = geometric_discord(rho, 1);
  s.discord_2 = geometric_discord(rho, 2);
  s.purity = diag.purity;
  s.min_eigenvalue = diag.min_eigenvalue;
  s.trace_deviation = diag.trace_deviation;
  return s;
}

}  // namespace dirac_noise
