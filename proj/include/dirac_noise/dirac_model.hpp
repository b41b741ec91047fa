#pragma once

#include <array>
#include <numbers>

#include "dirac_noise/linalg.hpp"

namespace dirac_noise {

// Natural units (hbar = c = 1). Momentum lies along x; the electric field lies
// in the xy-plane at angle theta from x.
struct DiracParams {
  double m = 0.0;
  double p = 0.0;
  double kappa = 0.0;
  double mu = 0.0;
  double E_field = 0.0;
  double theta = std::numbers::pi / 4;

  friend bool operator==(const DiracParams&, const DiracParams&) = default;
};

// Throws InvalidInput unless every field is finite and m, p, E_field >= 0.
void validate(const DiracParams& params);

// The closed-form spectrum only holds for theta = pi/4.
bool is_closed_form_configuration(const DiracParams& params);

inline constexpr double kDegeneracyThreshold = 1e-12;

// Dirac matrices in the standard representation, factored over two qubits:
// beta = Z (x) I, alpha_i = X (x) sigma_i, Sigma_i = I (x) sigma_i.
// Qubit 1 carries parity (F), qubit 2 carries spin (M).
namespace dirac_matrices {
ComplexMatrix beta();
ComplexMatrix alpha(int axis);  // axis 0,1,2 = x,y,z
ComplexMatrix sigma(int axis);
}  // namespace dirac_matrices

ComplexMatrix build_dirac_hamiltonian(const DiracParams& params);

// O = m kappa Sigma.E + mu beta Sigma.(p x E) - i kappa beta alpha.(p x E).
// Commutes with H and equals the traceless part of H^2 / 2.
ComplexMatrix build_invariant_operator(const DiracParams& params);

// (1/16) Tr[(H^2 - Tr[H^2]/4)^2], evaluated on the assembled matrix.
double compute_g2(const DiracParams& params);

// lambda_{n,s} at theta = pi/4; throws UnsupportedConfiguration otherwise.
double eigenvalue_closed_form(const DiracParams& params, int n, int s);

struct SpectralData {
  double g2 = 0.0;
  // Indexed by 2*n + s.
  std::array<double, 4> lambdas{};
  std::array<ComplexMatrix, 4> projectors{ComplexMatrix(4), ComplexMatrix(4),
                                          ComplexMatrix(4), ComplexMatrix(4)};

  double lambda(int n, int s) const { return lambdas[2 * n + s]; }
  const ComplexMatrix& projector(int n, int s) const { return projectors[2 * n + s]; }
};

// Analytic stationary projectors rho_{n,s} = (1/4)[I + (-1)^n H/|lambda|][I + (-1)^s O/sqrt(g2)].
// Throws DegenerateSpectrum when g2 or any |lambda| is below kDegeneracyThreshold.
SpectralData eigenprojectors(const DiracParams& params);

}  // namespace dirac_noise
