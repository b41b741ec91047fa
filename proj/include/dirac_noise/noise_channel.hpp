#pragma once

#include <array>
#include <optional>
#include <string>

#include "dirac_noise/dirac_model.hpp"
#include "dirac_noise/linalg.hpp"

namespace dirac_noise {

// Validation tolerances for two-qubit states.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-9;
inline constexpr double kPurityTol = 1e-9;

// Diagnostics of a candidate 4x4 state against the density-matrix invariants.
struct StateDiagnostics {
  double hermiticity_defect = 0.0;
  double trace_deviation = 0.0;  // Re Tr(rho) - 1
  double min_eigenvalue = 0.0;
  double purity = 0.0;

  // Name and detail of the first violated invariant, if any.
  std::optional<std::pair<std::string, std::string>> first_violation() const;
};

StateDiagnostics diagnose_state(const ComplexMatrix& rho);

// 4x4 Hermitian, unit-trace, positive semidefinite two-qubit state.
class DensityMatrix {
 public:
  // Validates; throws InvalidInput naming the violated invariant.
  explicit DensityMatrix(const ComplexMatrix& rho);

  // Skips validation. For outputs of maps that preserve the invariants
  // mathematically; callers that need certainty run diagnose_state.
  static DensityMatrix assume_valid(const ComplexMatrix& rho);

  static DensityMatrix pure(const std::array<Complex, 4>& psi);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  Complex operator()(std::size_t i, std::size_t j) const { return rho_(i, j); }

 private:
  struct Unchecked {};
  DensityMatrix(const ComplexMatrix& rho, Unchecked) : rho_(rho) {}
  ComplexMatrix rho_;
};

// Equal phase-relaxation rate on both qubits.
struct NoiseParams {
  double gamma_rate = 0.0;
};

void validate(const NoiseParams& noise);

// Local dephasing operators at elapsed time t:
// E1 = diag(1,g) (x) I, E2 = diag(0,w) (x) I, F1 = I (x) diag(1,g), F2 = I (x) diag(0,w),
// with g = exp(-Gamma t / 2), w = sqrt(1 - exp(-Gamma t)).
struct KrausSet {
  // F_nu E_mu ordered (mu,nu) = (1,1), (1,2), (2,1), (2,2).
  std::array<ComplexMatrix, 4> operators{ComplexMatrix(4), ComplexMatrix(4),
                                         ComplexMatrix(4), ComplexMatrix(4)};
  double gamma_factor = 1.0;
  double omega_factor = 0.0;
};

KrausSet build_kraus_set(const NoiseParams& noise, double t);

// max |sum K^dagger K - I|
double completeness_defect(const KrausSet& ks);

// Elementwise coherence multipliers of the dephasing channel for a given gamma factor.
ComplexMatrix dephasing_coefficients(double gamma_factor);

// rho -> sum_k K rho K^dagger. Throws InvalidInput if the set is not trace preserving.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& ks);

// exp(-i H t) rho exp(i H t) via the spectral decomposition of H.
DensityMatrix evolve_unitary(const DensityMatrix& rho0, const ComplexMatrix& h, double t);

// sum_{ns,ml} exp(-i(lambda_ns - lambda_ml) t) rho_ns rho0 rho_ml.
DensityMatrix evolve_projector_sum(const DensityMatrix& rho0, const SpectralData& spectral,
                                   double t);

// Projector sum when the spectrum is nondegenerate, unitary conjugation otherwise.
DensityMatrix evolve_noiseless(const DensityMatrix& rho0, const DiracParams& params, double t);

// Caches the eigensystem of H_D so repeated time samples share one diagonalization.
class Propagator {
 public:
  explicit Propagator(const DiracParams& params);

  ComplexMatrix unitary(double t) const;
  const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }

 private:
  ComplexMatrix hamiltonian_;
  EigenSystem eigen_;
};

// U(t) E_t(rho0) U(t)^dagger: dephasing at elapsed time t, then the Dirac rotation.
DensityMatrix evolve_noisy(const DensityMatrix& rho0, const Propagator& propagator,
                           const NoiseParams& noise, double t);
DensityMatrix evolve_noisy(const DensityMatrix& rho0, const DiracParams& params,
                           const NoiseParams& noise, double t);

}  // namespace dirac_noise
